// SPDX-License-Identifier: Apache-2.0
//
// cfhst - link-level simulator for cell-free massive MIMO on high-speed rail
// Copyright (C) 2026 cfhst developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "cfhst/geometry.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

using namespace cfhst;

TEST_CASE("geometry - right-triangle distances and angles")
{
    ScenarioConfig cfg;
    cfg.track_offset_m = 40.0;

    arma::vec ap_x{30.0};
    arma::vec ta_x{0.0};
    const GeometrySnapshot snap = build_snapshot(cfg, ap_x, ta_x);

    REQUIRE(snap.distances(0, 0) == Catch::Approx(50.0).epsilon(1e-15)); // 3-4-5
    REQUIRE(snap.aoa_sines(0, 0) == Catch::Approx(0.6).epsilon(1e-15));
    REQUIRE(snap.large_scale(0, 0) ==
            Catch::Approx(cfg.pathloss_ref * std::pow(50.0 / 1000.0, -cfg.pathloss_exponent))
                .epsilon(1e-14));

    // AP behind the TA: same distance, mirrored angle.
    const GeometrySnapshot mirror = build_snapshot(cfg, arma::vec{-30.0}, ta_x);
    REQUIRE(mirror.distances(0, 0) == Catch::Approx(50.0));
    REQUIRE(mirror.aoa_sines(0, 0) == Catch::Approx(-0.6));
}

TEST_CASE("geometry - default layout centers elements in their cells")
{
    ScenarioConfig cfg;
    const GeometrySnapshot snap = build_snapshot(cfg, 120.0);

    REQUIRE(snap.ap_x.n_elem == static_cast<arma::uword>(cfg.num_aps));
    REQUIRE(snap.ta_x.n_elem == static_cast<arma::uword>(cfg.num_tas));
    REQUIRE(snap.ap_x(0) == Catch::Approx(0.5 * cfg.rail_length_m / cfg.num_aps));
    REQUIRE(snap.ap_x(cfg.num_aps - 1) ==
            Catch::Approx((cfg.num_aps - 0.5) * cfg.rail_length_m / cfg.num_aps));
    REQUIRE(snap.ta_x(0) == Catch::Approx(120.0 + 0.5 * cfg.train_length_m / cfg.num_tas));
    REQUIRE(snap.train_offset_m == 120.0);
    REQUIRE(snap.large_scale.n_rows == static_cast<arma::uword>(cfg.num_tas));
    REQUIRE(snap.large_scale.n_cols == static_cast<arma::uword>(cfg.num_aps));
}

TEST_CASE("geometry - translation invariance of the link geometry")
{
    ScenarioConfig cfg;
    const double shift = 314.0;
    const GeometrySnapshot a = build_snapshot(cfg, 0.0);
    const GeometrySnapshot b =
        build_snapshot(cfg, a.ap_x + shift, a.ta_x + shift);

    REQUIRE(arma::approx_equal(a.distances, b.distances, "absdiff", 1e-9));
    REQUIRE(arma::approx_equal(a.large_scale, b.large_scale, "reldiff", 1e-12));
    REQUIRE(arma::approx_equal(a.aoa_sines, b.aoa_sines, "absdiff", 1e-12));
}

TEST_CASE("geometry - sweep keeps exact endpoints")
{
    ScenarioConfig cfg;
    const auto sweep = sweep_positions(cfg, -400.0, 1200.0, 2.0);
    REQUIRE(sweep.size() == 801);
    REQUIRE(sweep.front().train_offset_m == Catch::Approx(-400.0));
    REQUIRE(sweep.back().train_offset_m == Catch::Approx(1200.0));

    // A one-ULP-ish short endpoint still lands on the grid.
    const auto drift = sweep_positions(cfg, 0.0, 10.0 - 1e-12, 5.0);
    REQUIRE(drift.size() == 3);

    REQUIRE(sweep_positions(cfg, 0.0, 7.0, 5.0).size() == 2);
    REQUIRE_THROWS_AS(sweep_positions(cfg, 0.0, 10.0, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(sweep_positions(cfg, 10.0, 0.0, 1.0), std::invalid_argument);
}
