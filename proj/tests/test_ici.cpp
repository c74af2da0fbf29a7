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

#include "cfhst/ici.hpp"

#include "cfhst/common.hpp"
#include "cfhst/geometry.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <stdexcept>

using namespace cfhst;

TEST_CASE("ici - scattered-path leakage reference values")
{
    // Normalized Doppler 0.0335 is the 1.8 GHz / 300 km/h / 67 us operating point.
    REQUIRE(ici_nlos(0, 0.0335) == 1.0);
    REQUIRE(ici_nlos(1, 0.0335) == Catch::Approx(-0.023688077).epsilon(1e-7));
    REQUIRE(ici_nlos(2, 0.0335) == Catch::Approx(0.011844039).epsilon(1e-7));
    REQUIRE(ici_nlos(-2, 0.0335) == Catch::Approx(-0.011844039).epsilon(1e-7));
    REQUIRE(ici_nlos(3, 0.0335) == Catch::Approx(-0.0335 / (3.0 * std::sqrt(2.0))));
}

TEST_CASE("ici - scattered-path leakage is odd in the offset")
{
    for (int off = 1; off <= 7; ++off)
        REQUIRE(ici_nlos(-off, 0.05) == Catch::Approx(-ici_nlos(off, 0.05)).epsilon(1e-15));
}

TEST_CASE("ici - line-of-sight kernel reference value")
{
    const std::complex<double> v = ici_los(0, 0.0335, 8);
    REQUIRE(v.real() == Catch::Approx(0.9939543835).epsilon(1e-9));
    REQUIRE(v.imag() == Catch::Approx(0.0917908209).epsilon(1e-8));
    REQUIRE(std::abs(v) == Catch::Approx(0.9981837864).epsilon(1e-9));
}

TEST_CASE("ici - zero Doppler leaves subcarriers orthogonal")
{
    for (int m : {2, 8, 16})
    {
        REQUIRE(ici_los(0, 0.0, m) == std::complex<double>(1.0, 0.0));
        for (int off = 1; off < m; ++off)
            REQUIRE(std::abs(ici_los(off, 0.0, m)) < 1e-14);
    }
}

TEST_CASE("ici - kernel is periodic in the block size")
{
    for (int m : {4, 8, 16})
        for (double dfo : {0.0335, -0.21, 0.49})
            for (int off = 0; off < m; ++off)
            {
                const auto a = ici_los(off, dfo, m);
                const auto b = ici_los(off - m, dfo, m);
                REQUIRE(std::abs(a - b) < 1e-12);
            }
}

TEST_CASE("ici - closed kernel matches the direct DFT")
{
    Rng rng(2024);
    for (int rep = 0; rep < 20; ++rep)
        for (int m : {8, 16, 64})
        {
            const double dfo = rng.uniform() - 0.5;
            const auto oracle = dft_oracle_los(dfo, m);
            double worst = 0.0, power = 0.0;
            for (int d = 0; d < m; ++d)
            {
                worst = std::max(worst, std::abs(oracle[static_cast<std::size_t>(d)] -
                                                 ici_los(d, dfo, m)));
                power += std::norm(oracle[static_cast<std::size_t>(d)]);
            }
            REQUIRE(worst < 1e-10);
            REQUIRE(power == Catch::Approx(1.0).margin(1e-12)); // unit-modulus tone
        }
}

TEST_CASE("ici - scattered oracle approaches the closed second moment")
{
    // Wide block: the closed form is the many-subcarrier limit.  2000 trials
    // put the estimator's own noise near 2%, so 10% is a safe band.
    const double dfo_scale = 0.0335;
    const auto moments = dft_oracle_nlos(dfo_scale, 64, 64, 2000, 7);
    for (int off : {1, 2})
    {
        const double closed = ici_nlos(off, dfo_scale);
        REQUIRE(moments[static_cast<std::size_t>(off)] ==
                Catch::Approx(closed * closed).epsilon(0.10));
    }
}

TEST_CASE("ici - argument validation")
{
    REQUIRE_THROWS_AS(ici_los(0, 0.1, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(dft_oracle_los(0.1, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(dft_oracle_nlos(0.1, 8, 0, 10, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(dft_oracle_nlos(0.1, 8, 4, 0, 1), std::invalid_argument);
}

TEST_CASE("ici - profile tabulates every pair and offset")
{
    ScenarioConfig cfg;
    cfg.num_aps = 3;
    cfg.num_tas = 2;
    cfg.subcarriers = 4;
    const GeometrySnapshot snap = build_snapshot(cfg, 0.0);
    const IciProfile prof = build_ici_profile(cfg, snap);

    REQUIRE(prof.subcarriers == 4);
    REQUIRE(prof.dfo_scale == Catch::Approx(cfg.dfo_scale()));
    REQUIRE(prof.los_.n_slices == 7);
    REQUIRE(prof.nlos_.n_elem == 7);

    for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 3; ++l)
        {
            REQUIRE(prof.dfo(k, l) ==
                    Catch::Approx(cfg.dfo_scale() * snap.aoa_sines(k, l)).margin(1e-15));
            for (int off = -3; off <= 3; ++off)
                REQUIRE(std::abs(prof.los(k, l, off) -
                                 ici_los(off, prof.dfo(k, l), 4)) < 1e-15);
        }
    for (int off = -3; off <= 3; ++off)
        REQUIRE(prof.nlos(off) == ici_nlos(off, prof.dfo_scale));
}
