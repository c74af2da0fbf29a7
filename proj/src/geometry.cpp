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

#include <cmath>
#include <stdexcept>

namespace cfhst
{

GeometrySnapshot build_snapshot(const ScenarioConfig &cfg, const arma::vec &ap_x,
                                const arma::vec &ta_x, double train_offset_m)
{
    GeometrySnapshot snap;
    snap.train_offset_m = train_offset_m;
    snap.ap_x = ap_x;
    snap.ta_x = ta_x;
    snap.track_offset_m = cfg.track_offset_m;

    const arma::uword K = ta_x.n_elem, L = ap_x.n_elem;
    snap.distances.set_size(K, L);
    snap.aoa_sines.set_size(K, L);
    snap.large_scale.set_size(K, L);
    for (arma::uword k = 0; k < K; k++)
        for (arma::uword l = 0; l < L; l++)
        {
            double along = ap_x(l) - ta_x(k);
            double dist = std::hypot(along, cfg.track_offset_m);
            snap.distances(k, l) = dist;
            snap.aoa_sines(k, l) = along / dist;
            snap.large_scale(k, l) =
                cfg.pathloss_ref * std::pow(dist / 1000.0, -cfg.pathloss_exponent);
        }
    return snap;
}

GeometrySnapshot build_snapshot(const ScenarioConfig &cfg, double train_offset_m)
{
    arma::vec ap_x(cfg.num_aps), ta_x(cfg.num_tas);
    for (int l = 0; l < cfg.num_aps; l++)
        ap_x(l) = (l + 0.5) * cfg.rail_length_m / cfg.num_aps;
    for (int k = 0; k < cfg.num_tas; k++)
        ta_x(k) = train_offset_m + (k + 0.5) * cfg.train_length_m / cfg.num_tas;
    return build_snapshot(cfg, ap_x, ta_x, train_offset_m);
}

std::vector<GeometrySnapshot> sweep_positions(const ScenarioConfig &cfg, double start_m,
                                              double end_m, double step_m)
{
    if (step_m <= 0.0)
        throw std::invalid_argument("sweep_positions: step_m must be > 0");
    if (end_m < start_m)
        throw std::invalid_argument("sweep_positions: end_m must be >= start_m");

    // Tolerate float drift so an endpoint that is an exact multiple away is kept.
    auto count = static_cast<std::size_t>(std::floor((end_m - start_m) / step_m + 1e-9)) + 1;
    std::vector<GeometrySnapshot> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; i++)
        out.push_back(build_snapshot(cfg, start_m + static_cast<double>(i) * step_m));
    return out;
}

} // namespace cfhst
