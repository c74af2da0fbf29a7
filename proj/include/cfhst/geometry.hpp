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

#ifndef CFHST_GEOMETRY_HPP
#define CFHST_GEOMETRY_HPP

#include "cfhst/scenario.hpp"

#include <armadillo>
#include <vector>

namespace cfhst
{

/*!
 * Positions and the derived pairwise quantities for one train position.
 * APs sit on a line parallel to the rail at perpendicular distance
 * track_offset_m; TAs sit on the rail.  Antenna k and AP l are linked by:
 *   distances(k,l)   - 3D..2D slant distance,
 *   aoa_sines(k,l)   - sine of the arrival angle (positive when the AP lies
 *                      ahead of the TA in travel direction),
 *   large_scale(k,l) - pathloss gain pathloss_ref * (d/1 km)^-alpha.
 */
struct GeometrySnapshot
{
    double train_offset_m = 0.0;
    arma::vec ap_x, ta_x;  // abscissae along the track
    double track_offset_m = 0.0;
    arma::mat distances;   // num_tas x num_aps
    arma::mat aoa_sines;   // num_tas x num_aps
    arma::mat large_scale; // num_tas x num_aps
};

/*!
 * Canonical deployment: AP l at ((l+1/2)/L * rail_length, track_offset), TA k
 * at (train_offset + (k+1/2)/K * train_length, 0).  TAs may lie outside
 * [0, rail_length] while the train enters or leaves the segment.
 */
GeometrySnapshot build_snapshot(const ScenarioConfig &cfg, double train_offset_m);

/*! Same derived quantities for caller-supplied abscissae (custom layouts). */
GeometrySnapshot build_snapshot(const ScenarioConfig &cfg, const arma::vec &ap_x,
                                const arma::vec &ta_x, double train_offset_m = 0.0);

/*!
 * Snapshots for train offsets start, start+step, ..., end.  The endpoint is
 * included when it lies within 1e-9 of the last step; the count is
 * floor((end-start)/step) + 1.
 */
std::vector<GeometrySnapshot> sweep_positions(const ScenarioConfig &cfg, double start_m,
                                              double end_m, double step_m);

} // namespace cfhst

#endif
