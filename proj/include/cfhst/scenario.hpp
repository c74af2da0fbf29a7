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

#ifndef CFHST_SCENARIO_HPP
#define CFHST_SCENARIO_HPP

#include <string>
#include <vector>

namespace cfhst
{

/*!
 * How the Rician factor splits power between the deterministic and the
 * scattered channel component:
 *   Sqrt   - amplitude weights sqrt(kap/(kap+1)) and sqrt(1/(kap+1)) applied
 *            to the channel gains (default),
 *   Linear - conventional power weights kap/(kap+1) and 1/(kap+1).
 */
enum class RicianSplit
{
    Sqrt,
    Linear
};

/*!
 * Full physical description of one deployment.  All quantities SI unless the
 * suffix says otherwise.  Defaults reproduce the reference evaluation setup:
 * a 1000 m track segment, 200 m train, 1.8 GHz carrier, 300 km/h.
 */
struct ScenarioConfig
{
    int num_aps = 10;       // access points on the segment (L)
    int antennas_per_ap = 4;// uniform linear array size per AP (N)
    int num_tas = 8;        // train-mounted antennas (K)

    double rail_length_m = 1000.0; // segment covered by the AP row
    double train_length_m = 200.0; // TA row spreads over the train roof
    double track_offset_m = 50.0;  // perpendicular AP-to-rail distance

    double carrier_hz = 1.8e9;
    double bandwidth_hz = 20.0e6;
    double symbol_duration_s = 67.0e-6; // OFDM symbol incl. cyclic prefix
    int subcarriers = 8;                // per coherence block (M)
    double velocity_mps = 300.0 / 3.6;

    double noise_power_w = 3.9811e-13; // -94 dBm
    double max_power_w = 0.2;          // per-TA uplink budget
    double pilot_power_w = -1.0;       // pilot stage power; <0 means max_power_w
    int pilot_length = -1;             // pilot sequence length; <0 means num_tas

    double pathloss_exponent = 3.0;
    double pathloss_ref = 1.0e-12; // large-scale gain at 1 km

    double rician_k_db = 20.0;        // Rician factor
    RicianSplit rician_split = RicianSplit::Sqrt;
    bool correlated = true;           // false: scattered component is i.i.d.
    double asd_deg = 10.0;            // per-cluster angular standard deviation
    double aoa_window_deg = 30.0;     // scattering-cluster offset half-window
    int scattering_clusters = 6;      // clusters averaged in the correlation model
    double antenna_spacing = 0.5;     // array pitch in wavelengths

    // Normalized Doppler frequency offset scale f*v*T_s/c; the per-pair offset
    // is this value times the sine of the arrival angle.
    double dfo_scale() const;

    double pilot_power() const;  // resolved pilot_power_w
    int pilot_len() const;       // resolved pilot_length

    /*!
     * Checks every field, throws std::invalid_argument naming the offending
     * field on hard errors.  Returns human-readable warnings for legal but
     * inadvisable settings (e.g. fewer than 8 subcarriers, where the
     * narrowband leakage model loses accuracy).
     */
    std::vector<std::string> validate() const;
};

RicianSplit parse_rician_split(const std::string &text); // "sqrt" | "linear"
std::string to_string(RicianSplit split);

} // namespace cfhst

#endif
