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

#include "cfhst/scenario.hpp"

#include "cfhst/common.hpp"

#include <cmath>
#include <stdexcept>

namespace cfhst
{

double ScenarioConfig::dfo_scale() const
{
    return carrier_hz * velocity_mps * symbol_duration_s / light_speed_mps;
}

double ScenarioConfig::pilot_power() const
{
    return pilot_power_w < 0.0 ? max_power_w : pilot_power_w;
}

int ScenarioConfig::pilot_len() const
{
    return pilot_length < 0 ? num_tas : pilot_length;
}

static void require(bool ok, const char *field, const char *what)
{
    if (!ok)
        throw std::invalid_argument(std::string("ScenarioConfig.") + field + ": " + what);
}

std::vector<std::string> ScenarioConfig::validate() const
{
    require(num_aps >= 1, "num_aps", "must be >= 1");
    require(antennas_per_ap >= 1, "antennas_per_ap", "must be >= 1");
    require(num_tas >= 1, "num_tas", "must be >= 1");
    require(rail_length_m > 0.0, "rail_length_m", "must be > 0");
    require(train_length_m >= 0.0, "train_length_m", "must be >= 0");
    require(track_offset_m > 0.0, "track_offset_m", "must be > 0");
    require(carrier_hz > 0.0, "carrier_hz", "must be > 0");
    require(bandwidth_hz > 0.0, "bandwidth_hz", "must be > 0");
    require(symbol_duration_s > 0.0, "symbol_duration_s", "must be > 0");
    require(subcarriers >= 2, "subcarriers", "must be >= 2");
    require(velocity_mps >= 0.0, "velocity_mps", "must be >= 0");
    require(noise_power_w > 0.0, "noise_power_w", "must be > 0");
    require(max_power_w > 0.0, "max_power_w", "must be > 0");
    require(pilot_length <= 0 || pilot_length >= 1, "pilot_length", "must be >= 1 when set");
    require(pathloss_exponent > 0.0, "pathloss_exponent", "must be > 0");
    require(pathloss_ref > 0.0, "pathloss_ref", "must be > 0");
    require(asd_deg >= 0.0, "asd_deg", "must be >= 0");
    require(aoa_window_deg >= 0.0, "aoa_window_deg", "must be >= 0");
    require(scattering_clusters >= 1, "scattering_clusters", "must be >= 1");
    require(antenna_spacing > 0.0, "antenna_spacing", "must be > 0");
    require(std::isfinite(rician_k_db), "rician_k_db", "must be finite");

    std::vector<std::string> warnings;
    if (subcarriers < 8)
        warnings.push_back("subcarriers: fewer than 8 subcarriers per block; the "
                           "scattered-path leakage coefficients are a many-subcarrier "
                           "approximation and lose accuracy here");
    // The leakage model only covers offsets within one block; a normalized
    // Doppler offset beyond ~0.5 would alias across blocks.
    if (dfo_scale() > 0.5)
        warnings.push_back("velocity_mps/carrier_hz/symbol_duration_s: normalized Doppler "
                           "offset exceeds 0.5; results are outside the model's regime");
    return warnings;
}

RicianSplit parse_rician_split(const std::string &text)
{
    if (text == "sqrt")
        return RicianSplit::Sqrt;
    if (text == "linear")
        return RicianSplit::Linear;
    throw std::invalid_argument("rician_split: expected 'sqrt' or 'linear', got '" + text + "'");
}

std::string to_string(RicianSplit split)
{
    return split == RicianSplit::Sqrt ? "sqrt" : "linear";
}

} // namespace cfhst
