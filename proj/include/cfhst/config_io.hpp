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

#ifndef CFHST_CONFIG_IO_HPP
#define CFHST_CONFIG_IO_HPP

#include "cfhst/montecarlo.hpp"
#include "cfhst/power.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace cfhst
{

struct OutputOptions
{
    std::string directory = "out";
};

struct RunConfig
{
    ExperimentPlan plan;
    OutputOptions output;
};

/*!
 * Loads a run configuration.  Two encodings, chosen by file extension:
 * "*.json" is parsed as JSON with {"scenario": {...}, "experiment": {...},
 * "output": {...}} sections, anything else as INI-style sections
 * ([scenario], [experiment], [output]) of `key = value` lines with '#'/';'
 * comments.  Unknown sections and keys are rejected by name; so are
 * malformed values.  I/O failures throw std::runtime_error.
 */
RunConfig load_config(const std::string &path);
RunConfig parse_config_text(const std::string &text, bool json_input);

/*!
 * Fully resolved "section.key" = value view of a configuration, in canonical
 * order: what `validate` echoes and summary.json embeds.  Optional fields
 * appear with their resolved values (e.g. pilot power defaulted to the power
 * budget).
 */
std::vector<std::pair<std::string, std::string>> resolved_entries(const RunConfig &config);

/*!
 * results.csv: header then one row per sweep value x architecture.  Columns:
 * position_m|speed_kmh, architecture, block_se, wall_s, se_ta0..se_ta{K-1}.
 */
void write_results_csv(std::ostream &os, const ResultTable &table);

/*!
 * summary.json: seed, resolved config, and per-architecture statistics of
 * the block-SE series (mean, min, p5, p50, p95, max).  Series values are
 * clipped at plan.se_cap before the statistics; rows are left untouched.
 */
void write_summary_json(std::ostream &os, const RunConfig &config, const ResultTable &table);

/*! power_trace.csv: scheme, iteration, traced convergence metric. */
void write_power_trace_csv(std::ostream &os, const std::string &scheme, const PowerResult &result);

} // namespace cfhst

#endif
