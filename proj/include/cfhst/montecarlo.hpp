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

#ifndef CFHST_MONTECARLO_HPP
#define CFHST_MONTECARLO_HPP

#include "cfhst/clustering.hpp"
#include "cfhst/power.hpp"
#include "cfhst/scenario.hpp"

#include <armadillo>
#include <cstdint>
#include <string>
#include <vector>

namespace cfhst
{

/*!
 * Receiver architectures.  Ergodic-rate architectures (Monte-Carlo over
 * channel realizations) and deterministic closed-form architectures can be
 * mixed in one plan; realizations are shared across architectures at each
 * (position, trial) so comparisons use common random numbers.
 *
 *   CentralizedMmse/Mr - all APs jointly process the stacked signal
 *   LocalMmseLsfd      - per-AP MMSE combiners + optimally weighted second layer
 *                        (moments estimated by Monte Carlo)
 *   LocalMrLsfdMc      - per-AP MR + optimal second layer, Monte-Carlo moments
 *   LsfdMr             - per-AP MR + optimal second layer, closed form
 *   MfMr               - per-AP MR + plain averaging second layer, closed form
 *   SmallcellMmse/Mr   - each TA served by its best single AP
 *   ColocatedMmse/Mr   - all antennas pooled at one mid-track site (the
 *                        conventional cellular massive MIMO baseline)
 */
enum class Architecture
{
    CentralizedMmse,
    CentralizedMr,
    LocalMmseLsfd,
    LocalMrLsfdMc,
    LsfdMr,
    MfMr,
    SmallcellMmse,
    SmallcellMr,
    ColocatedMmse,
    ColocatedMr
};

Architecture parse_architecture(const std::string &name);
std::string to_string(Architecture arch);
bool architecture_uses_trials(Architecture arch);

struct SweepSpec
{
    enum class Kind
    {
        Position,
        Speed
    };
    Kind kind = Kind::Position;
    double start_m = 0.0, end_m = 800.0, step_m = 2.0; // train offsets
    std::vector<double> speeds_kmh;                    // Kind::Speed only
};

enum class PowerScheme
{
    Full,
    Fractional,
    MaxMin,
    MaxSum
};

PowerScheme parse_power_scheme(const std::string &name);
std::string to_string(PowerScheme scheme);

struct ExperimentPlan
{
    ScenarioConfig scenario;
    SweepSpec sweep;
    std::vector<Architecture> architectures{Architecture::LsfdMr};
    int trials = 500;
    std::uint64_t seed = 1;
    PowerScheme power_scheme = PowerScheme::Full;
    double cluster_theta_db = arma::datum::inf; // inf: every AP serves every TA
    bool weights_drop_serving_offset = false;
    int threads = 1;
    double se_cap = 30.0; // reporting cap for non-finite SE
};

struct ResultRow
{
    double sweep_value = 0.0; // train offset [m] or speed [km/h]
    Architecture architecture = Architecture::LsfdMr;
    arma::vec per_ta_se;      // block-averaged per TA
    double block_se = 0.0;    // average over TAs and subcarriers
    double wall_s = 0.0;      // evaluation time of the shared position batch
};

struct ResultTable
{
    SweepSpec::Kind sweep_kind = SweepSpec::Kind::Position;
    std::vector<ResultRow> rows;

    std::vector<double> block_series(Architecture arch) const; // ordered by sweep value
};

/*! Plan-level invariants (scenario included); throws naming the field. */
void validate_plan(const ExperimentPlan &plan);

/*!
 * Runs the full plan.  Deterministic for a fixed plan: every (position,
 * trial) stream is derived by counters, positions are distributed over
 * `threads` workers, and assembly is an ordered reduction, so the thread
 * count never changes the result.
 */
ResultTable run_plan(const ExperimentPlan &plan);

/*! The power allocation the plan's scheme picks at one train offset. */
PowerResult position_power(const ExperimentPlan &plan, double train_offset_m,
                           std::size_t position_index);

/*!
 * Per-TA block SE of every architecture in the plan at one train offset
 * (speed taken from plan.scenario): matrix (num_tas x architectures), column
 * order = plan order.  position_index seeds the per-position streams.
 */
arma::mat position_per_ta_se(const ExperimentPlan &plan, double train_offset_m,
                             std::size_t position_index);

struct CdfSummary
{
    double min = 0.0, p5 = 0.0, p50 = 0.0, p95 = 0.0, max = 0.0, mean = 0.0;
};

/*! Quantiles with linear interpolation between order statistics. */
CdfSummary compute_cdf(std::vector<double> values);

} // namespace cfhst

#endif
