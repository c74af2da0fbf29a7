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

#ifndef CFHST_LSFD_HPP
#define CFHST_LSFD_HPP

#include "cfhst/channel.hpp"
#include "cfhst/ici.hpp"

#include <armadillo>
#include <cstdint>
#include <vector>

namespace cfhst
{

/*!
 * Deterministic second-layer statistics of matched-filter (channel-estimate)
 * per-AP combining, per TA.  Everything is per-AP scalar data, tabulated over
 * subcarrier offsets -(M-1)..M-1 (column = offset + M-1):
 *   serving_mean  - mean combiner output on the own subcarrier (offset 0),
 *   self_mean     - mean own-signal output at each offset,
 *   cross_mean[i] - mean output against interferer i's deterministic part,
 *   leak_power[i] - per-AP second moment of the fluctuating part (diagonal
 *                   across APs; real, >= 0),
 *   noise_gain    - per-AP expected squared combiner norm.
 */
struct TaClosedForm
{
    arma::cx_vec serving_mean;            // num_aps
    arma::cx_mat self_mean;               // num_aps x (2M-1)
    std::vector<arma::cx_mat> cross_mean; // num_tas entries, each num_aps x (2M-1)
    std::vector<arma::mat> leak_power;    // num_tas entries, each num_aps x (2M-1)
    arma::vec noise_gain;                 // num_aps
};

struct LsfdClosedForm
{
    int num_tas = 0, num_aps = 0, subcarriers = 0;
    double noise_power = 0.0;
    std::vector<TaClosedForm> ta;
};

/*!
 * Builds the closed-form tables from pair statistics and leakage profile.
 * serve_mask (num_tas x num_aps, optional) zeroes the per-AP entries of
 * non-serving APs, which is exactly TA-centric combining with the combiner
 * forced to zero outside the serving cluster.
 */
LsfdClosedForm closed_form_stats(const ChannelStatistics &stats, const IciProfile &ici,
                                 const arma::umat *serve_mask = nullptr);

/*! Second-layer SINR at subcarrier s under per-AP weights (complex, length L). */
double closed_form_sinr(const LsfdClosedForm &cf, int ta, int s, const arma::cx_vec &weights,
                        const arma::vec &powers);

/*!
 * SINR-optimal second-layer weights.  drop_serving_offset additionally
 * removes the serving-offset cross-interference outer product from the
 * weighting matrix (an alternative published variant; the default keeps the
 * matrix consistent with the SINR expression).  Masked (all-zero) APs get
 * zero weight.
 */
arma::cx_vec lsfd_weights(const LsfdClosedForm &cf, int ta, int s, const arma::vec &powers,
                          bool drop_serving_offset = false);

/*! Equal (1/L over active APs) weights: plain averaging of the AP outputs. */
arma::cx_vec equal_weights(const LsfdClosedForm &cf, int ta);

enum class WeightMode
{
    Equal,
    Optimal
};

/*! log2(1 + SINR) at the requested weight mode. */
double closed_form_se(const LsfdClosedForm &cf, int ta, int s, const arma::vec &powers,
                      WeightMode mode, bool drop_serving_offset = false);

// ------------------------------------------------------------------ generic

enum class LocalCombinerKind
{
    Mr,
    Mmse
};

/*!
 * Monte-Carlo moment estimates for arbitrary per-AP combiners, feeding the
 * use-and-forget second-layer SINR:
 *   second[k*M+s]  - sum_i p_i sum_m E{u u^H} over combiner outputs u against
 *                    the true effective channels (no noise term),
 *   serving[k*M+s] - E of the serving output vector,
 *   combiner_power[k*M+s] - per-AP E||v||^2.
 * Pooled with compensated summation; trials use counter-derived streams.
 */
struct GenericMoments
{
    int num_tas = 0, num_aps = 0, subcarriers = 0;
    double noise_power = 0.0;
    std::vector<arma::cx_mat> second;
    std::vector<arma::cx_vec> serving;
    std::vector<arma::vec> combiner_power;
};

class LocalEvaluator;

/*!
 * Streaming collector for GenericMoments: feed one evaluated realization per
 * call (so the draw can be shared with other consumers), then finalize().
 */
class LsfdMomentAccumulator
{
  public:
    LsfdMomentAccumulator(int num_tas, int num_aps, int subcarriers, double noise_power);

    void accumulate(LocalEvaluator &loc, LocalCombinerKind kind, const arma::vec &powers);
    GenericMoments finalize() const;
    int trials() const { return trials_; }

  private:
    int num_tas_, num_aps_, subcarriers_;
    double noise_power_;
    int trials_ = 0;
    std::vector<KahanAccumulator> second_, serving_, cpow_;
};

GenericMoments generic_lsfd_mc(const ChannelStatistics &stats, const IciProfile &ici,
                               LocalCombinerKind kind, const arma::vec &powers, int n_trials,
                               std::uint64_t seed);

/*! Second-layer SINR from estimated moments at explicit weights. */
double moments_sinr(const GenericMoments &mom, int ta, int s, double power_ta,
                    const arma::cx_vec &weights);

/*! Optimal weights / SE from estimated moments. */
arma::cx_vec moments_weights(const GenericMoments &mom, int ta, int s);
double moments_se(const GenericMoments &mom, int ta, int s, double power_ta, WeightMode mode);

} // namespace cfhst

#endif
