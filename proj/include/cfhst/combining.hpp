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

#ifndef CFHST_COMBINING_HPP
#define CFHST_COMBINING_HPP

#include "cfhst/channel.hpp"
#include "cfhst/ici.hpp"

#include <armadillo>
#include <vector>

namespace cfhst
{

/*!
 * Uplink receive processing over the stacked array of all APs for one channel
 * realization.  Doppler leakage turns each interferer into M effective
 * vectors, one per subcarrier offset:
 *     effective(i, off) = los(i,l,off)*mean_il + nlos(off)*(est_il - mean_il)
 * stacked over APs.  sinr() evaluates the instantaneous-effective SINR of an
 * arbitrary combiner at subcarrier s; mmse_combiner() maximizes it.
 *
 * The *_static variants implement the leakage-free single-carrier receiver
 * (no offset sums); with zero velocity both paths must agree.
 */
class CentralizedEvaluator
{
  public:
    CentralizedEvaluator(const ChannelStatistics &stats, const IciProfile &ici,
                         const ChannelRealization &real, const arma::vec &powers);

    arma::uword dim() const { return est_mean.n_rows; }
    int blocks() const { return num_sub; }

    arma::cx_vec effective(int ta, int offset) const;
    arma::cx_vec mr_combiner(int ta) const;
    arma::cx_vec mmse_combiner(int ta, int s);
    double sinr(int ta, int s, const arma::cx_vec &combiner) const;
    double mmse_sinr(int ta, int s); // closed form; equals sinr(mmse_combiner(ta,s))

    arma::cx_vec mmse_combiner_static(int ta);
    double sinr_static(int ta, const arma::cx_vec &combiner) const;
    double mmse_sinr_static(int ta);

  private:
    const arma::cx_mat &chol_lower(int s);
    arma::cx_mat interference_matrix(int s) const;

    int num_tas, num_sub;
    arma::vec powers;
    double noise_power;
    arma::cx_mat est_mean, est_rand, est_full; // (L*N, K): means, est-mean, estimates
    arma::cx_mat eff;                          // (L*N, K*(2M-1)) effective vectors
    arma::cx_mat err_sum;                      // sum_i p_i err_corr_i (block diagonal)
    arma::vec leak_weight;                     // per s: sum_m nlos(m-s)^2
    std::vector<arma::cx_mat> chol_cache;      // per s
    arma::cx_mat chol_static;
};

/*!
 * Per-AP (distributed) receive processing for one realization: combiners see
 * only the local estimate block.  cross_gain() exposes the per-AP combiner
 * outputs against the *true* effective channels, the inputs of the
 * second-layer weighting stage.
 */
class LocalEvaluator
{
  public:
    LocalEvaluator(const ChannelStatistics &stats, const IciProfile &ici,
                   const ChannelRealization &real, const arma::vec &powers);

    int num_aps() const { return aps; }
    int antennas() const { return ants; }
    int blocks() const { return num_sub; }

    arma::cx_vec effective(int ta, int ap, int offset) const;
    arma::cx_vec true_effective(int ta, int ap, int offset) const;
    arma::cx_vec mr_combiner(int ta, int ap) const;
    arma::cx_vec mmse_combiner(int ta, int ap, int s);

    // Single-AP instantaneous-effective SINR (the stand-alone small-cell metric)
    double percell_sinr(int ta, int ap, int s, const arma::cx_vec &combiner) const;
    double percell_mmse_sinr(int ta, int ap, int s);

    arma::cx_vec mmse_combiner_static(int ta, int ap);
    double percell_sinr_static(int ta, int ap, const arma::cx_vec &combiner) const;

    /*!
     * L-vector of combiner outputs against TA `ta`'s true effective channel at
     * the given offset; combiners is (N x L), one column per AP.
     */
    arma::cx_vec cross_gain(const arma::cx_mat &combiners, int ta, int offset) const;

  private:
    const arma::cx_mat &chol_lower(int ap, int s);

    int num_tas, aps, ants, num_sub;
    arma::vec powers;
    double noise_power;
    const ChannelStatistics *stats_;
    arma::cx_cube est_mean, est_rand, true_rand; // (N, L, K)
    arma::cx_cube eff_tab, true_tab;             // (N, L*K, 2M-1): col = ap + L*ta
    std::vector<arma::cx_mat> err_sum;           // per AP: sum_i p_i err_corr
    arma::vec leak_weight;
    std::vector<arma::cx_mat> chol_cache; // (ap, s) -> lower factor
    const IciProfile *ici_;
};

} // namespace cfhst

#endif
