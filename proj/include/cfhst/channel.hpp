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

#ifndef CFHST_CHANNEL_HPP
#define CFHST_CHANNEL_HPP

#include "cfhst/common.hpp"
#include "cfhst/geometry.hpp"
#include "cfhst/scenario.hpp"

#include <armadillo>
#include <vector>

namespace cfhst
{

/*!
 * Second-order description of one TA-AP link.  The channel is Rician:
 *   g = mean + h,   h ~ CN(0, corr),
 * where mean carries a per-snapshot random phase and the array response of
 * the LoS direction, and corr follows a Gaussian local-scattering model
 * around the same direction.  est_corr/err_corr are the covariances of the
 * linear MMSE channel estimate and of its error; filt is the estimator
 * matrix corr * inv(pilot_power*pilot_len*corr + noise*I).
 */
struct PairStatistics
{
    arma::cx_vec mean;     // antennas
    arma::cx_mat corr;     // antennas x antennas, Hermitian PSD
    arma::cx_mat corr_sqrt;// Hermitian square root of corr
    arma::cx_mat filt;     // MMSE estimator matrix
    arma::cx_mat est_corr; // covariance of the estimate's random part
    arma::cx_mat err_corr; // corr - est_corr
};

struct ChannelStatistics
{
    int num_tas = 0, num_aps = 0, antennas = 0;
    double noise_power = 0.0;
    double pilot_power = 0.0;
    double pilot_len = 0.0;
    std::vector<PairStatistics> pairs; // row-major: ta * num_aps + ap

    PairStatistics &pair(int ta, int ap) { return pairs[static_cast<std::size_t>(ta) * num_aps + ap]; }
    const PairStatistics &pair(int ta, int ap) const
    {
        return pairs[static_cast<std::size_t>(ta) * num_aps + ap];
    }

    arma::cx_vec stacked_mean(int ta) const;          // all APs stacked (L*N)
    arma::cx_mat stacked_err_corr(int ta) const;      // block-diagonal (L*N)^2
};

/*!
 * Draws the per-snapshot randomness (LoS phases, scattering-cluster offsets)
 * and assembles all pair statistics.  Throws std::runtime_error if a
 * correlation matrix fails the PSD check (eigenvalue below
 * -1e-10 * trace/antennas after symmetrization); tiny negative eigenvalues
 * above that floor are clipped to zero for the square root.
 */
ChannelStatistics build_statistics(const ScenarioConfig &cfg, const GeometrySnapshot &snap,
                                   Rng &rng);

/*!
 * One coherence-block channel draw for every pair: true channel true_ch and
 * its MMSE estimate est_ch, both (antennas x num_aps x num_tas) cubes.
 */
struct ChannelRealization
{
    arma::cx_cube true_ch, est_ch;
};

/*! Draws scattering and pilot noise internally. */
ChannelRealization draw_realization(const ChannelStatistics &stats, Rng &rng);

/*!
 * Builds the realization from caller-supplied standard-normal draws:
 * scatter and pilot_noise are (num_aps*antennas x num_tas) CN(0,1) matrices.
 * Lets several receiver architectures (and the co-located baseline, which
 * consumes the same columns through its own statistics) share one draw.
 */
ChannelRealization realization_from_normals(const ChannelStatistics &stats,
                                            const arma::cx_mat &scatter,
                                            const arma::cx_mat &pilot_noise);

/*!
 * MMSE estimate of one pair's channel from the de-spread pilot observation
 *   obs = sqrt(pilot_power*pilot_len) * true_ch + pilot_noise,
 * pilot_noise ~ CN(0, noise_power*I).  With zero noise the estimate equals
 * the true channel.
 */
arma::cx_vec mmse_estimate(const ChannelStatistics &stats, int ta, int ap,
                           const arma::cx_vec &true_ch, const arma::cx_vec &pilot_noise);

/*! Deployment with all antennas pooled at one mid-track site (num_aps=1,
 *  antennas = L*N); the co-located baseline runs the same pipeline on it. */
ScenarioConfig colocated_equivalent(const ScenarioConfig &cfg);

} // namespace cfhst

#endif
