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

#include "cfhst/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace cfhst
{

arma::cx_vec ChannelStatistics::stacked_mean(int ta) const
{
    arma::cx_vec out(static_cast<arma::uword>(num_aps) * antennas);
    for (int l = 0; l < num_aps; l++)
        out.subvec(static_cast<arma::uword>(l) * antennas, arma::size(pair(ta, l).mean)) =
            pair(ta, l).mean;
    return out;
}

arma::cx_mat ChannelStatistics::stacked_err_corr(int ta) const
{
    const arma::uword n = static_cast<arma::uword>(num_aps) * antennas;
    arma::cx_mat out(n, n, arma::fill::zeros);
    for (int l = 0; l < num_aps; l++)
    {
        arma::uword at = static_cast<arma::uword>(l) * antennas;
        out.submat(at, at, arma::size(antennas, antennas)) = pair(ta, l).err_corr;
    }
    return out;
}

// Hermitian square root with the documented PSD tolerance.
static arma::cx_mat psd_sqrt(const arma::cx_mat &corr)
{
    arma::cx_mat sym = 0.5 * (corr + corr.t());
    arma::vec eigval;
    arma::cx_mat eigvec;
    if (!arma::eig_sym(eigval, eigvec, sym))
        throw std::runtime_error("build_statistics: eigendecomposition failed");
    double floor = -1e-10 * arma::trace(arma::real(sym)) / static_cast<double>(sym.n_rows);
    if (eigval.min() < floor)
        throw std::runtime_error("build_statistics: correlation matrix is not PSD "
                                 "(eigenvalue " + std::to_string(eigval.min()) + ")");
    eigval.clamp(0.0, arma::datum::inf);
    return eigvec * arma::diagmat(arma::sqrt(eigval)) * eigvec.t();
}

ChannelStatistics build_statistics(const ScenarioConfig &cfg, const GeometrySnapshot &snap,
                                   Rng &rng)
{
    ChannelStatistics stats;
    stats.num_tas = static_cast<int>(snap.aoa_sines.n_rows);
    stats.num_aps = static_cast<int>(snap.aoa_sines.n_cols);
    stats.antennas = cfg.antennas_per_ap;
    stats.noise_power = cfg.noise_power_w;
    stats.pilot_power = cfg.pilot_power();
    stats.pilot_len = cfg.pilot_len();
    stats.pairs.resize(static_cast<std::size_t>(stats.num_tas) * stats.num_aps);

    const int N = stats.antennas;
    const double kappa = std::pow(10.0, cfg.rician_k_db / 10.0);
    double los_gain, nlos_gain; // factors multiplying the pathloss
    if (cfg.rician_split == RicianSplit::Sqrt)
    {
        los_gain = std::sqrt(kappa / (kappa + 1.0));
        nlos_gain = std::sqrt(1.0 / (kappa + 1.0));
    }
    else
    {
        los_gain = kappa / (kappa + 1.0);
        nlos_gain = 1.0 / (kappa + 1.0);
    }
    const double asd_rad = cfg.asd_deg * pi / 180.0;
    const double window_rad = cfg.aoa_window_deg * pi / 180.0;
    const double pitch = 2.0 * pi * cfg.antenna_spacing; // phase per antenna per sin(angle)
    const double pt = stats.pilot_power * stats.pilot_len;

    for (int k = 0; k < stats.num_tas; k++)
        for (int l = 0; l < stats.num_aps; l++)
        {
            PairStatistics &ps = stats.pair(k, l);
            const double sine = snap.aoa_sines(k, l);
            const double aoa = std::asin(sine);
            const double gain = snap.large_scale(k, l);

            // LoS mean: random phase times the array response of the LoS direction
            double phase = rng.uniform(-pi, pi);
            ps.mean.set_size(N);
            for (int a = 0; a < N; a++)
                ps.mean(a) = std::sqrt(los_gain * gain) *
                             std::exp(std::complex<double>(0.0, phase + pitch * a * sine));

            // Scattered component around randomly offset cluster directions
            ps.corr.zeros(N, N);
            if (cfg.correlated)
            {
                for (int m = 0; m < cfg.scattering_clusters; m++)
                {
                    double cl = rng.uniform(aoa - window_rad, aoa + window_rad);
                    double sc = std::sin(cl), cc = std::cos(cl);
                    for (int s = 0; s < N; s++)
                        for (int t = 0; t < N; t++)
                        {
                            double lag = pitch * (s - t);
                            ps.corr(s, t) += std::exp(std::complex<double>(
                                -0.5 * asd_rad * asd_rad * lag * cc * lag * cc, lag * sc));
                        }
                }
                ps.corr *= nlos_gain * gain / cfg.scattering_clusters;
            }
            else
            {
                ps.corr.eye(N, N);
                ps.corr *= nlos_gain * gain;
            }

            ps.corr_sqrt = psd_sqrt(ps.corr);

            // MMSE estimation matrices; pseudo-inverse covers the noiseless or
            // rank-deficient corner where the Gram matrix is singular.
            arma::cx_mat gram = pt * ps.corr;
            gram.diag() += std::complex<double>(stats.noise_power, 0.0);
            arma::cx_mat sol;
            if (!arma::solve(sol, gram, ps.corr, arma::solve_opts::likely_sympd + arma::solve_opts::no_approx))
                sol = arma::pinv(gram) * ps.corr;
            ps.filt = sol.t(); // corr * inv(gram), both Hermitian
            ps.est_corr = pt * ps.corr * sol;
            ps.est_corr = 0.5 * (ps.est_corr + ps.est_corr.t());
            ps.err_corr = ps.corr - ps.est_corr;
        }
    return stats;
}

ChannelRealization realization_from_normals(const ChannelStatistics &stats,
                                            const arma::cx_mat &scatter,
                                            const arma::cx_mat &pilot_noise)
{
    const int N = stats.antennas;
    const double pt = stats.pilot_power * stats.pilot_len;
    ChannelRealization real;
    real.true_ch.set_size(N, stats.num_aps, stats.num_tas);
    real.est_ch.set_size(N, stats.num_aps, stats.num_tas);
    for (int k = 0; k < stats.num_tas; k++)
        for (int l = 0; l < stats.num_aps; l++)
        {
            const PairStatistics &ps = stats.pair(k, l);
            arma::uword at = static_cast<arma::uword>(l) * N;
            arma::cx_vec h = ps.corr_sqrt * scatter(arma::span(at, at + N - 1), k);
            arma::cx_vec noise = std::sqrt(stats.noise_power) *
                                 pilot_noise(arma::span(at, at + N - 1), k);
            real.true_ch.slice(k).col(l) = ps.mean + h;
            real.est_ch.slice(k).col(l) = ps.mean + ps.filt * (pt * h + std::sqrt(pt) * noise);
        }
    return real;
}

ChannelRealization draw_realization(const ChannelStatistics &stats, Rng &rng)
{
    const arma::uword n = static_cast<arma::uword>(stats.num_aps) * stats.antennas;
    arma::cx_mat scatter = rng.cnormal_mat(n, stats.num_tas);
    arma::cx_mat pilot_noise = rng.cnormal_mat(n, stats.num_tas);
    return realization_from_normals(stats, scatter, pilot_noise);
}

arma::cx_vec mmse_estimate(const ChannelStatistics &stats, int ta, int ap,
                           const arma::cx_vec &true_ch, const arma::cx_vec &pilot_noise)
{
    const PairStatistics &ps = stats.pair(ta, ap);
    const double pt = stats.pilot_power * stats.pilot_len;
    arma::cx_vec obs_centered = pt * (true_ch - ps.mean) + std::sqrt(pt) * pilot_noise;
    return ps.mean + ps.filt * obs_centered;
}

ScenarioConfig colocated_equivalent(const ScenarioConfig &cfg)
{
    ScenarioConfig out = cfg;
    out.antennas_per_ap = cfg.num_aps * cfg.antennas_per_ap;
    out.num_aps = 1;
    return out;
}

} // namespace cfhst
