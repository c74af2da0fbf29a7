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

#include "cfhst/lsfd.hpp"

#include "cfhst/combining.hpp"

#include <cmath>
#include <stdexcept>

namespace cfhst
{

LsfdClosedForm closed_form_stats(const ChannelStatistics &stats, const IciProfile &ici,
                                 const arma::umat *serve_mask)
{
    LsfdClosedForm cf;
    cf.num_tas = stats.num_tas;
    cf.num_aps = stats.num_aps;
    cf.subcarriers = ici.subcarriers;
    cf.noise_power = stats.noise_power;
    cf.ta.resize(cf.num_tas);

    const int K = cf.num_tas, L = cf.num_aps, M = cf.subcarriers;
    const arma::uword n_off = 2 * static_cast<arma::uword>(M) - 1;

    for (int k = 0; k < K; k++)
    {
        TaClosedForm &t = cf.ta[k];
        t.serving_mean.zeros(L);
        t.self_mean.zeros(L, n_off);
        t.cross_mean.assign(K, arma::cx_mat(L, n_off, arma::fill::zeros));
        t.leak_power.assign(K, arma::mat(L, n_off, arma::fill::zeros));
        t.noise_gain.zeros(L);

        for (int l = 0; l < L; l++)
        {
            if (serve_mask && (*serve_mask)(k, l) == 0)
                continue; // combiner forced to zero: every per-AP entry vanishes
            const PairStatistics &own = stats.pair(k, l);
            const double est_tr = std::real(arma::trace(own.est_corr));
            const double mean_sq = std::real(arma::cdot(own.mean, own.mean));

            t.noise_gain(l) = est_tr + mean_sq;
            for (int off = -(M - 1); off <= M - 1; off++)
            {
                arma::uword col = static_cast<arma::uword>(off + M - 1);
                t.self_mean(l, col) = ici.los(k, l, off) * mean_sq + ici.nlos(off) * est_tr;
            }
            t.serving_mean(l) = t.self_mean(l, M - 1);

            for (int i = 0; i < K; i++)
            {
                const PairStatistics &other = stats.pair(i, l);
                const std::complex<double> mean_prod = arma::cdot(own.mean, other.mean);
                const double leak_corr =
                    std::real(arma::trace(other.corr * own.est_corr)) +
                    std::real(arma::cdot(own.mean, other.corr * own.mean));
                const double beam_est =
                    std::real(arma::cdot(other.mean, own.est_corr * other.mean));
                for (int off = -(M - 1); off <= M - 1; off++)
                {
                    arma::uword col = static_cast<arma::uword>(off + M - 1);
                    double nl = ici.nlos(off);
                    t.cross_mean[i](l, col) = ici.los(i, l, off) * mean_prod;
                    t.leak_power[i](l, col) =
                        nl * nl * leak_corr + std::norm(ici.los(i, l, off)) * beam_est;
                }
            }
        }
    }
    return cf;
}

double closed_form_sinr(const LsfdClosedForm &cf, int ta, int s, const arma::cx_vec &weights,
                        const arma::vec &powers)
{
    const TaClosedForm &t = cf.ta[ta];
    const int K = cf.num_tas, M = cf.subcarriers;
    const arma::vec wsq = arma::square(arma::abs(weights));

    double desired = powers(ta) * std::norm(arma::cdot(weights, t.serving_mean));
    double den = cf.noise_power * arma::dot(wsq, t.noise_gain);
    for (int i = 0; i < K; i++)
        for (int m = 0; m < M; m++)
        {
            arma::uword col = static_cast<arma::uword>(m - s + M - 1);
            den += powers(i) * arma::dot(wsq, t.leak_power[i].col(col));
            if (i == ta)
            {
                if (m != s)
                    den += powers(i) * std::norm(arma::cdot(weights, t.self_mean.col(col)));
            }
            else
                den += powers(i) * std::norm(arma::cdot(weights, t.cross_mean[i].col(col)));
        }
    return desired / den;
}

arma::cx_vec lsfd_weights(const LsfdClosedForm &cf, int ta, int s, const arma::vec &powers,
                          bool drop_serving_offset)
{
    const TaClosedForm &t = cf.ta[ta];
    const int K = cf.num_tas, L = cf.num_aps, M = cf.subcarriers;

    arma::cx_mat mat(L, L, arma::fill::zeros);
    arma::vec diag_acc = cf.noise_power * t.noise_gain;
    for (int i = 0; i < K; i++)
        for (int m = 0; m < M; m++)
        {
            arma::uword col = static_cast<arma::uword>(m - s + M - 1);
            diag_acc += powers(i) * t.leak_power[i].col(col);
            if (i == ta)
            {
                if (m != s)
                    mat += powers(i) * t.self_mean.col(col) * t.self_mean.col(col).t();
            }
            else if (!(drop_serving_offset && m == s))
                mat += powers(i) * t.cross_mean[i].col(col) * t.cross_mean[i].col(col).t();
        }
    mat.diag() += arma::conv_to<arma::cx_vec>::from(diag_acc);

    // restrict to active APs (masked rows are identically zero and would make
    // the matrix singular)
    arma::uvec active = arma::find(t.noise_gain > 0.0);
    if (active.n_elem == 0)
        throw std::runtime_error("lsfd_weights: no active AP for this TA");
    arma::cx_vec out(L, arma::fill::zeros);
    arma::cx_vec sol = arma::solve(mat.submat(active, active), t.serving_mean(active));
    out(active) = sol;
    return out;
}

arma::cx_vec equal_weights(const LsfdClosedForm &cf, int ta)
{
    arma::uvec active = arma::find(cf.ta[ta].noise_gain > 0.0);
    arma::cx_vec out(cf.num_aps, arma::fill::zeros);
    out(active).fill(std::complex<double>(1.0 / active.n_elem, 0.0));
    return out;
}

double closed_form_se(const LsfdClosedForm &cf, int ta, int s, const arma::vec &powers,
                      WeightMode mode, bool drop_serving_offset)
{
    arma::cx_vec w = mode == WeightMode::Equal ? equal_weights(cf, ta)
                                               : lsfd_weights(cf, ta, s, powers, drop_serving_offset);
    return std::log2(1.0 + closed_form_sinr(cf, ta, s, w, powers));
}

// ------------------------------------------------------------------ generic

LsfdMomentAccumulator::LsfdMomentAccumulator(int num_tas, int num_aps, int subcarriers,
                                             double noise_power)
    : num_tas_(num_tas), num_aps_(num_aps), subcarriers_(subcarriers), noise_power_(noise_power),
      second_(static_cast<std::size_t>(num_tas) * subcarriers, KahanAccumulator(num_aps, num_aps)),
      serving_(static_cast<std::size_t>(num_tas) * subcarriers, KahanAccumulator(num_aps, 1)),
      cpow_(static_cast<std::size_t>(num_tas) * subcarriers, KahanAccumulator(num_aps, 1))
{
}

void LsfdMomentAccumulator::accumulate(LocalEvaluator &loc, LocalCombinerKind kind,
                                       const arma::vec &powers)
{
    const int K = num_tas_, L = num_aps_, M = subcarriers_;
    arma::cx_mat combiners(loc.antennas(), L);
    arma::cx_mat gathered(L, static_cast<arma::uword>(K) * M);
    for (int s = 0; s < M; s++)
        for (int k = 0; k < K; k++)
        {
            for (int l = 0; l < L; l++)
                combiners.col(l) = kind == LocalCombinerKind::Mr ? loc.mr_combiner(k, l)
                                                                 : loc.mmse_combiner(k, l, s);

            for (int i = 0; i < K; i++)
                for (int m = 0; m < M; m++)
                    gathered.col(static_cast<arma::uword>(i) * M + m) =
                        std::sqrt(powers(i)) * loc.cross_gain(combiners, i, m - s);
            std::size_t at = static_cast<std::size_t>(k) * M + s;
            second_[at].add(gathered * gathered.t());
            serving_[at].add(gathered.col(static_cast<arma::uword>(k) * M + s) /
                             std::sqrt(powers(k)));
            arma::vec norms(L);
            for (int l = 0; l < L; l++)
                norms(l) = std::real(arma::cdot(combiners.col(l), combiners.col(l)));
            cpow_[at].add(arma::cx_mat(norms, arma::vec(L, arma::fill::zeros)));
        }
    trials_++;
}

GenericMoments LsfdMomentAccumulator::finalize() const
{
    if (trials_ < 1)
        throw std::runtime_error("LsfdMomentAccumulator: no realizations accumulated");
    GenericMoments mom;
    mom.num_tas = num_tas_;
    mom.num_aps = num_aps_;
    mom.subcarriers = subcarriers_;
    mom.noise_power = noise_power_;
    mom.second.resize(second_.size());
    mom.serving.resize(second_.size());
    mom.combiner_power.resize(second_.size());
    for (std::size_t at = 0; at < second_.size(); at++)
    {
        mom.second[at] = second_[at].mean(trials_);
        mom.serving[at] = serving_[at].mean(trials_);
        mom.combiner_power[at] = arma::real(cpow_[at].mean(trials_));
    }
    return mom;
}

GenericMoments generic_lsfd_mc(const ChannelStatistics &stats, const IciProfile &ici,
                               LocalCombinerKind kind, const arma::vec &powers, int n_trials,
                               std::uint64_t seed)
{
    if (n_trials < 1)
        throw std::invalid_argument("generic_lsfd_mc: n_trials must be >= 1");
    LsfdMomentAccumulator acc(stats.num_tas, stats.num_aps, ici.subcarriers, stats.noise_power);
    for (int trial = 0; trial < n_trials; trial++)
    {
        Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(trial), 0x4c53);
        ChannelRealization real = draw_realization(stats, rng);
        LocalEvaluator loc(stats, ici, real, powers);
        acc.accumulate(loc, kind, powers);
    }
    return acc.finalize();
}

double moments_sinr(const GenericMoments &mom, int ta, int s, double power_ta,
                    const arma::cx_vec &weights)
{
    std::size_t at = static_cast<std::size_t>(ta) * mom.subcarriers + s;
    double desired = power_ta * std::norm(arma::cdot(weights, mom.serving[at]));
    double den = std::real(arma::cdot(weights, mom.second[at] * weights)) +
                 mom.noise_power * arma::dot(arma::square(arma::abs(weights)),
                                             mom.combiner_power[at]) -
                 desired;
    return desired / den;
}

arma::cx_vec moments_weights(const GenericMoments &mom, int ta, int s)
{
    std::size_t at = static_cast<std::size_t>(ta) * mom.subcarriers + s;
    arma::cx_mat full = mom.second[at];
    full.diag() += arma::conv_to<arma::cx_vec>::from(mom.noise_power * mom.combiner_power[at]);
    return arma::solve(full, mom.serving[at]);
}

double moments_se(const GenericMoments &mom, int ta, int s, double power_ta, WeightMode mode)
{
    arma::cx_vec w;
    if (mode == WeightMode::Equal)
        w = arma::cx_vec(mom.num_aps, arma::fill::ones) / static_cast<double>(mom.num_aps);
    else
        w = moments_weights(mom, ta, s);
    return std::log2(1.0 + moments_sinr(mom, ta, s, power_ta, w));
}

} // namespace cfhst
