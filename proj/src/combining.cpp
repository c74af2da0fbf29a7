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

#include "cfhst/combining.hpp"

#include <cmath>
#include <stdexcept>

namespace cfhst
{

// sum over m = 1..M of nlos(m-s)^2, s and m zero-based
static arma::vec make_leak_weights(const IciProfile &ici)
{
    const int M = ici.subcarriers;
    arma::vec w(M);
    for (int s = 0; s < M; s++)
    {
        double acc = 0.0;
        for (int m = 0; m < M; m++)
        {
            double leak = ici.nlos(m - s);
            acc += leak * leak;
        }
        w(s) = acc;
    }
    return w;
}

// ---------------------------------------------------------------- centralized

CentralizedEvaluator::CentralizedEvaluator(const ChannelStatistics &stats, const IciProfile &ici,
                                           const ChannelRealization &real, const arma::vec &powers)
    : num_tas(stats.num_tas), num_sub(ici.subcarriers), powers(powers),
      noise_power(stats.noise_power)
{
    if (static_cast<int>(powers.n_elem) != num_tas)
        throw std::invalid_argument("CentralizedEvaluator: powers size mismatch");

    const int L = stats.num_aps, N = stats.antennas, M = num_sub;
    const arma::uword dim = static_cast<arma::uword>(L) * N;

    est_mean.set_size(dim, num_tas);
    est_rand.set_size(dim, num_tas);
    est_full.set_size(dim, num_tas);
    for (int k = 0; k < num_tas; k++)
    {
        est_mean.col(k) = stats.stacked_mean(k);
        est_full.col(k) = arma::vectorise(real.est_ch.slice(k));
        est_rand.col(k) = est_full.col(k) - est_mean.col(k);
    }

    // effective vectors for all offsets; per-AP blocks scale the mean by the
    // pair's LoS leakage, the estimate fluctuation by the scattered leakage
    eff.set_size(dim, static_cast<arma::uword>(num_tas) * (2 * M - 1));
    for (int i = 0; i < num_tas; i++)
        for (int off = -(M - 1); off <= M - 1; off++)
        {
            arma::uword col = static_cast<arma::uword>(i) * (2 * M - 1) + (off + M - 1);
            arma::cx_vec f(dim);
            for (int l = 0; l < L; l++)
            {
                arma::uword at = static_cast<arma::uword>(l) * N;
                f.subvec(at, at + N - 1) =
                    ici.los(i, l, off) * est_mean.col(i).subvec(at, at + N - 1) +
                    ici.nlos(off) * est_rand.col(i).subvec(at, at + N - 1);
            }
            eff.col(col) = f;
        }

    err_sum.zeros(dim, dim);
    for (int i = 0; i < num_tas; i++)
        err_sum += powers(i) * stats.stacked_err_corr(i);

    leak_weight = make_leak_weights(ici);
    chol_cache.resize(M);
}

arma::cx_vec CentralizedEvaluator::effective(int ta, int offset) const
{
    return eff.col(static_cast<arma::uword>(ta) * (2 * num_sub - 1) + (offset + num_sub - 1));
}

arma::cx_vec CentralizedEvaluator::mr_combiner(int ta) const
{
    return est_full.col(ta);
}

arma::cx_mat CentralizedEvaluator::interference_matrix(int s) const
{
    const arma::uword dim = est_mean.n_rows;
    const int M = num_sub;
    // gather sqrt(p_i)-scaled effective vectors of every (i, m) pair
    arma::cx_mat gathered(dim, static_cast<arma::uword>(num_tas) * M);
    for (int i = 0; i < num_tas; i++)
        for (int m = 0; m < M; m++)
            gathered.col(static_cast<arma::uword>(i) * M + m) =
                std::sqrt(powers(i)) * effective(i, m - s);
    arma::cx_mat a = gathered * gathered.t() + leak_weight(s) * err_sum;
    a.diag() += std::complex<double>(noise_power, 0.0);
    return a;
}

const arma::cx_mat &CentralizedEvaluator::chol_lower(int s)
{
    if (chol_cache[s].n_rows == 0)
    {
        if (!arma::chol(chol_cache[s], interference_matrix(s), "lower"))
            throw std::runtime_error("CentralizedEvaluator: interference matrix not PD");
    }
    return chol_cache[s];
}

static arma::cx_vec chol_solve(const arma::cx_mat &lower, const arma::cx_vec &rhs)
{
    arma::cx_vec y = arma::solve(arma::trimatl(lower), rhs);
    return arma::solve(arma::trimatu(lower.t()), y);
}

arma::cx_vec CentralizedEvaluator::mmse_combiner(int ta, int s)
{
    return powers(ta) * chol_solve(chol_lower(s), effective(ta, 0));
}

double CentralizedEvaluator::sinr(int ta, int s, const arma::cx_vec &v) const
{
    const int M = num_sub;
    double desired = powers(ta) * std::norm(arma::cdot(v, effective(ta, 0)));
    double total = 0.0;
    for (int i = 0; i < num_tas; i++)
        for (int m = 0; m < M; m++)
            total += powers(i) * std::norm(arma::cdot(v, effective(i, m - s)));
    double floor_terms = leak_weight(s) * std::real(arma::cdot(v, err_sum * v)) +
                         noise_power * std::real(arma::cdot(v, v));
    return desired / (total - desired + floor_terms);
}

double CentralizedEvaluator::mmse_sinr(int ta, int s)
{
    // q = p f0^H A^-1 f0 with A the full matrix; SINR = q / (1 - q)
    arma::cx_vec f0 = effective(ta, 0);
    double q = powers(ta) * std::real(arma::cdot(f0, chol_solve(chol_lower(s), f0)));
    return q / (1.0 - q);
}

arma::cx_vec CentralizedEvaluator::mmse_combiner_static(int ta)
{
    if (chol_static.n_rows == 0)
    {
        arma::cx_mat a = est_full * arma::diagmat(arma::conv_to<arma::cx_vec>::from(powers)) *
                             est_full.t() +
                         err_sum;
        a.diag() += std::complex<double>(noise_power, 0.0);
        if (!arma::chol(chol_static, a, "lower"))
            throw std::runtime_error("CentralizedEvaluator: static matrix not PD");
    }
    return powers(ta) * chol_solve(chol_static, est_full.col(ta));
}

double CentralizedEvaluator::sinr_static(int ta, const arma::cx_vec &v) const
{
    double desired = powers(ta) * std::norm(arma::cdot(v, est_full.col(ta)));
    double total = 0.0;
    for (int i = 0; i < num_tas; i++)
        total += powers(i) * std::norm(arma::cdot(v, est_full.col(i)));
    double floor_terms = std::real(arma::cdot(v, err_sum * v)) +
                         noise_power * std::real(arma::cdot(v, v));
    return desired / (total - desired + floor_terms);
}

double CentralizedEvaluator::mmse_sinr_static(int ta)
{
    arma::cx_vec v = mmse_combiner_static(ta);
    double q = std::real(arma::cdot(est_full.col(ta), v));
    return q / (1.0 - q);
}

// ---------------------------------------------------------------- per-AP

LocalEvaluator::LocalEvaluator(const ChannelStatistics &stats, const IciProfile &ici,
                               const ChannelRealization &real, const arma::vec &powers)
    : num_tas(stats.num_tas), aps(stats.num_aps), ants(stats.antennas),
      num_sub(ici.subcarriers), powers(powers), noise_power(stats.noise_power), stats_(&stats),
      ici_(&ici)
{
    if (static_cast<int>(powers.n_elem) != num_tas)
        throw std::invalid_argument("LocalEvaluator: powers size mismatch");

    const int M = num_sub;
    est_mean.set_size(ants, aps, num_tas);
    est_rand.set_size(ants, aps, num_tas);
    true_rand.set_size(ants, aps, num_tas);
    for (int k = 0; k < num_tas; k++)
        for (int l = 0; l < aps; l++)
        {
            est_mean.slice(k).col(l) = stats.pair(k, l).mean;
            est_rand.slice(k).col(l) = real.est_ch.slice(k).col(l) - stats.pair(k, l).mean;
            true_rand.slice(k).col(l) = real.true_ch.slice(k).col(l) - stats.pair(k, l).mean;
        }

    eff_tab.set_size(ants, static_cast<arma::uword>(aps) * num_tas, 2 * M - 1);
    true_tab.set_size(ants, static_cast<arma::uword>(aps) * num_tas, 2 * M - 1);
    for (int i = 0; i < num_tas; i++)
        for (int l = 0; l < aps; l++)
        {
            arma::uword col = static_cast<arma::uword>(i) * aps + l;
            for (int off = -(M - 1); off <= M - 1; off++)
            {
                arma::uword slice = static_cast<arma::uword>(off + M - 1);
                std::complex<double> beam = ici.los(i, l, off);
                double leak = ici.nlos(off);
                eff_tab.slice(slice).col(col) =
                    beam * est_mean.slice(i).col(l) + leak * est_rand.slice(i).col(l);
                true_tab.slice(slice).col(col) =
                    beam * est_mean.slice(i).col(l) + leak * true_rand.slice(i).col(l);
            }
        }

    err_sum.assign(aps, arma::cx_mat(ants, ants, arma::fill::zeros));
    for (int l = 0; l < aps; l++)
        for (int i = 0; i < num_tas; i++)
            err_sum[l] += powers(i) * stats.pair(i, l).err_corr;

    leak_weight = make_leak_weights(ici);
    chol_cache.resize(static_cast<std::size_t>(aps) * M);
}

arma::cx_vec LocalEvaluator::effective(int ta, int ap, int offset) const
{
    return eff_tab.slice(offset + num_sub - 1).col(static_cast<arma::uword>(ta) * aps + ap);
}

arma::cx_vec LocalEvaluator::true_effective(int ta, int ap, int offset) const
{
    return true_tab.slice(offset + num_sub - 1).col(static_cast<arma::uword>(ta) * aps + ap);
}

arma::cx_vec LocalEvaluator::mr_combiner(int ta, int ap) const
{
    return est_mean.slice(ta).col(ap) + est_rand.slice(ta).col(ap);
}

const arma::cx_mat &LocalEvaluator::chol_lower(int ap, int s)
{
    arma::cx_mat &slot = chol_cache[static_cast<std::size_t>(ap) * num_sub + s];
    if (slot.n_rows == 0)
    {
        arma::cx_mat gathered(ants, static_cast<arma::uword>(num_tas) * num_sub);
        for (int i = 0; i < num_tas; i++)
            for (int m = 0; m < num_sub; m++)
                gathered.col(static_cast<arma::uword>(i) * num_sub + m) =
                    std::sqrt(powers(i)) * effective(i, ap, m - s);
        arma::cx_mat a = gathered * gathered.t() + leak_weight(s) * err_sum[ap];
        a.diag() += std::complex<double>(noise_power, 0.0);
        if (!arma::chol(slot, a, "lower"))
            throw std::runtime_error("LocalEvaluator: interference matrix not PD");
    }
    return slot;
}

arma::cx_vec LocalEvaluator::mmse_combiner(int ta, int ap, int s)
{
    return powers(ta) * chol_solve(chol_lower(ap, s), effective(ta, ap, 0));
}

double LocalEvaluator::percell_sinr(int ta, int ap, int s, const arma::cx_vec &v) const
{
    double desired = powers(ta) * std::norm(arma::cdot(v, effective(ta, ap, 0)));
    double total = 0.0;
    for (int i = 0; i < num_tas; i++)
        for (int m = 0; m < num_sub; m++)
            total += powers(i) * std::norm(arma::cdot(v, effective(i, ap, m - s)));
    double floor_terms = leak_weight(s) * std::real(arma::cdot(v, err_sum[ap] * v)) +
                         noise_power * std::real(arma::cdot(v, v));
    return desired / (total - desired + floor_terms);
}

double LocalEvaluator::percell_mmse_sinr(int ta, int ap, int s)
{
    arma::cx_vec f0 = effective(ta, ap, 0);
    double q = powers(ta) * std::real(arma::cdot(f0, chol_solve(chol_lower(ap, s), f0)));
    return q / (1.0 - q);
}

arma::cx_vec LocalEvaluator::mmse_combiner_static(int ta, int ap)
{
    arma::cx_mat a = err_sum[ap];
    for (int i = 0; i < num_tas; i++)
    {
        arma::cx_vec est = est_mean.slice(i).col(ap) + est_rand.slice(i).col(ap);
        a += powers(i) * est * est.t();
    }
    a.diag() += std::complex<double>(noise_power, 0.0);
    arma::cx_vec est_ta = est_mean.slice(ta).col(ap) + est_rand.slice(ta).col(ap);
    return powers(ta) * arma::solve(a, est_ta);
}

double LocalEvaluator::percell_sinr_static(int ta, int ap, const arma::cx_vec &v) const
{
    arma::cx_vec est_ta = est_mean.slice(ta).col(ap) + est_rand.slice(ta).col(ap);
    double desired = powers(ta) * std::norm(arma::cdot(v, est_ta));
    double total = 0.0;
    for (int i = 0; i < num_tas; i++)
    {
        arma::cx_vec est = est_mean.slice(i).col(ap) + est_rand.slice(i).col(ap);
        total += powers(i) * std::norm(arma::cdot(v, est));
    }
    double floor_terms = std::real(arma::cdot(v, err_sum[ap] * v)) +
                         noise_power * std::real(arma::cdot(v, v));
    return desired / (total - desired + floor_terms);
}

arma::cx_vec LocalEvaluator::cross_gain(const arma::cx_mat &combiners, int ta, int offset) const
{
    arma::cx_vec out(aps);
    const arma::cx_mat &slice = true_tab.slice(offset + num_sub - 1);
    for (int l = 0; l < aps; l++)
        out(l) = arma::cdot(combiners.col(l), slice.col(static_cast<arma::uword>(ta) * aps + l));
    return out;
}

} // namespace cfhst
