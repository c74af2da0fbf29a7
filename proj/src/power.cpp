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

#include "cfhst/power.hpp"

#include <cmath>
#include <stdexcept>

namespace cfhst
{

arma::vec fractional_power(const GeometrySnapshot &snap, const ClusterAssignment &assign,
                           double max_power)
{
    const arma::uword K = snap.large_scale.n_rows;
    arma::vec cluster_gain(K);
    for (arma::uword k = 0; k < K; k++)
    {
        double acc = 0.0;
        for (arma::uword l = 0; l < snap.large_scale.n_cols; l++)
            if (assign.serve(k, l))
                acc += snap.large_scale(k, l);
        cluster_gain(k) = acc;
    }
    return max_power * cluster_gain.min() / cluster_gain;
}

static arma::vec all_sinr(const std::vector<GenericSinrCoeffs> &coeffs, const arma::vec &p)
{
    arma::vec out(p.n_elem);
    for (arma::uword k = 0; k < p.n_elem; k++)
        out(k) = generic_sinr(coeffs[k], p, static_cast<int>(k));
    return out;
}

PowerResult maxmin_power(const std::vector<GenericSinrCoeffs> &coeffs, double max_power,
                         double tol, int max_iter)
{
    const arma::uword K = coeffs.size();
    PowerResult res;
    res.p = arma::vec(K, arma::fill::value(max_power));
    for (res.iterations = 0; res.iterations < max_iter; res.iterations++)
    {
        arma::vec sinr = all_sinr(coeffs, res.p);
        double spread = sinr.max() - sinr.min();
        res.trace.push_back(spread);
        if (spread <= tol)
        {
            res.converged = true;
            break;
        }
        res.p /= sinr;                       // equalizing update
        res.p *= max_power / res.p.max();    // keep the budget tight
    }
    return res;
}

PowerResult maxsum_power(const std::vector<GenericSinrCoeffs> &coeffs, double max_power,
                         double tol, int max_iter)
{
    const arma::uword K = coeffs.size();
    const double floor = 1e-12 * max_power;
    PowerResult res;
    res.p = arma::vec(K, arma::fill::value(max_power));

    arma::vec rx(K), weight(K), mse(K);
    double prev = arma::datum::inf;
    for (res.iterations = 0; res.iterations < max_iter; res.iterations++)
    {
        // scalar receiver and MSE weight per TA, then the power update
        arma::vec total(K);
        for (arma::uword k = 0; k < K; k++)
        {
            total(k) = coeffs[k].gain * res.p(k) + arma::dot(coeffs[k].cross, res.p) +
                       coeffs[k].noise;
            rx(k) = std::sqrt(coeffs[k].gain * res.p(k)) / total(k);
            mse(k) = rx(k) * rx(k) * total(k) -
                     2.0 * rx(k) * std::sqrt(coeffs[k].gain * res.p(k)) + 1.0;
            weight(k) = 1.0 / mse(k);
        }
        double objective = 0.0;
        for (arma::uword k = 0; k < K; k++)
            objective += weight(k) * mse(k) - std::log(weight(k));
        res.trace.push_back(objective);
        if (std::isfinite(prev) && prev - objective <= tol * std::abs(prev))
        {
            res.converged = true;
            break;
        }
        prev = objective;

        for (arma::uword k = 0; k < K; k++)
        {
            double denom = weight(k) * rx(k) * rx(k) * coeffs[k].gain;
            for (arma::uword i = 0; i < K; i++)
                denom += weight(i) * rx(i) * rx(i) * coeffs[i].cross(k);
            double num = coeffs[k].gain * weight(k) * weight(k) * rx(k) * rx(k);
            res.p(k) = std::clamp(num / (denom * denom), floor, max_power);
        }
    }
    return res;
}

double sum_se(const std::vector<GenericSinrCoeffs> &coeffs, const arma::vec &powers)
{
    double acc = 0.0;
    for (arma::uword k = 0; k < powers.n_elem; k++)
        acc += std::log2(1.0 + generic_sinr(coeffs[k], powers, static_cast<int>(k)));
    return acc;
}

double min_sinr(const std::vector<GenericSinrCoeffs> &coeffs, const arma::vec &powers)
{
    return all_sinr(coeffs, powers).min();
}

} // namespace cfhst
