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

#ifndef CFHST_POWER_HPP
#define CFHST_POWER_HPP

#include "cfhst/clustering.hpp"

#include <armadillo>
#include <vector>

namespace cfhst
{

struct PowerResult
{
    arma::vec p;
    int iterations = 0;
    bool converged = false;
    std::vector<double> trace; // per-iteration progress metric (solver-specific)
};

/*!
 * Heuristic fractional allocation: p_k = P * min_i zeta_i / zeta_k, where
 * zeta_k sums the large-scale gains of TA k's serving APs.  The weakest TA
 * transmits at full power; no iteration involved.
 */
arma::vec fractional_power(const GeometrySnapshot &snap, const ClusterAssignment &assign,
                           double max_power);

/*!
 * Max-min fairness by fixed point on the generic SINR coefficients:
 * p_k <- p_k / sinr_k, renormalized so max p = P, until the SINR spread
 * (max - min) drops below tol.  trace records the spread.
 */
PowerResult maxmin_power(const std::vector<GenericSinrCoeffs> &coeffs, double max_power,
                         double tol = 1e-4, int max_iter = 10000);

/*!
 * Weighted-MMSE block-coordinate ascent on the sum of log2(1+sinr_k):
 * alternates scalar receiver / weight / power updates, each power capped at P
 * and floored at 1e-12*P.  trace records the surrogate objective
 * sum_k(weight_k * mse_k - ln weight_k), which never increases; iteration
 * stops when its relative improvement drops below tol.
 */
PowerResult maxsum_power(const std::vector<GenericSinrCoeffs> &coeffs, double max_power,
                         double tol = 1e-6, int max_iter = 10000);

/*! Sum over TAs of log2(1 + sinr_k(p)) for the given coefficients. */
double sum_se(const std::vector<GenericSinrCoeffs> &coeffs, const arma::vec &powers);

/*! Smallest per-TA SINR under powers p. */
double min_sinr(const std::vector<GenericSinrCoeffs> &coeffs, const arma::vec &powers);

} // namespace cfhst

#endif
