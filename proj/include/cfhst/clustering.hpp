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

#ifndef CFHST_CLUSTERING_HPP
#define CFHST_CLUSTERING_HPP

#include "cfhst/geometry.hpp"
#include "cfhst/lsfd.hpp"

#include <armadillo>
#include <string>

namespace cfhst
{

/*!
 * TA-centric serving clusters: each TA's master AP is its strongest
 * (large-scale) AP, ties to the lowest index; AP l serves TA k when the
 * large-scale shortfall against the master is below threshold_db.  The master
 * always serves.  threshold_db = +inf makes every AP serve every TA.
 */
struct ClusterAssignment
{
    double threshold_db = arma::datum::inf;
    arma::umat serve;   // num_tas x num_aps, 0/1
    arma::uvec master;  // num_tas
};

ClusterAssignment form_clusters(const GeometrySnapshot &snap, double threshold_db);

/*! JSON export, one object per TA: {"ta": k, "master": l, "aps": [...], "theta_db": x}. */
std::string cluster_json(const ClusterAssignment &assign);

/*!
 * Constant coefficients of the power-independent SINR form
 *   sinr_k = gain * p_k / (sum_i cross(i) * p_i + noise)
 * extracted from closed-form statistics at frozen weights.
 */
struct GenericSinrCoeffs
{
    double gain = 0.0;   // multiplies the own power
    arma::vec cross;     // num_tas entries (own index = self-leakage)
    double noise = 0.0;
};

GenericSinrCoeffs extract_generic_coeffs(const LsfdClosedForm &cf, int ta, int s,
                                         const arma::cx_vec &weights);

/*! SINR of TA `ta` under powers p for precomputed coefficients. */
double generic_sinr(const GenericSinrCoeffs &coeffs, const arma::vec &powers, int ta);

} // namespace cfhst

#endif
