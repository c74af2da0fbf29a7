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

#ifndef CFHST_ICI_HPP
#define CFHST_ICI_HPP

#include "cfhst/geometry.hpp"
#include "cfhst/scenario.hpp"

#include <armadillo>
#include <complex>
#include <cstdint>
#include <vector>

namespace cfhst
{

/*!
 * Inter-carrier leakage of a line-of-sight path with normalized Doppler
 * offset dfo, onto the subcarrier `offset` bins away, in a block of
 * `subcarriers` bins.  Dirichlet kernel
 *     sin(pi x) / (M sin(pi x / M)) * exp(j pi (1 - 1/M) x),  x = offset + dfo;
 * the removable singularity at x = multiple of M evaluates to the limit
 * (magnitude 1).  offset 0 gives the serving-bin gain.
 */
std::complex<double> ici_los(int offset, double dfo, int subcarriers);

/*!
 * Effective inter-carrier leakage amplitude of the scattered (non-LoS)
 * aggregate: 1 at offset 0, else (-1)^offset * dfo_scale / (sqrt(2)*offset).
 * Valid in the many-subcarrier regime; odd in the offset.
 */
double ici_nlos(int offset, double dfo_scale);

/*!
 * Independent oracle for ici_los: direct DFT summation
 *     I[d] = (1/M) sum_n exp(j 2 pi n (d + dfo) / M),   d = 0..M-1.
 * Deliberately bit-independent of the closed form above.
 */
std::vector<std::complex<double>> dft_oracle_los(double dfo, int subcarriers);

/*!
 * Independent statistical oracle for ici_nlos: Monte Carlo over scattered
 * paths with uniform arrival angles and i.i.d. CN(0, 1/n_paths) amplitudes.
 * Per trial the aggregate per-offset leakage is the amplitude-weighted sum of
 * per-path DFT coefficients; returned is the per-offset second moment
 * E|leak[d]|^2 over trials, d = 0..M-1.  Use a generous M (e.g. 64): the
 * closed form is the many-subcarrier limit.
 */
std::vector<double> dft_oracle_nlos(double dfo_scale, int subcarriers, int n_paths,
                                    int n_trials, std::uint64_t seed);

/*!
 * Per-pair leakage tables for one geometry snapshot: dfo(k,l) is the
 * normalized Doppler offset dfo_scale * aoa_sines(k,l); los(k,l,offset) and
 * nlos(offset) cover offsets -(M-1)..M-1.
 */
struct IciProfile
{
    int subcarriers = 0;
    double dfo_scale = 0.0;
    arma::mat dfo;       // num_tas x num_aps
    arma::cx_cube los_;  // num_tas x num_aps x (2M-1), slice = offset + M-1
    arma::vec nlos_;     // 2M-1

    std::complex<double> los(arma::uword ta, arma::uword ap, int offset) const
    {
        return los_(ta, ap, static_cast<arma::uword>(offset + subcarriers - 1));
    }
    double nlos(int offset) const
    {
        return nlos_(static_cast<arma::uword>(offset + subcarriers - 1));
    }
};

IciProfile build_ici_profile(const ScenarioConfig &cfg, const GeometrySnapshot &snap);

} // namespace cfhst

#endif
