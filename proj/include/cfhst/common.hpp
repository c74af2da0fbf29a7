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

#ifndef CFHST_COMMON_HPP
#define CFHST_COMMON_HPP

#include <armadillo>
#include <complex>
#include <cstdint>
#include <random>

namespace cfhst
{

// Propagation-model convention for the speed of light (not the SI exact value).
constexpr double light_speed_mps = 3.0e8;

constexpr double pi = 3.14159265358979323846;

/*!
 * Deterministic random stream with counter-based derivation.
 *
 * Sub-streams are derived from (seed, a, b, c) by hashing, so every
 * (position, trial) pair owns an independent generator and results do not
 * depend on evaluation order or thread count.  All draws go through
 * hand-rolled uniform/Box-Muller transforms to keep byte-identical output
 * across standard-library implementations.
 */
class Rng
{
  public:
    explicit Rng(std::uint64_t seed);

    // Independent sub-stream for counters (a, b, c); pure function of the inputs.
    static Rng derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

    double uniform();                      // U[0,1)
    double uniform(double lo, double hi);  // U[lo,hi)
    double normal();                       // N(0,1)

    // Circularly-symmetric complex Gaussian, entries CN(0,1)
    std::complex<double> cnormal();
    arma::cx_vec cnormal_vec(arma::uword n);
    arma::cx_mat cnormal_mat(arma::uword rows, arma::uword cols);

  private:
    std::mt19937_64 engine;
    double cached_normal = 0.0;
    bool has_cached = false;
};

/*! Kahan-compensated accumulator for complex matrices (stable pooled moments). */
class KahanAccumulator
{
  public:
    KahanAccumulator() = default;
    explicit KahanAccumulator(arma::uword rows, arma::uword cols);
    void add(const arma::cx_mat &term);
    arma::cx_mat mean(double count) const;

  private:
    arma::cx_mat sum, carry;
};

} // namespace cfhst

#endif
