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

#include "cfhst/common.hpp"

#include <cmath>

namespace cfhst
{

static std::uint64_t splitmix64(std::uint64_t &state)
{
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) : engine(seed) {}

Rng Rng::derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c)
{
    // Hash the counters through SplitMix64 so nearby indices give unrelated streams.
    std::uint64_t s = seed;
    std::uint64_t h = splitmix64(s);
    s ^= a + 0x100000001b3ULL;
    h ^= splitmix64(s);
    s ^= b + 0xcbf29ce484222325ULL;
    h ^= splitmix64(s);
    s ^= c + 0x9ddfea08eb382d69ULL;
    h ^= splitmix64(s);
    return Rng(h);
}

double Rng::uniform()
{
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi)
{
    return lo + (hi - lo) * uniform();
}

double Rng::normal()
{
    if (has_cached)
    {
        has_cached = false;
        return cached_normal;
    }
    // Box-Muller; 1-u keeps the log argument strictly positive.
    double u1 = uniform(), u2 = uniform();
    double radius = std::sqrt(-2.0 * std::log1p(-u1));
    cached_normal = radius * std::sin(2.0 * pi * u2);
    has_cached = true;
    return radius * std::cos(2.0 * pi * u2);
}

std::complex<double> Rng::cnormal()
{
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    double re = normal(), im = normal();
    return {re * inv_sqrt2, im * inv_sqrt2};
}

arma::cx_vec Rng::cnormal_vec(arma::uword n)
{
    arma::cx_vec out(n);
    for (arma::uword i = 0; i < n; i++)
        out(i) = cnormal();
    return out;
}

arma::cx_mat Rng::cnormal_mat(arma::uword rows, arma::uword cols)
{
    arma::cx_mat out(rows, cols);
    for (arma::uword c = 0; c < cols; c++)
        for (arma::uword r = 0; r < rows; r++)
            out(r, c) = cnormal();
    return out;
}

KahanAccumulator::KahanAccumulator(arma::uword rows, arma::uword cols)
    : sum(rows, cols, arma::fill::zeros), carry(rows, cols, arma::fill::zeros)
{
}

void KahanAccumulator::add(const arma::cx_mat &term)
{
    arma::cx_mat y = term - carry;
    arma::cx_mat t = sum + y;
    carry = (t - sum) - y;
    sum = t;
}

arma::cx_mat KahanAccumulator::mean(double count) const
{
    return sum / count;
}

} // namespace cfhst
