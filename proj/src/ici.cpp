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

#include "cfhst/ici.hpp"

#include "cfhst/common.hpp"

#include <cmath>
#include <stdexcept>

namespace cfhst
{

std::complex<double> ici_los(int offset, double dfo, int subcarriers)
{
    if (subcarriers < 1)
        throw std::invalid_argument("ici_los: subcarriers must be >= 1");
    const double M = subcarriers;
    const double x = offset + dfo;
    const std::complex<double> phase = std::exp(std::complex<double>(0.0, pi * (1.0 - 1.0 / M) * x));
    const double den = std::sin(pi * x / M);
    if (std::abs(den) < 1e-12)
    {
        // x is (numerically) a multiple of M; the kernel limit has magnitude 1
        // and sign (-1)^(j(M-1)) for x = j*M.
        auto j = static_cast<long long>(std::llround(x / M));
        double sign = (j * (subcarriers - 1)) % 2 == 0 ? 1.0 : -1.0;
        return sign * phase;
    }
    return std::sin(pi * x) / (M * den) * phase;
}

double ici_nlos(int offset, double dfo_scale)
{
    if (offset == 0)
        return 1.0;
    double sign = offset % 2 == 0 ? 1.0 : -1.0;
    return sign * dfo_scale / (std::sqrt(2.0) * offset);
}

std::vector<std::complex<double>> dft_oracle_los(double dfo, int subcarriers)
{
    if (subcarriers < 1)
        throw std::invalid_argument("dft_oracle_los: subcarriers must be >= 1");
    const double M = subcarriers;
    std::vector<std::complex<double>> out(subcarriers);
    for (int d = 0; d < subcarriers; d++)
    {
        std::complex<double> acc = 0.0;
        for (int n = 0; n < subcarriers; n++)
            acc += std::exp(std::complex<double>(0.0, 2.0 * pi * n * (d + dfo) / M));
        out[d] = acc / M;
    }
    return out;
}

std::vector<double> dft_oracle_nlos(double dfo_scale, int subcarriers, int n_paths,
                                    int n_trials, std::uint64_t seed)
{
    if (subcarriers < 1 || n_paths < 1 || n_trials < 1)
        throw std::invalid_argument("dft_oracle_nlos: counts must be >= 1");
    const double M = subcarriers;
    std::vector<double> second_moment(subcarriers, 0.0);
    std::vector<std::complex<double>> aggregate(subcarriers);
    const double amp_scale = 1.0 / std::sqrt(static_cast<double>(n_paths));

    for (int t = 0; t < n_trials; t++)
    {
        Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(t));
        std::fill(aggregate.begin(), aggregate.end(), std::complex<double>(0.0));
        for (int p = 0; p < n_paths; p++)
        {
            double path_dfo = dfo_scale * std::sin(rng.uniform(-pi, pi));
            std::complex<double> amp = amp_scale * rng.cnormal();
            // Per-path DFT coefficient via the closed geometric sum of
            // (1/M) sum_n exp(j 2 pi n (d+eps)/M); exact and independent of
            // the statistical model under test.
            std::complex<double> num = 1.0 - std::exp(std::complex<double>(0.0, 2.0 * pi * path_dfo));
            for (int d = 0; d < subcarriers; d++)
            {
                std::complex<double> den =
                    1.0 - std::exp(std::complex<double>(0.0, 2.0 * pi * (d + path_dfo) / M));
                std::complex<double> coeff =
                    std::abs(den) < 1e-14 ? std::complex<double>(1.0) : num / (M * den);
                aggregate[d] += amp * coeff;
            }
        }
        for (int d = 0; d < subcarriers; d++)
            second_moment[d] += std::norm(aggregate[d]);
    }
    for (double &v : second_moment)
        v /= n_trials;
    return second_moment;
}

IciProfile build_ici_profile(const ScenarioConfig &cfg, const GeometrySnapshot &snap)
{
    IciProfile prof;
    prof.subcarriers = cfg.subcarriers;
    prof.dfo_scale = cfg.dfo_scale();
    prof.dfo = prof.dfo_scale * snap.aoa_sines;

    const arma::uword K = snap.aoa_sines.n_rows, L = snap.aoa_sines.n_cols;
    const arma::uword n_off = 2 * static_cast<arma::uword>(cfg.subcarriers) - 1;
    prof.los_.set_size(K, L, n_off);
    prof.nlos_.set_size(n_off);
    for (int off = -(cfg.subcarriers - 1); off <= cfg.subcarriers - 1; off++)
    {
        auto slice = static_cast<arma::uword>(off + cfg.subcarriers - 1);
        prof.nlos_(slice) = ici_nlos(off, prof.dfo_scale);
        for (arma::uword k = 0; k < K; k++)
            for (arma::uword l = 0; l < L; l++)
                prof.los_(k, l, slice) = ici_los(off, prof.dfo(k, l), cfg.subcarriers);
    }
    return prof;
}

} // namespace cfhst
