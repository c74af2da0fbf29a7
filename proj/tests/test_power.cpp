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

#include "cfhst/common.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

using namespace cfhst;

namespace
{

// Random but well-conditioned SINR coefficient sets for the solvers.
std::vector<GenericSinrCoeffs> random_coeffs(int num_tas, Rng &rng)
{
    std::vector<GenericSinrCoeffs> coeffs(num_tas);
    for (int k = 0; k < num_tas; ++k)
    {
        coeffs[k].gain = rng.uniform(0.5, 2.0);
        coeffs[k].cross.set_size(num_tas);
        for (int i = 0; i < num_tas; ++i)
            coeffs[k].cross(i) = rng.uniform(0.01, 0.1);
        coeffs[k].noise = rng.uniform(0.001, 0.01);
    }
    return coeffs;
}

// Independent max-min oracle: bisection on the target SINR, feasibility by
// the standard interference fixed point started from zero power.
double maxmin_bisection(const std::vector<GenericSinrCoeffs> &coeffs, double max_power)
{
    const arma::uword K = coeffs.size();
    auto feasible = [&](double target) {
        arma::vec p(K, arma::fill::zeros);
        for (int it = 0; it < 2000; ++it)
        {
            arma::vec next(K);
            for (arma::uword k = 0; k < K; ++k)
                next(k) = target *
                          (arma::dot(coeffs[k].cross, p) + coeffs[k].noise) /
                          coeffs[k].gain;
            if (next.max() > max_power)
                return false;
            if (arma::norm(next - p, "inf") < 1e-14 * max_power)
                return true;
            p = next;
        }
        return true;
    };

    double lo = 0.0, hi = 1.0;
    while (feasible(hi))
        hi *= 2.0;
    for (int it = 0; it < 200; ++it)
    {
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? lo : hi) = mid;
    }
    return lo;
}

} // namespace

TEST_CASE("power - fractional favors the weak cluster")
{
    GeometrySnapshot snap;
    snap.large_scale = arma::vec{2.0e-9, 1.0e-9}; // two TAs, one AP
    ClusterAssignment assign;
    assign.serve = arma::umat(2, 1, arma::fill::ones);

    const arma::vec p = fractional_power(snap, assign, 0.2);
    REQUIRE(p(0) == Catch::Approx(0.1));
    REQUIRE(p(1) == Catch::Approx(0.2)); // weakest TA at full power

    // Ignored APs change nothing.
    snap.large_scale =
        arma::join_rows(arma::vec{2.0e-9, 1.0e-9}, arma::vec{5.0e-8, 9.0e-8});
    assign.serve = arma::umat(2, 2, arma::fill::ones);
    assign.serve(0, 1) = 0;
    assign.serve(1, 1) = 0;
    const arma::vec masked = fractional_power(snap, assign, 0.2);
    REQUIRE(masked(0) == Catch::Approx(0.1));
    REQUIRE(masked(1) == Catch::Approx(0.2));
}

TEST_CASE("power - max-min equalizes the SINRs")
{
    Rng rng(31);
    for (int rep = 0; rep < 10; ++rep)
    {
        const auto coeffs = random_coeffs(4, rng);
        const PowerResult res = maxmin_power(coeffs, 0.2);

        REQUIRE(res.converged);
        REQUIRE(res.p.max() == Catch::Approx(0.2));
        REQUIRE(res.p.min() > 0.0);

        arma::vec sinr(4);
        for (int k = 0; k < 4; ++k)
            sinr(k) = generic_sinr(coeffs[k], res.p, k);
        REQUIRE(sinr.max() - sinr.min() <= 1e-4);
        REQUIRE(res.trace.back() <= 1e-4);
    }
}

TEST_CASE("power - max-min matches a bisection oracle")
{
    Rng rng(37);
    for (int rep = 0; rep < 20; ++rep)
    {
        const auto coeffs = random_coeffs(3, rng);
        const PowerResult res = maxmin_power(coeffs, 0.2, 1e-7);
        REQUIRE(res.converged);

        const double achieved = min_sinr(coeffs, res.p);
        const double oracle = maxmin_bisection(coeffs, 0.2);
        REQUIRE(achieved == Catch::Approx(oracle).epsilon(1e-3));
    }
}

TEST_CASE("power - max-sum surrogate never increases")
{
    Rng rng(41);
    for (int rep = 0; rep < 50; ++rep)
    {
        const auto coeffs = random_coeffs(4, rng);
        const PowerResult res = maxsum_power(coeffs, 0.2);
        REQUIRE(res.converged);
        REQUIRE(res.p.max() <= 0.2 * (1.0 + 1e-12));
        REQUIRE(res.p.min() >= 1e-12 * 0.2 * (1.0 - 1e-12));
        for (std::size_t i = 1; i < res.trace.size(); ++i)
            REQUIRE(res.trace[i] <=
                    res.trace[i - 1] + 1e-12 * (1.0 + std::abs(res.trace[i - 1])));
    }
}

TEST_CASE("power - max-sum beats naive allocations")
{
    Rng rng(43);
    for (int rep = 0; rep < 10; ++rep)
    {
        const auto coeffs = random_coeffs(3, rng);
        const PowerResult res = maxsum_power(coeffs, 0.2);
        const double best = sum_se(coeffs, res.p);

        const arma::vec full(3, arma::fill::value(0.2));
        REQUIRE(best >= sum_se(coeffs, full) * (1.0 - 1e-4));
        for (int trial = 0; trial < 20; ++trial)
        {
            arma::vec p(3);
            for (arma::uword k = 0; k < 3; ++k)
                p(k) = rng.uniform(0.002, 0.2);
            REQUIRE(best >= sum_se(coeffs, p) * (1.0 - 1e-4));
        }
    }
}

TEST_CASE("power - two-TA grid search cannot improve max-sum")
{
    Rng rng(47);
    const auto coeffs = random_coeffs(2, rng);
    const PowerResult res = maxsum_power(coeffs, 0.2);
    const double best = sum_se(coeffs, res.p);

    double grid_best = 0.0;
    const int steps = 40;
    for (int a = 0; a < steps; ++a)
        for (int b = 0; b < steps; ++b)
        {
            arma::vec p{0.002 + a * (0.2 - 0.002) / (steps - 1),
                        0.002 + b * (0.2 - 0.002) / (steps - 1)};
            grid_best = std::max(grid_best, sum_se(coeffs, p));
        }
    REQUIRE(grid_best <= best * 1.01);
}

TEST_CASE("power - a single TA transmits at full power")
{
    Rng rng(53);
    const auto coeffs = random_coeffs(1, rng);

    const PowerResult mm = maxmin_power(coeffs, 0.2);
    REQUIRE(mm.converged);
    REQUIRE(mm.p(0) == Catch::Approx(0.2));

    const PowerResult ms = maxsum_power(coeffs, 0.2);
    REQUIRE(ms.converged);
    const arma::vec full{0.2};
    REQUIRE(sum_se(coeffs, ms.p) >= sum_se(coeffs, full) * (1.0 - 1e-4));
}

TEST_CASE("power - objective helpers")
{
    Rng rng(59);
    const auto coeffs = random_coeffs(2, rng);
    const arma::vec p{0.1, 0.05};

    double expect = 0.0;
    for (int k = 0; k < 2; ++k)
        expect += std::log2(1.0 + generic_sinr(coeffs[k], p, k));
    REQUIRE(sum_se(coeffs, p) == Catch::Approx(expect).epsilon(1e-15));

    const double lo = std::min(generic_sinr(coeffs[0], p, 0), generic_sinr(coeffs[1], p, 1));
    REQUIRE(min_sinr(coeffs, p) == Catch::Approx(lo).epsilon(1e-15));
}
