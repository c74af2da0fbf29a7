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

#include "cfhst/montecarlo.hpp"

#include "cfhst/common.hpp"
#include "cfhst/lsfd.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

using namespace cfhst;

namespace
{

ExperimentPlan small_plan()
{
    ExperimentPlan plan;
    plan.scenario.num_aps = 3;
    plan.scenario.antennas_per_ap = 2;
    plan.scenario.num_tas = 2;
    plan.scenario.subcarriers = 4;
    plan.sweep.start_m = 0.0;
    plan.sweep.end_m = 40.0;
    plan.sweep.step_m = 20.0;
    plan.trials = 10;
    plan.seed = 5;
    return plan;
}

bool rows_identical(const ResultTable &a, const ResultTable &b)
{
    if (a.rows.size() != b.rows.size())
        return false;
    for (std::size_t i = 0; i < a.rows.size(); ++i)
    {
        if (a.rows[i].sweep_value != b.rows[i].sweep_value)
            return false;
        if (a.rows[i].architecture != b.rows[i].architecture)
            return false;
        if (a.rows[i].block_se != b.rows[i].block_se)
            return false;
        if (arma::norm(a.rows[i].per_ta_se - b.rows[i].per_ta_se, "inf") != 0.0)
            return false;
    }
    return true;
}

} // namespace

TEST_CASE("montecarlo - architecture names round-trip")
{
    for (Architecture arch :
         {Architecture::CentralizedMmse, Architecture::CentralizedMr,
          Architecture::LocalMmseLsfd, Architecture::LocalMrLsfdMc, Architecture::LsfdMr,
          Architecture::MfMr, Architecture::SmallcellMmse, Architecture::SmallcellMr,
          Architecture::ColocatedMmse, Architecture::ColocatedMr})
        REQUIRE(parse_architecture(to_string(arch)) == arch);
    REQUIRE_THROWS_AS(parse_architecture("centralised-mmse"), std::invalid_argument);

    REQUIRE_FALSE(architecture_uses_trials(Architecture::LsfdMr));
    REQUIRE_FALSE(architecture_uses_trials(Architecture::MfMr));
    REQUIRE(architecture_uses_trials(Architecture::CentralizedMmse));
    REQUIRE(architecture_uses_trials(Architecture::SmallcellMr));

    for (PowerScheme s :
         {PowerScheme::Full, PowerScheme::Fractional, PowerScheme::MaxMin, PowerScheme::MaxSum})
        REQUIRE(parse_power_scheme(to_string(s)) == s);
    REQUIRE_THROWS_AS(parse_power_scheme("waterfilling"), std::invalid_argument);
}

TEST_CASE("montecarlo - plans are rejected with the offending field")
{
    auto expect = [](ExperimentPlan plan, const std::string &needle) {
        REQUIRE_THROWS_MATCHES(
            validate_plan(plan), std::invalid_argument,
            Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring(needle)));
    };

    ExperimentPlan plan = small_plan();
    plan.trials = 0;
    expect(plan, "trials");

    plan = small_plan();
    plan.architectures.clear();
    expect(plan, "architectures");

    plan = small_plan();
    plan.sweep.kind = SweepSpec::Kind::Speed;
    expect(plan, "speeds_kmh");

    plan = small_plan();
    plan.sweep.step_m = 0.0;
    expect(plan, "step_m");

    plan = small_plan();
    plan.sweep.end_m = plan.sweep.start_m - 1.0;
    expect(plan, "end_m");

    plan = small_plan();
    plan.scenario.num_aps = 0;
    expect(plan, "num_aps");
}

TEST_CASE("montecarlo - results are deterministic and thread-count invariant")
{
    ExperimentPlan plan = small_plan();
    plan.architectures = {Architecture::CentralizedMmse, Architecture::LsfdMr};

    const ResultTable once = run_plan(plan);
    const ResultTable twice = run_plan(plan);
    REQUIRE(rows_identical(once, twice));

    ExperimentPlan threaded = plan;
    threaded.threads = 3;
    REQUIRE(rows_identical(once, run_plan(threaded)));

    REQUIRE(once.rows.size() == 6); // 3 positions x 2 architectures
    for (const ResultRow &row : once.rows)
    {
        REQUIRE(row.per_ta_se.n_elem == 2);
        REQUIRE(row.block_se == Catch::Approx(arma::mean(row.per_ta_se)).epsilon(1e-15));
        REQUIRE(row.wall_s >= 0.0);
    }
}

TEST_CASE("montecarlo - common random numbers decouple the architecture list")
{
    ExperimentPlan solo = small_plan();
    solo.architectures = {Architecture::CentralizedMmse};
    const std::vector<double> alone = run_plan(solo).block_series(Architecture::CentralizedMmse);

    ExperimentPlan mixed = small_plan();
    mixed.architectures = {Architecture::CentralizedMr, Architecture::CentralizedMmse,
                           Architecture::LocalMmseLsfd};
    const std::vector<double> joint = run_plan(mixed).block_series(Architecture::CentralizedMmse);

    REQUIRE(alone.size() == joint.size());
    for (std::size_t i = 0; i < alone.size(); ++i)
        REQUIRE(alone[i] == joint[i]);
}

TEST_CASE("montecarlo - closed-form architecture reproduces a direct evaluation")
{
    ExperimentPlan plan = small_plan();
    plan.architectures = {Architecture::LsfdMr};
    plan.sweep.start_m = 50.0;
    plan.sweep.end_m = 50.0;
    plan.seed = 9;

    const ResultTable table = run_plan(plan);
    REQUIRE(table.rows.size() == 1);

    const GeometrySnapshot snap = build_snapshot(plan.scenario, 50.0);
    Rng rng = Rng::derive(plan.seed, 0, 0x57A7); // the per-position statistics stream
    const ChannelStatistics stats = build_statistics(plan.scenario, snap, rng);
    const IciProfile ici = build_ici_profile(plan.scenario, snap);
    const LsfdClosedForm cf = closed_form_stats(stats, ici);
    const arma::vec full(2, arma::fill::value(plan.scenario.max_power_w));

    for (int k = 0; k < 2; ++k)
    {
        double acc = 0.0;
        for (int s = 0; s < plan.scenario.subcarriers; ++s)
            acc += closed_form_se(cf, k, s, full, WeightMode::Optimal);
        REQUIRE(table.rows[0].per_ta_se(k) ==
                Catch::Approx(acc / plan.scenario.subcarriers).epsilon(1e-12));
    }
}

TEST_CASE("montecarlo - duplicated sweep speeds give identical rows")
{
    ExperimentPlan plan = small_plan();
    plan.architectures = {Architecture::LsfdMr, Architecture::CentralizedMr};
    plan.sweep.kind = SweepSpec::Kind::Speed;
    plan.sweep.start_m = 0.0;
    plan.sweep.end_m = 20.0;
    plan.sweep.step_m = 20.0;
    plan.sweep.speeds_kmh = {300.0, 300.0};

    const ResultTable table = run_plan(plan);
    REQUIRE(table.rows.size() == 4);
    for (std::size_t a = 0; a < 2; ++a)
    {
        const ResultRow &first = table.rows[a];
        const ResultRow &second = table.rows[2 + a];
        REQUIRE(first.architecture == second.architecture);
        REQUIRE(first.block_se == second.block_se);
        REQUIRE(arma::norm(first.per_ta_se - second.per_ta_se, "inf") == 0.0);
    }
}

TEST_CASE("montecarlo - position power follows the scheme")
{
    ExperimentPlan plan = small_plan();

    plan.power_scheme = PowerScheme::Full;
    const PowerResult full = position_power(plan, 10.0, 0);
    REQUIRE(full.converged);
    REQUIRE(full.p.n_elem == 2);
    REQUIRE(full.p.min() == plan.scenario.max_power_w);
    REQUIRE(full.p.max() == plan.scenario.max_power_w);

    plan.power_scheme = PowerScheme::Fractional;
    const PowerResult frac = position_power(plan, 10.0, 0);
    const GeometrySnapshot snap = build_snapshot(plan.scenario, 10.0);
    const ClusterAssignment assign = form_clusters(snap, plan.cluster_theta_db);
    REQUIRE(arma::norm(frac.p - fractional_power(snap, assign, plan.scenario.max_power_w),
                       "inf") == 0.0);
    REQUIRE(frac.p.max() == Catch::Approx(plan.scenario.max_power_w));

    plan.power_scheme = PowerScheme::MaxMin;
    const PowerResult mm = position_power(plan, 10.0, 0);
    REQUIRE(mm.converged);
    REQUIRE(mm.p.max() == Catch::Approx(plan.scenario.max_power_w));
    REQUIRE(!mm.trace.empty());
    REQUIRE(mm.trace.back() <= 1e-4);

    plan.power_scheme = PowerScheme::MaxSum;
    const PowerResult ms = position_power(plan, 10.0, 0);
    REQUIRE(ms.converged);
    REQUIRE(ms.p.max() <= plan.scenario.max_power_w * (1.0 + 1e-12));
}

TEST_CASE("montecarlo - per-position matrix matches the table rows")
{
    ExperimentPlan plan = small_plan();
    plan.architectures = {Architecture::LsfdMr, Architecture::MfMr};

    const arma::mat direct = position_per_ta_se(plan, plan.sweep.start_m, 0);
    REQUIRE(direct.n_rows == 2);
    REQUIRE(direct.n_cols == 2);

    const ResultTable table = run_plan(plan);
    REQUIRE(arma::norm(direct.col(0) - table.rows[0].per_ta_se, "inf") == 0.0);
    REQUIRE(arma::norm(direct.col(1) - table.rows[1].per_ta_se, "inf") == 0.0);
}

TEST_CASE("montecarlo - quantile summary interpolates order statistics")
{
    const CdfSummary two = compute_cdf({3.0, 1.0});
    REQUIRE(two.min == 1.0);
    REQUIRE(two.max == 3.0);
    REQUIRE(two.p50 == Catch::Approx(2.0));
    REQUIRE(two.p5 == Catch::Approx(1.1));
    REQUIRE(two.p95 == Catch::Approx(2.9));
    REQUIRE(two.mean == Catch::Approx(2.0));

    const CdfSummary one = compute_cdf({5.0});
    REQUIRE(one.min == 5.0);
    REQUIRE(one.p5 == 5.0);
    REQUIRE(one.p50 == 5.0);
    REQUIRE(one.p95 == 5.0);
    REQUIRE(one.max == 5.0);

    REQUIRE_THROWS_AS(compute_cdf({}), std::invalid_argument);
}
