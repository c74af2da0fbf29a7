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

#include "cfhst/combining.hpp"
#include "cfhst/geometry.hpp"
#include "cfhst/ici.hpp"
#include "cfhst/lsfd.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>

namespace cfhst
{

namespace
{

const std::map<std::string, Architecture> arch_names = {
    {"centralized-mmse", Architecture::CentralizedMmse},
    {"centralized-mr", Architecture::CentralizedMr},
    {"local-mmse-lsfd", Architecture::LocalMmseLsfd},
    {"local-mr-lsfd-mc", Architecture::LocalMrLsfdMc},
    {"lsfd-mr", Architecture::LsfdMr},
    {"mf-mr", Architecture::MfMr},
    {"smallcell-mmse", Architecture::SmallcellMmse},
    {"smallcell-mr", Architecture::SmallcellMr},
    {"colocated-mmse", Architecture::ColocatedMmse},
    {"colocated-mr", Architecture::ColocatedMr},
};

// RNG stream tags so no two purposes collide
constexpr std::uint64_t tag_stats = 0x57A7;
constexpr std::uint64_t tag_colocated = 0xC0C0;
constexpr std::uint64_t tag_trial = 0xD0;

} // namespace

Architecture parse_architecture(const std::string &name)
{
    auto it = arch_names.find(name);
    if (it == arch_names.end())
        throw std::invalid_argument("unknown architecture '" + name + "'");
    return it->second;
}

std::string to_string(Architecture arch)
{
    for (const auto &[name, value] : arch_names)
        if (value == arch)
            return name;
    return "?";
}

bool architecture_uses_trials(Architecture arch)
{
    return arch != Architecture::LsfdMr && arch != Architecture::MfMr;
}

PowerScheme parse_power_scheme(const std::string &name)
{
    if (name == "full")
        return PowerScheme::Full;
    if (name == "fractional")
        return PowerScheme::Fractional;
    if (name == "maxmin")
        return PowerScheme::MaxMin;
    if (name == "maxsum")
        return PowerScheme::MaxSum;
    throw std::invalid_argument("unknown power scheme '" + name + "'");
}

std::string to_string(PowerScheme scheme)
{
    switch (scheme)
    {
    case PowerScheme::Full: return "full";
    case PowerScheme::Fractional: return "fractional";
    case PowerScheme::MaxMin: return "maxmin";
    case PowerScheme::MaxSum: return "maxsum";
    }
    return "?";
}

namespace
{

bool any_of_archs(const ExperimentPlan &plan, std::initializer_list<Architecture> set)
{
    for (Architecture a : plan.architectures)
        if (std::find(set.begin(), set.end(), a) != set.end())
            return true;
    return false;
}

// Frozen full-power second-layer weights for every (ta, s).
std::vector<arma::cx_vec> frozen_weights(const LsfdClosedForm &cf, const ExperimentPlan &plan,
                                         WeightMode mode)
{
    const int K = cf.num_tas, M = cf.subcarriers;
    arma::vec full(K, arma::fill::value(plan.scenario.max_power_w));
    std::vector<arma::cx_vec> w(static_cast<std::size_t>(K) * M);
    for (int k = 0; k < K; k++)
        for (int s = 0; s < M; s++)
            w[static_cast<std::size_t>(k) * M + s] =
                mode == WeightMode::Equal
                    ? equal_weights(cf, k)
                    : lsfd_weights(cf, k, s, full, plan.weights_drop_serving_offset);
    return w;
}

PowerResult solve_powers(const ExperimentPlan &plan, const GeometrySnapshot &snap,
                         const ClusterAssignment &assign, const LsfdClosedForm &cf,
                         const std::vector<arma::cx_vec> &weights)
{
    const int K = cf.num_tas, M = cf.subcarriers;
    const double P = plan.scenario.max_power_w;
    PowerResult res;
    res.converged = true;
    switch (plan.power_scheme)
    {
    case PowerScheme::Full:
        res.p = arma::vec(K, arma::fill::value(P));
        return res;
    case PowerScheme::Fractional:
        res.p = fractional_power(snap, assign, P);
        return res;
    default:
        break;
    }
    // optimize at the mid-block subcarrier, apply across the block
    const int mid = M / 2;
    std::vector<GenericSinrCoeffs> coeffs;
    coeffs.reserve(K);
    for (int k = 0; k < K; k++)
        coeffs.push_back(
            extract_generic_coeffs(cf, k, mid, weights[static_cast<std::size_t>(k) * M + mid]));
    if (plan.power_scheme == PowerScheme::MaxMin)
        return maxmin_power(coeffs, P);
    return maxsum_power(coeffs, P);
}

// everything every architecture at one train offset shares
struct PositionSetup
{
    GeometrySnapshot snap;
    ChannelStatistics stats;
    IciProfile ici;
    ClusterAssignment assign;
    LsfdClosedForm cf;
    std::vector<arma::cx_vec> opt_weights;
    PowerResult power;
};

PositionSetup build_position_setup(const ExperimentPlan &plan, double train_offset_m,
                                   std::size_t position_index)
{
    const ScenarioConfig &cfg = plan.scenario;
    PositionSetup ctx;
    ctx.snap = build_snapshot(cfg, train_offset_m);
    Rng stats_rng = Rng::derive(plan.seed, position_index, tag_stats);
    ctx.stats = build_statistics(cfg, ctx.snap, stats_rng);
    ctx.ici = build_ici_profile(cfg, ctx.snap);
    ctx.assign = form_clusters(ctx.snap, plan.cluster_theta_db);
    const bool masked = std::isfinite(plan.cluster_theta_db);
    ctx.cf = closed_form_stats(ctx.stats, ctx.ici, masked ? &ctx.assign.serve : nullptr);
    ctx.opt_weights = frozen_weights(ctx.cf, plan, WeightMode::Optimal);
    ctx.power = solve_powers(plan, ctx.snap, ctx.assign, ctx.cf, ctx.opt_weights);
    return ctx;
}

struct ErgodicAccumulator
{
    arma::mat se;  // num_tas x subcarriers, running sum of log2(1+sinr)
    void init(int num_tas, int subcarriers) { se.zeros(num_tas, subcarriers); }
    void add(int ta, int s, double sinr) { se(ta, s) += std::log2(1.0 + sinr); }
};

} // namespace

PowerResult position_power(const ExperimentPlan &plan, double train_offset_m,
                           std::size_t position_index)
{
    return build_position_setup(plan, train_offset_m, position_index).power;
}

arma::mat position_per_ta_se(const ExperimentPlan &plan, double train_offset_m,
                             std::size_t position_index)
{
    const ScenarioConfig &cfg = plan.scenario;
    const int K = cfg.num_tas, M = cfg.subcarriers;
    const std::size_t A = plan.architectures.size();

    PositionSetup ctx = build_position_setup(plan, train_offset_m, position_index);
    const ChannelStatistics &stats = ctx.stats;
    const IciProfile &ici = ctx.ici;
    const LsfdClosedForm &cf = ctx.cf;
    const std::vector<arma::cx_vec> &opt_weights = ctx.opt_weights;
    const arma::vec &powers = ctx.power.p;

    // co-located baseline statistics share the per-position stream family
    const bool with_coloc =
        any_of_archs(plan, {Architecture::ColocatedMmse, Architecture::ColocatedMr});
    ScenarioConfig co_cfg;
    ChannelStatistics co_stats;
    IciProfile co_ici;
    if (with_coloc)
    {
        co_cfg = colocated_equivalent(cfg);
        GeometrySnapshot co_snap = build_snapshot(co_cfg, train_offset_m);
        Rng co_rng = Rng::derive(plan.seed, position_index, tag_colocated);
        co_stats = build_statistics(co_cfg, co_snap, co_rng);
        co_ici = build_ici_profile(co_cfg, co_snap);
    }

    const bool with_cf_real = any_of_archs(plan, {Architecture::CentralizedMmse,
                                                  Architecture::CentralizedMr,
                                                  Architecture::SmallcellMmse,
                                                  Architecture::SmallcellMr,
                                                  Architecture::LocalMmseLsfd,
                                                  Architecture::LocalMrLsfdMc});
    const bool with_local_mmse = any_of_archs(plan, {Architecture::LocalMmseLsfd});
    const bool with_local_mr = any_of_archs(plan, {Architecture::LocalMrLsfdMc});
    const bool with_smallcell =
        any_of_archs(plan, {Architecture::SmallcellMmse, Architecture::SmallcellMr});
    const bool with_centralized =
        any_of_archs(plan, {Architecture::CentralizedMmse, Architecture::CentralizedMr});

    const bool with_cen_mmse = any_of_archs(plan, {Architecture::CentralizedMmse});
    const bool with_cen_mr = any_of_archs(plan, {Architecture::CentralizedMr});
    const bool with_sc_mmse = any_of_archs(plan, {Architecture::SmallcellMmse});
    const bool with_sc_mr = any_of_archs(plan, {Architecture::SmallcellMr});
    const bool with_co_mmse = any_of_archs(plan, {Architecture::ColocatedMmse});
    const bool with_co_mr = any_of_archs(plan, {Architecture::ColocatedMr});

    std::map<Architecture, ErgodicAccumulator> ergodic;
    if (with_cen_mmse)
        ergodic[Architecture::CentralizedMmse].init(K, M);
    if (with_cen_mr)
        ergodic[Architecture::CentralizedMr].init(K, M);
    if (with_co_mmse)
        ergodic[Architecture::ColocatedMmse].init(K, M);
    if (with_co_mr)
        ergodic[Architecture::ColocatedMr].init(K, M);
    arma::cube smallcell_mmse_se, smallcell_mr_se; // (K, M, L) per-AP running means
    if (with_smallcell)
    {
        smallcell_mmse_se.zeros(K, M, cfg.num_aps);
        smallcell_mr_se.zeros(K, M, cfg.num_aps);
    }

    LsfdMomentAccumulator mmse_moments(K, cfg.num_aps, M, stats.noise_power);
    LsfdMomentAccumulator mr_moments(K, cfg.num_aps, M, stats.noise_power);

    const int trials = std::max(1, plan.trials);
    const bool needs_trials = with_cf_real || with_coloc;
    for (int t = 0; needs_trials && t < trials; t++)
    {
        Rng rng = Rng::derive(plan.seed, position_index, static_cast<std::uint64_t>(t), tag_trial);
        const arma::uword dim = static_cast<arma::uword>(cfg.num_aps) * cfg.antennas_per_ap;
        arma::cx_mat scatter = rng.cnormal_mat(dim, K);
        arma::cx_mat pilot = rng.cnormal_mat(dim, K);

        if (with_cf_real)
        {
            ChannelRealization real = realization_from_normals(stats, scatter, pilot);
            if (with_centralized)
            {
                CentralizedEvaluator cen(stats, ici, real, powers);
                for (int s = 0; s < M; s++)
                    for (int k = 0; k < K; k++)
                    {
                        if (with_cen_mmse)
                            ergodic[Architecture::CentralizedMmse].add(k, s, cen.mmse_sinr(k, s));
                        if (with_cen_mr)
                            ergodic[Architecture::CentralizedMr].add(
                                k, s, cen.sinr(k, s, cen.mr_combiner(k)));
                    }
            }
            if (with_smallcell || with_local_mmse || with_local_mr)
            {
                LocalEvaluator loc(stats, ici, real, powers);
                if (with_local_mmse)
                    mmse_moments.accumulate(loc, LocalCombinerKind::Mmse, powers);
                if (with_local_mr)
                    mr_moments.accumulate(loc, LocalCombinerKind::Mr, powers);
                if (with_smallcell)
                    for (int l = 0; l < cfg.num_aps; l++)
                        for (int s = 0; s < M; s++)
                            for (int k = 0; k < K; k++)
                            {
                                if (with_sc_mmse)
                                    smallcell_mmse_se(k, s, l) +=
                                        std::log2(1.0 + loc.percell_mmse_sinr(k, l, s));
                                if (with_sc_mr)
                                    smallcell_mr_se(k, s, l) += std::log2(
                                        1.0 + loc.percell_sinr(k, l, s, loc.mr_combiner(k, l)));
                            }
            }
        }
        if (with_coloc)
        {
            ChannelRealization real = realization_from_normals(co_stats, scatter, pilot);
            CentralizedEvaluator cen(co_stats, co_ici, real, powers);
            for (int s = 0; s < M; s++)
                for (int k = 0; k < K; k++)
                {
                    if (with_co_mmse)
                        ergodic[Architecture::ColocatedMmse].add(k, s, cen.mmse_sinr(k, s));
                    if (with_co_mr)
                        ergodic[Architecture::ColocatedMr].add(k, s,
                                                               cen.sinr(k, s, cen.mr_combiner(k)));
                }
        }
    }

    arma::mat out(K, A);
    for (std::size_t a = 0; a < A; a++)
    {
        Architecture arch = plan.architectures[a];
        switch (arch)
        {
        case Architecture::LsfdMr:
        case Architecture::MfMr:
        {
            std::vector<arma::cx_vec> weights =
                arch == Architecture::LsfdMr ? opt_weights
                                             : frozen_weights(cf, plan, WeightMode::Equal);
            for (int k = 0; k < K; k++)
            {
                double acc = 0.0;
                for (int s = 0; s < M; s++)
                    acc += std::log2(1.0 + closed_form_sinr(
                                               cf, k, s,
                                               weights[static_cast<std::size_t>(k) * M + s],
                                               powers));
                out(k, a) = acc / M;
            }
            break;
        }
        case Architecture::LocalMmseLsfd:
        case Architecture::LocalMrLsfdMc:
        {
            GenericMoments mom = (arch == Architecture::LocalMmseLsfd ? mmse_moments : mr_moments)
                                     .finalize();
            for (int k = 0; k < K; k++)
            {
                double acc = 0.0;
                for (int s = 0; s < M; s++)
                    acc += moments_se(mom, k, s, powers(k), WeightMode::Optimal);
                out(k, a) = acc / M;
            }
            break;
        }
        case Architecture::SmallcellMmse:
        case Architecture::SmallcellMr:
        {
            const arma::cube &table =
                arch == Architecture::SmallcellMmse ? smallcell_mmse_se : smallcell_mr_se;
            for (int k = 0; k < K; k++)
            {
                double acc = 0.0;
                for (int s = 0; s < M; s++)
                {
                    double best = -1.0;
                    for (int l = 0; l < cfg.num_aps; l++)
                        if (table(k, s, l) > best)
                            best = table(k, s, l); // strict >: ties keep lowest index
                    acc += best / trials;
                }
                out(k, a) = acc / M;
            }
            break;
        }
        default:
        {
            const arma::mat &se = ergodic.at(arch).se;
            for (int k = 0; k < K; k++)
                out(k, a) = arma::mean(se.row(k)) / trials;
            break;
        }
        }
    }
    return out;
}

void validate_plan(const ExperimentPlan &plan)
{
    plan.scenario.validate(); // hard errors throw; warnings are the caller's to print
    if (plan.trials < 1)
        throw std::invalid_argument("ExperimentPlan.trials: must be >= 1");
    if (plan.architectures.empty())
        throw std::invalid_argument("ExperimentPlan.architectures: must not be empty");
    if (plan.sweep.kind == SweepSpec::Kind::Speed && plan.sweep.speeds_kmh.empty())
        throw std::invalid_argument("ExperimentPlan.sweep: speed sweep needs speeds_kmh");
    if (plan.sweep.step_m <= 0.0)
        throw std::invalid_argument("ExperimentPlan.sweep: step_m must be > 0");
    if (plan.sweep.end_m < plan.sweep.start_m)
        throw std::invalid_argument("ExperimentPlan.sweep: end_m must be >= start_m");
}

ResultTable run_plan(const ExperimentPlan &plan)
{
    validate_plan(plan);

    // train offsets of the inner position grid
    std::vector<double> offsets;
    {
        auto count = static_cast<std::size_t>(
                         std::floor((plan.sweep.end_m - plan.sweep.start_m) / plan.sweep.step_m +
                                    1e-9)) +
                     1;
        for (std::size_t i = 0; i < count; i++)
            offsets.push_back(plan.sweep.start_m + static_cast<double>(i) * plan.sweep.step_m);
    }

    const std::size_t A = plan.architectures.size();
    ResultTable table;
    table.sweep_kind = plan.sweep.kind;

    std::vector<double> wall(offsets.size(), 0.0);
    auto run_positions = [&](const ExperimentPlan &p) {
        std::vector<arma::mat> results(offsets.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t j = next.fetch_add(1); j < offsets.size(); j = next.fetch_add(1))
            {
                auto t0 = std::chrono::steady_clock::now();
                results[j] = position_per_ta_se(p, offsets[j], j);
                wall[j] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                              .count();
            }
        };
        int n_threads = std::max(1, std::min<int>(p.threads, static_cast<int>(offsets.size())));
        if (n_threads == 1)
            worker();
        else
        {
            std::vector<std::thread> pool;
            for (int t = 0; t < n_threads; t++)
                pool.emplace_back(worker);
            for (auto &th : pool)
                th.join();
        }
        return results;
    };

    if (plan.sweep.kind == SweepSpec::Kind::Position)
    {
        std::vector<arma::mat> results = run_positions(plan);
        for (std::size_t j = 0; j < offsets.size(); j++)
            for (std::size_t a = 0; a < A; a++)
            {
                ResultRow row;
                row.sweep_value = offsets[j];
                row.architecture = plan.architectures[a];
                row.per_ta_se = results[j].col(a);
                row.block_se = arma::mean(row.per_ta_se);
                row.wall_s = wall[j];
                table.rows.push_back(std::move(row));
            }
    }
    else
    {
        for (double speed : plan.sweep.speeds_kmh)
        {
            ExperimentPlan sub = plan;
            sub.scenario.velocity_mps = speed / 3.6;
            std::vector<arma::mat> results = run_positions(sub);
            double speed_wall = 0.0;
            for (double w : wall)
                speed_wall += w;
            for (std::size_t a = 0; a < A; a++)
            {
                arma::vec avg(plan.scenario.num_tas, arma::fill::zeros);
                for (const arma::mat &m : results)
                    avg += m.col(a);
                avg /= static_cast<double>(results.size());
                ResultRow row;
                row.sweep_value = speed;
                row.architecture = plan.architectures[a];
                row.per_ta_se = avg;
                row.block_se = arma::mean(avg);
                row.wall_s = speed_wall;
                table.rows.push_back(std::move(row));
            }
        }
    }
    return table;
}

std::vector<double> ResultTable::block_series(Architecture arch) const
{
    std::vector<double> out;
    for (const ResultRow &row : rows)
        if (row.architecture == arch)
            out.push_back(row.block_se);
    return out;
}

CdfSummary compute_cdf(std::vector<double> values)
{
    if (values.empty())
        throw std::invalid_argument("compute_cdf: empty input");
    std::sort(values.begin(), values.end());
    auto quantile = [&](double q) {
        double idx = q * static_cast<double>(values.size() - 1);
        auto lo = static_cast<std::size_t>(std::floor(idx));
        auto hi = static_cast<std::size_t>(std::ceil(idx));
        double frac = idx - static_cast<double>(lo);
        return values[lo] * (1.0 - frac) + values[hi] * frac;
    };
    CdfSummary s;
    s.min = values.front();
    s.p5 = quantile(0.05);
    s.p50 = quantile(0.50);
    s.p95 = quantile(0.95);
    s.max = values.back();
    s.mean = 0.0;
    for (double v : values)
        s.mean += v;
    s.mean /= static_cast<double>(values.size());
    return s;
}

} // namespace cfhst
