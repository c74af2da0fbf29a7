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

#include "cfhst/figures.hpp"

#include "cfhst/montecarlo.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace cfhst
{

namespace
{

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

ExperimentPlan base_plan(FigureScale scale, std::uint64_t seed, int threads)
{
    ExperimentPlan plan;
    plan.seed = seed;
    plan.threads = threads;
    plan.trials = scale == FigureScale::Paper ? 500 : 50;
    plan.sweep.kind = SweepSpec::Kind::Position;
    plan.sweep.start_m = 0.0;
    plan.sweep.end_m = 800.0;
    plan.sweep.step_m = scale == FigureScale::Paper ? 2.0 : 20.0;
    return plan;
}

std::vector<double> default_speeds() { return {100, 200, 300, 400, 500, 600}; }

double series_mean(const std::vector<double> &v)
{
    double acc = 0.0;
    for (double x : v)
        acc += x;
    return acc / static_cast<double>(v.size());
}

// fig3/fig4: SE against position for one architecture trio
FigureTable position_figure(const char *name, std::vector<Architecture> archs,
                            FigureScale scale, std::uint64_t seed, int threads)
{
    ExperimentPlan plan = base_plan(scale, seed, threads);
    plan.architectures = std::move(archs);
    ResultTable table = run_plan(plan);
    FigureTable out{name, {"position_m", "architecture", "block_se"}, {}};
    for (const ResultRow &row : table.rows)
        out.rows.push_back({fmt(row.sweep_value), to_string(row.architecture),
                            fmt(row.block_se)});
    return out;
}

FigureTable fig5(FigureScale scale, std::uint64_t seed, int threads)
{
    ExperimentPlan plan = base_plan(scale, seed, threads);
    plan.architectures = {Architecture::LsfdMr, Architecture::SmallcellMr,
                          Architecture::ColocatedMmse};
    FigureTable out{"fig5", {"num_aps", "architecture", "avg_se"}, {}};
    for (int aps : {10, 20, 30, 40})
    {
        plan.scenario.num_aps = aps;
        ResultTable table = run_plan(plan);
        for (Architecture arch : plan.architectures)
            out.rows.push_back({std::to_string(aps), to_string(arch),
                                fmt(series_mean(table.block_series(arch)))});
    }
    return out;
}

FigureTable fig6(FigureScale scale, std::uint64_t seed, int threads)
{
    ExperimentPlan plan = base_plan(scale, seed, threads);
    plan.architectures = {Architecture::LsfdMr};
    FigureTable out{"fig6", {"num_aps", "antennas_per_ap", "avg_se"}, {}};
    for (auto [aps, ants] : {std::pair{40, 1}, {20, 2}, {10, 4}, {5, 8}})
    {
        plan.scenario.num_aps = aps;
        plan.scenario.antennas_per_ap = ants;
        ResultTable table = run_plan(plan);
        out.rows.push_back({std::to_string(aps), std::to_string(ants),
                            fmt(series_mean(table.block_series(Architecture::LsfdMr)))});
    }
    return out;
}

FigureTable fig7(FigureScale scale, std::uint64_t seed, int threads)
{
    ExperimentPlan plan = base_plan(scale, seed, threads);
    plan.scenario.num_aps = 20;
    plan.architectures = {Architecture::LsfdMr};
    plan.sweep.end_m = 0.0; // the initial train position only
    FigureTable out{"fig7", {"subcarriers", "speed_kmh", "se"}, {}};
    for (int sub : {2, 4, 8, 16, 32, 64})
        for (double speed : {0.0, 100.0, 300.0, 600.0})
        {
            plan.scenario.subcarriers = sub;
            plan.scenario.velocity_mps = speed / 3.6;
            ResultTable table = run_plan(plan);
            out.rows.push_back({std::to_string(sub), fmt(speed),
                                fmt(table.rows.front().block_se)});
        }
    return out;
}

FigureTable fig8(FigureScale scale, std::uint64_t seed, int threads)
{
    ExperimentPlan plan = base_plan(scale, seed, threads);
    plan.scenario.num_aps = 20;
    plan.architectures = {Architecture::LsfdMr};
    plan.sweep.kind = SweepSpec::Kind::Speed;
    plan.sweep.speeds_kmh = default_speeds();
    FigureTable out{"fig8", {"speed_kmh", "rician_k_db", "correlated", "avg_se"}, {}};
    for (double kdb : {-10.0, 30.0})
        for (bool corr : {true, false})
        {
            plan.scenario.rician_k_db = kdb;
            plan.scenario.correlated = corr;
            ResultTable table = run_plan(plan);
            for (const ResultRow &row : table.rows)
                out.rows.push_back({fmt(row.sweep_value), fmt(kdb),
                                    corr ? "true" : "false", fmt(row.block_se)});
        }
    return out;
}

FigureTable fig9(FigureScale scale, std::uint64_t seed, int threads)
{
    ExperimentPlan plan = base_plan(scale, seed, threads);
    plan.scenario.num_aps = 20;
    plan.architectures = {Architecture::LsfdMr};
    plan.sweep.kind = SweepSpec::Kind::Speed;
    plan.sweep.speeds_kmh = default_speeds();
    FigureTable out{"fig9", {"speed_kmh", "num_tas", "antennas_per_ap", "avg_se"}, {}};
    for (auto [tas, ants] : {std::pair{8, 4}, {6, 4}, {8, 6}})
    {
        plan.scenario.num_tas = tas;
        plan.scenario.antennas_per_ap = ants;
        ResultTable table = run_plan(plan);
        for (const ResultRow &row : table.rows)
            out.rows.push_back({fmt(row.sweep_value), std::to_string(tas),
                                std::to_string(ants), fmt(row.block_se)});
    }
    return out;
}

FigureTable fig10(FigureScale scale, std::uint64_t seed, int threads)
{
    ExperimentPlan plan = base_plan(scale, seed, threads);
    plan.scenario.num_aps = 20;
    plan.scenario.track_offset_m = 20.0;
    plan.architectures = {Architecture::LsfdMr};
    plan.sweep.kind = SweepSpec::Kind::Speed;
    plan.sweep.speeds_kmh = default_speeds();
    FigureTable out{"fig10", {"speed_kmh", "theta_db", "power_scheme", "worst_ta_avg_se"}, {}};
    for (double theta : {0.0, 5.0, 10.0})
        for (PowerScheme scheme : {PowerScheme::Full, PowerScheme::Fractional})
        {
            plan.cluster_theta_db = theta;
            plan.power_scheme = scheme;
            ResultTable table = run_plan(plan);
            for (const ResultRow &row : table.rows)
                out.rows.push_back({fmt(row.sweep_value), fmt(theta), to_string(scheme),
                                    fmt(row.per_ta_se.min())});
        }
    return out;
}

FigureTable fig11(FigureScale scale, std::uint64_t seed, int threads)
{
    ExperimentPlan plan = base_plan(scale, seed, threads);
    plan.scenario.num_aps = 20;
    plan.scenario.track_offset_m = 20.0;
    plan.architectures = {Architecture::LsfdMr};
    plan.cluster_theta_db = 10.0;
    FigureTable out{"fig11", {"position_m", "power_scheme", "sum_se", "min_se"}, {}};
    for (int k = 0; k < plan.scenario.num_tas; k++)
        out.columns.push_back("se_ta" + std::to_string(k));
    for (PowerScheme scheme :
         {PowerScheme::Full, PowerScheme::Fractional, PowerScheme::MaxMin, PowerScheme::MaxSum})
    {
        plan.power_scheme = scheme;
        ResultTable table = run_plan(plan);
        for (const ResultRow &row : table.rows)
        {
            std::vector<std::string> cells = {fmt(row.sweep_value), to_string(scheme),
                                              fmt(arma::accu(row.per_ta_se)),
                                              fmt(row.per_ta_se.min())};
            for (arma::uword k = 0; k < row.per_ta_se.n_elem; k++)
                cells.push_back(fmt(row.per_ta_se(k)));
            out.rows.push_back(std::move(cells));
        }
    }
    return out;
}

} // namespace

FigureScale parse_figure_scale(const std::string &name)
{
    if (name == "desk")
        return FigureScale::Desk;
    if (name == "paper")
        return FigureScale::Paper;
    throw std::invalid_argument("unknown figure scale '" + name + "'");
}

std::vector<int> figure_numbers() { return {3, 4, 5, 6, 7, 8, 9, 10, 11}; }

FigureTable make_figure(int number, FigureScale scale, std::uint64_t seed, int threads)
{
    switch (number)
    {
    case 3:
        return position_figure("fig3",
                               {Architecture::CentralizedMmse, Architecture::LocalMmseLsfd,
                                Architecture::SmallcellMmse},
                               scale, seed, threads);
    case 4:
        return position_figure("fig4",
                               {Architecture::LsfdMr, Architecture::SmallcellMr,
                                Architecture::ColocatedMmse},
                               scale, seed, threads);
    case 5:
        return fig5(scale, seed, threads);
    case 6:
        return fig6(scale, seed, threads);
    case 7:
        return fig7(scale, seed, threads);
    case 8:
        return fig8(scale, seed, threads);
    case 9:
        return fig9(scale, seed, threads);
    case 10:
        return fig10(scale, seed, threads);
    case 11:
        return fig11(scale, seed, threads);
    default:
        throw std::invalid_argument("unknown figure number " + std::to_string(number));
    }
}

void write_figure_csv(std::ostream &os, const FigureTable &table)
{
    for (std::size_t c = 0; c < table.columns.size(); c++)
        os << (c ? "," : "") << table.columns[c];
    os << "\n";
    for (const auto &row : table.rows)
    {
        for (std::size_t c = 0; c < row.size(); c++)
            os << (c ? "," : "") << row[c];
        os << "\n";
    }
}

} // namespace cfhst
