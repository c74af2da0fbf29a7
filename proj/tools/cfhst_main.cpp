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

#include "cfhst/clustering.hpp"
#include "cfhst/config_io.hpp"
#include "cfhst/figures.hpp"
#include "cfhst/geometry.hpp"
#include "cfhst/ici.hpp"
#include "cfhst/lsfd.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>

namespace
{

constexpr int exit_ok = 0;       // success
constexpr int exit_config = 1;   // bad configuration, message names the key
constexpr int exit_numerical = 2;// solver/oracle failure
constexpr int exit_io = 3;       // file system failure

// --out flag beats the CFHST_OUT environment variable beats the config file
std::string resolve_out_dir(const std::string &flag, const std::string &config_dir)
{
    if (!flag.empty())
        return flag;
    if (const char *env = std::getenv("CFHST_OUT"); env && *env)
        return env;
    return config_dir;
}

int write_file(const std::filesystem::path &path,
               const std::function<void(std::ostream &)> &writer)
{
    std::ofstream os(path);
    if (!os)
    {
        std::cerr << "I/O error: cannot open '" << path.string() << "'\n";
        return exit_io;
    }
    writer(os);
    os.flush();
    if (!os)
    {
        std::cerr << "I/O error: cannot write '" << path.string() << "'\n";
        return exit_io;
    }
    std::cout << "wrote " << path.string() << "\n";
    return exit_ok;
}

int ensure_dir(const std::string &dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
    {
        std::cerr << "I/O error: cannot create directory '" << dir << "': " << ec.message()
                  << "\n";
        return exit_io;
    }
    return exit_ok;
}

struct CommonFlags
{
    std::string out;
    int threads = 0;          // 0: keep the config's value
    long long seed = -1;      // <0: keep the config's value
};

void apply_flags(cfhst::RunConfig &config, const CommonFlags &flags)
{
    if (flags.threads > 0)
        config.plan.threads = flags.threads;
    if (flags.seed >= 0)
        config.plan.seed = static_cast<std::uint64_t>(flags.seed);
    config.output.directory = resolve_out_dir(flags.out, config.output.directory);
}

int load(const std::string &path, cfhst::RunConfig &config)
{
    try
    {
        config = cfhst::load_config(path);
    }
    catch (const std::runtime_error &err)
    {
        std::cerr << "I/O error: " << err.what() << "\n";
        return exit_io;
    }
    return exit_ok;
}

int do_validate(const std::string &config_path)
{
    cfhst::RunConfig config;
    if (int rc = load(config_path, config))
        return rc;
    cfhst::validate_plan(config.plan);
    for (const auto &[key, value] : cfhst::resolved_entries(config))
        std::cout << key << " = " << value << "\n";
    for (const std::string &warning : config.plan.scenario.validate())
        std::cerr << "warning: " << warning << "\n";
    std::cout << "configuration ok\n";
    return exit_ok;
}

int do_run(const std::string &config_path, const CommonFlags &flags)
{
    cfhst::RunConfig config;
    if (int rc = load(config_path, config))
        return rc;
    apply_flags(config, flags);
    cfhst::validate_plan(config.plan);
    for (const std::string &warning : config.plan.scenario.validate())
        std::cerr << "warning: " << warning << "\n";

    cfhst::ResultTable table;
    try
    {
        table = cfhst::run_plan(config.plan);
    }
    catch (const std::invalid_argument &)
    {
        throw; // configuration problem: let main map it
    }
    catch (const std::exception &err)
    {
        std::cerr << "numerical error: " << err.what() << "\n";
        return exit_numerical;
    }

    const std::string &dir = config.output.directory;
    if (int rc = ensure_dir(dir))
        return rc;
    std::filesystem::path base(dir);
    if (int rc = write_file(base / "results.csv",
                            [&](std::ostream &os) { cfhst::write_results_csv(os, table); }))
        return rc;
    if (int rc = write_file(base / "summary.json", [&](std::ostream &os) {
            cfhst::write_summary_json(os, config, table);
        }))
        return rc;

    if (std::isfinite(config.plan.cluster_theta_db))
    {
        cfhst::GeometrySnapshot snap =
            cfhst::build_snapshot(config.plan.scenario, config.plan.sweep.start_m);
        cfhst::ClusterAssignment assign =
            cfhst::form_clusters(snap, config.plan.cluster_theta_db);
        if (int rc = write_file(base / "clusters.json", [&](std::ostream &os) {
                os << cfhst::cluster_json(assign) << "\n";
            }))
            return rc;
    }
    if (config.plan.power_scheme == cfhst::PowerScheme::MaxMin ||
        config.plan.power_scheme == cfhst::PowerScheme::MaxSum)
    {
        cfhst::PowerResult power;
        try
        {
            power = cfhst::position_power(config.plan, config.plan.sweep.start_m, 0);
        }
        catch (const std::exception &err)
        {
            std::cerr << "numerical error: " << err.what() << "\n";
            return exit_numerical;
        }
        if (!power.converged)
            std::cerr << "warning: power solver hit its iteration cap\n";
        if (int rc = write_file(base / "power_trace.csv", [&](std::ostream &os) {
                cfhst::write_power_trace_csv(os, cfhst::to_string(config.plan.power_scheme),
                                             power);
            }))
            return rc;
    }
    return exit_ok;
}

int do_figures(const std::string &which, const std::string &scale_name,
               const CommonFlags &flags)
{
    cfhst::FigureScale scale = cfhst::parse_figure_scale(scale_name);
    std::vector<int> wanted;
    if (which == "all")
        wanted = cfhst::figure_numbers();
    else
    {
        bool known = false;
        for (int n : cfhst::figure_numbers())
            if (which == "fig" + std::to_string(n))
            {
                wanted = {n};
                known = true;
            }
        if (!known)
            throw std::invalid_argument("unknown figure '" + which +
                                        "' (fig3..fig11 or 'all')");
    }

    std::string dir = resolve_out_dir(flags.out, "out");
    if (int rc = ensure_dir(dir))
        return rc;
    std::uint64_t seed = flags.seed >= 0 ? static_cast<std::uint64_t>(flags.seed) : 1;
    int threads = flags.threads > 0 ? flags.threads : 1;
    for (int n : wanted)
    {
        cfhst::FigureTable table;
        try
        {
            table = cfhst::make_figure(n, scale, seed, threads);
        }
        catch (const std::invalid_argument &)
        {
            throw;
        }
        catch (const std::exception &err)
        {
            std::cerr << "numerical error in fig" << n << ": " << err.what() << "\n";
            return exit_numerical;
        }
        if (int rc = write_file(std::filesystem::path(dir) / (table.name + ".csv"),
                                [&](std::ostream &os) { cfhst::write_figure_csv(os, table); }))
            return rc;
    }
    return exit_ok;
}

// The oracle suites re-derive module outputs through independent routes:
// exact DFT summation, Parseval, Monte-Carlo second moments, and a
// closed-form vs simulated SINR comparison on a small deployment.
int do_oracle(std::uint64_t seed)
{
    using namespace cfhst;
    bool all_ok = true;
    auto report = [&](const char *name, bool ok, const std::string &detail) {
        std::printf("%-4s %-28s %s\n", ok ? "ok" : "FAIL", name, detail.c_str());
        all_ok = all_ok && ok;
    };
    char detail[128];

    {
        Rng rng(seed);
        double worst_dft = 0.0, worst_parseval = 0.0;
        for (int sub : {8, 16, 64})
            for (int trial = 0; trial < 200; trial++)
            {
                double dfo = rng.uniform() - 0.5;
                std::vector<std::complex<double>> oracle = dft_oracle_los(dfo, sub);
                double power = 0.0;
                for (int d = 0; d < sub; d++)
                {
                    worst_dft = std::max(worst_dft,
                                         std::abs(oracle[d] - ici_los(d, dfo, sub)));
                    power += std::norm(ici_los(d, dfo, sub));
                }
                worst_parseval = std::max(worst_parseval, std::abs(power - 1.0));
            }
        std::snprintf(detail, sizeof(detail), "max |closed - dft| = %.3g", worst_dft);
        report("los-dft", worst_dft <= 1e-10, detail);
        std::snprintf(detail, sizeof(detail), "max |sum - 1| = %.3g", worst_parseval);
        report("los-parseval", worst_parseval <= 1e-12, detail);
    }

    {
        const double dfo_scale = 0.0335;
        const int sub = 64;
        std::vector<double> moment = dft_oracle_nlos(dfo_scale, sub, 128, 100000, seed);
        double worst = 0.0;
        for (int off : {1, 2, 3})
        {
            double want = ici_nlos(off, dfo_scale) * ici_nlos(off, dfo_scale);
            worst = std::max(worst, std::abs(moment[off] / want - 1.0));
        }
        std::snprintf(detail, sizeof(detail), "max moment error = %.2f%%", 100.0 * worst);
        report("nlos-moment", worst <= 0.05, detail);
    }

    {
        ScenarioConfig cfg;
        cfg.num_aps = 4;
        cfg.antennas_per_ap = 2;
        cfg.num_tas = 2;
        GeometrySnapshot snap = build_snapshot(cfg, 0.0);
        Rng rng = Rng::derive(seed, 7);
        ChannelStatistics stats = build_statistics(cfg, snap, rng);
        IciProfile ici = build_ici_profile(cfg, snap);
        LsfdClosedForm cf = closed_form_stats(stats, ici);
        arma::vec powers(cfg.num_tas, arma::fill::value(cfg.max_power_w));
        GenericMoments mom =
            generic_lsfd_mc(stats, ici, LocalCombinerKind::Mr, powers, 20000, seed);
        double worst = 0.0;
        for (int k = 0; k < cfg.num_tas; k++)
            for (int s = 0; s < cfg.subcarriers; s++)
            {
                for (const arma::cx_vec &w :
                     {lsfd_weights(cf, k, s, powers), equal_weights(cf, k)})
                {
                    double closed = closed_form_sinr(cf, k, s, w, powers);
                    double sim = moments_sinr(mom, k, s, powers(k), w);
                    worst = std::max(worst, std::abs(sim / closed - 1.0));
                }
            }
        std::snprintf(detail, sizeof(detail), "max SINR mismatch = %.2f%%", 100.0 * worst);
        report("closed-form-vs-mc", worst <= 0.05, detail);
    }

    return all_ok ? exit_ok : exit_numerical;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"cfhst - cell-free massive MIMO-OFDM link-level simulator for high-speed rail"};
    app.require_subcommand(1);

    std::string config_path, figure_name, scale_name = "desk";
    CommonFlags flags;
    long long oracle_seed = 1;

    CLI::App *run = app.add_subcommand("run", "run the experiment plan of a config file");
    run->add_option("config", config_path, "config file (*.cfg INI style or *.json)")
        ->required();
    run->add_option("--out", flags.out, "output directory (beats CFHST_OUT and the config)");
    run->add_option("--threads", flags.threads, "worker thread cap");
    run->add_option("--seed", flags.seed, "seed override");

    CLI::App *validate =
        app.add_subcommand("validate", "check a config file and echo the resolved parameters");
    validate->add_option("config", config_path, "config file")->required();

    CLI::App *oracle =
        app.add_subcommand("oracle", "run the independent numerical cross-check suites");
    oracle->add_option("--seed", oracle_seed, "oracle seed");

    CLI::App *figures = app.add_subcommand("figures", "write plot-ready data files");
    figures->add_option("figure", figure_name, "fig3..fig11 or 'all'")->required();
    figures->add_option("--scale", scale_name, "desk (thinned) or paper (full)")
        ->check(CLI::IsMember({"desk", "paper"}));
    figures->add_option("--out", flags.out, "output directory (beats CFHST_OUT)");
    figures->add_option("--threads", flags.threads, "worker thread cap");
    figures->add_option("--seed", flags.seed, "seed override");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &err)
    {
        int rc = app.exit(err);
        return rc == 0 ? exit_ok : exit_config;
    }

    try
    {
        if (*run)
            return do_run(config_path, flags);
        if (*validate)
            return do_validate(config_path);
        if (*oracle)
            return do_oracle(static_cast<std::uint64_t>(oracle_seed));
        if (*figures)
            return do_figures(figure_name, scale_name, flags);
    }
    catch (const std::invalid_argument &err)
    {
        std::cerr << "config error: " << err.what() << "\n";
        return exit_config;
    }
    catch (const std::exception &err)
    {
        std::cerr << "error: " << err.what() << "\n";
        return exit_numerical;
    }
    return exit_config;
}
