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
#include "cfhst/common.hpp"
#include "cfhst/geometry.hpp"
#include "cfhst/ici.hpp"
#include "cfhst/montecarlo.hpp"
#include "cfhst/scenario.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace cfhst;

namespace
{

std::vector<double> to_vector(const arma::vec &v)
{
    return arma::conv_to<std::vector<double>>::from(v);
}

ExperimentPlan make_plan(const ScenarioConfig &scenario,
                         const std::vector<std::string> &architectures, double start_m,
                         double end_m, double step_m, const std::vector<double> &speeds_kmh,
                         int trials, std::uint64_t seed, const std::string &power_scheme,
                         double cluster_theta_db, int threads)
{
    ExperimentPlan plan;
    plan.scenario = scenario;
    plan.sweep.start_m = start_m;
    plan.sweep.end_m = end_m;
    plan.sweep.step_m = step_m;
    if (!speeds_kmh.empty())
    {
        plan.sweep.kind = SweepSpec::Kind::Speed;
        plan.sweep.speeds_kmh = speeds_kmh;
    }
    plan.architectures.clear();
    for (const std::string &name : architectures)
        plan.architectures.push_back(parse_architecture(name));
    plan.trials = trials;
    plan.seed = seed;
    plan.power_scheme = parse_power_scheme(power_scheme);
    plan.cluster_theta_db = cluster_theta_db;
    plan.threads = threads;
    validate_plan(plan);
    return plan;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "cell-free massive MIMO-OFDM link-level simulator for high-speed rail";
    m.attr("__version__") = "0.1.0";

    py::class_<ScenarioConfig>(m, "Scenario", "physical deployment description")
        .def(py::init<>())
        .def_readwrite("num_aps", &ScenarioConfig::num_aps)
        .def_readwrite("antennas_per_ap", &ScenarioConfig::antennas_per_ap)
        .def_readwrite("num_tas", &ScenarioConfig::num_tas)
        .def_readwrite("rail_length_m", &ScenarioConfig::rail_length_m)
        .def_readwrite("train_length_m", &ScenarioConfig::train_length_m)
        .def_readwrite("track_offset_m", &ScenarioConfig::track_offset_m)
        .def_readwrite("carrier_hz", &ScenarioConfig::carrier_hz)
        .def_readwrite("bandwidth_hz", &ScenarioConfig::bandwidth_hz)
        .def_readwrite("symbol_duration_s", &ScenarioConfig::symbol_duration_s)
        .def_readwrite("subcarriers", &ScenarioConfig::subcarriers)
        .def_readwrite("velocity_mps", &ScenarioConfig::velocity_mps)
        .def_readwrite("noise_power_w", &ScenarioConfig::noise_power_w)
        .def_readwrite("max_power_w", &ScenarioConfig::max_power_w)
        .def_readwrite("pilot_power_w", &ScenarioConfig::pilot_power_w)
        .def_readwrite("pilot_length", &ScenarioConfig::pilot_length)
        .def_readwrite("pathloss_exponent", &ScenarioConfig::pathloss_exponent)
        .def_readwrite("pathloss_ref", &ScenarioConfig::pathloss_ref)
        .def_readwrite("rician_k_db", &ScenarioConfig::rician_k_db)
        .def_readwrite("correlated", &ScenarioConfig::correlated)
        .def_readwrite("asd_deg", &ScenarioConfig::asd_deg)
        .def_readwrite("aoa_window_deg", &ScenarioConfig::aoa_window_deg)
        .def_readwrite("scattering_clusters", &ScenarioConfig::scattering_clusters)
        .def_readwrite("antenna_spacing", &ScenarioConfig::antenna_spacing)
        .def_property(
            "rician_split",
            [](const ScenarioConfig &cfg) { return to_string(cfg.rician_split); },
            [](ScenarioConfig &cfg, const std::string &text)
            { cfg.rician_split = parse_rician_split(text); })
        .def("dfo_scale", &ScenarioConfig::dfo_scale,
             "normalized Doppler frequency offset scale")
        .def("validate", &ScenarioConfig::validate,
             "throws on invalid fields; returns warnings for legal but dubious ones")
        .def("__repr__",
             [](const ScenarioConfig &cfg)
             {
                 return "Scenario(num_aps=" + std::to_string(cfg.num_aps) +
                        ", antennas_per_ap=" + std::to_string(cfg.antennas_per_ap) +
                        ", num_tas=" + std::to_string(cfg.num_tas) + ")";
             });

    m.def(
        "ici_los",
        [](int offset, double dfo, int subcarriers)
        { return ici_los(offset, dfo, subcarriers); },
        py::arg("offset"), py::arg("dfo"), py::arg("subcarriers"),
        "line-of-sight inter-carrier leakage coefficient");
    m.def("ici_nlos", &ici_nlos, py::arg("offset"), py::arg("dfo_scale"),
          "scattered-aggregate inter-carrier leakage amplitude");
    m.def("dft_oracle_los", &dft_oracle_los, py::arg("dfo"), py::arg("subcarriers"),
          "direct DFT leakage reference, one coefficient per offset");
    m.def("dft_oracle_nlos", &dft_oracle_nlos, py::arg("dfo_scale"), py::arg("subcarriers"),
          py::arg("n_paths"), py::arg("n_trials"), py::arg("seed"),
          "Monte-Carlo second-moment leakage reference");

    m.def(
        "run",
        [](const ScenarioConfig &scenario, const std::vector<std::string> &architectures,
           double start_m, double end_m, double step_m, const std::vector<double> &speeds_kmh,
           int trials, std::uint64_t seed, const std::string &power_scheme,
           double cluster_theta_db, int threads)
        {
            const ExperimentPlan plan =
                make_plan(scenario, architectures, start_m, end_m, step_m, speeds_kmh, trials,
                          seed, power_scheme, cluster_theta_db, threads);
            ResultTable table;
            {
                py::gil_scoped_release release;
                table = run_plan(plan);
            }
            py::list rows;
            for (const ResultRow &row : table.rows)
            {
                py::dict entry;
                entry["sweep_value"] = row.sweep_value;
                entry["architecture"] = to_string(row.architecture);
                entry["block_se"] = row.block_se;
                entry["per_ta_se"] = to_vector(row.per_ta_se);
                entry["wall_s"] = row.wall_s;
                rows.append(entry);
            }
            return rows;
        },
        py::arg("scenario"), py::arg("architectures") = std::vector<std::string>{"lsfd-mr"},
        py::arg("start_m") = 0.0, py::arg("end_m") = 800.0, py::arg("step_m") = 20.0,
        py::arg("speeds_kmh") = std::vector<double>{}, py::arg("trials") = 50,
        py::arg("seed") = 1, py::arg("power_scheme") = "full",
        py::arg("cluster_theta_db") = arma::datum::inf, py::arg("threads") = 1,
        "sweep train positions (or speeds, when speeds_kmh is nonempty) and "
        "return one row per (sweep value, architecture)");

    m.def(
        "position_se",
        [](const ScenarioConfig &scenario, const std::vector<std::string> &architectures,
           double train_offset_m, int trials, std::uint64_t seed,
           const std::string &power_scheme, double cluster_theta_db, int threads)
        {
            const ExperimentPlan plan =
                make_plan(scenario, architectures, 0.0, 0.0, 1.0, {}, trials, seed,
                          power_scheme, cluster_theta_db, threads);
            arma::mat se;
            {
                py::gil_scoped_release release;
                se = position_per_ta_se(plan, train_offset_m, 0);
            }
            py::dict result;
            for (std::size_t a = 0; a < plan.architectures.size(); a++)
                result[to_string(plan.architectures[a]).c_str()] =
                    to_vector(se.col(static_cast<arma::uword>(a)));
            return result;
        },
        py::arg("scenario"), py::arg("architectures") = std::vector<std::string>{"lsfd-mr"},
        py::arg("train_offset_m") = 0.0, py::arg("trials") = 50, py::arg("seed") = 1,
        py::arg("power_scheme") = "full", py::arg("cluster_theta_db") = arma::datum::inf,
        py::arg("threads") = 1,
        "per-TA block spectral efficiency of each architecture at one train offset");

    m.def(
        "cluster_matrix",
        [](const ScenarioConfig &scenario, double train_offset_m, double threshold_db)
        {
            const GeometrySnapshot snap = build_snapshot(scenario, train_offset_m);
            const ClusterAssignment assign = form_clusters(snap, threshold_db);
            std::vector<std::vector<int>> serve(static_cast<std::size_t>(scenario.num_tas));
            for (arma::uword k = 0; k < assign.serve.n_rows; k++)
                for (arma::uword l = 0; l < assign.serve.n_cols; l++)
                    if (assign.serve(k, l))
                        serve[k].push_back(static_cast<int>(l));
            std::vector<int> master(assign.master.begin(), assign.master.end());
            return py::make_tuple(serve, master);
        },
        py::arg("scenario"), py::arg("train_offset_m") = 0.0,
        py::arg("threshold_db") = arma::datum::inf,
        "serving-AP lists and master AP per TA at one train offset");
}
