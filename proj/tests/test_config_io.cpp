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

#include "cfhst/config_io.hpp"

#include "json.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

using namespace cfhst;

namespace
{

const char *ini_text = R"(# reference deployment, shrunk
[scenario]
num_aps = 4
antennas_per_ap = 2
num_tas = 3
velocity_kmh = 360        ; inline comment
noise_power_dbm = -94
rician_split = linear
correlated = false

[experiment]
sweep = speed
speeds_kmh = 100, 300, 600
architectures = centralized-mmse, lsfd-mr
trials = 25
seed = 77
power_scheme = fractional
cluster_theta_db = inf

[output]
directory = results
)";

const char *json_text = R"({
  "scenario": {
    "num_aps": 4,
    "antennas_per_ap": 2,
    "num_tas": 3,
    "velocity_kmh": 360,
    "noise_power_dbm": -94,
    "rician_split": "linear",
    "correlated": false
  },
  "experiment": {
    "sweep": "speed",
    "speeds_kmh": [100, 300, 600],
    "architectures": ["centralized-mmse", "lsfd-mr"],
    "trials": 25,
    "seed": 77,
    "power_scheme": "fractional",
    "cluster_theta_db": "inf"
  },
  "output": {
    "directory": "results"
  }
})";

ResultTable sample_table()
{
    ResultTable table;
    table.sweep_kind = SweepSpec::Kind::Position;
    ResultRow row;
    row.sweep_value = 10.0;
    row.architecture = Architecture::LsfdMr;
    row.per_ta_se = arma::vec{1.5, 2.5};
    row.block_se = 2.0;
    row.wall_s = 0.125;
    table.rows.push_back(row);
    row.sweep_value = 30.0;
    row.block_se = 4.0;
    row.per_ta_se = arma::vec{3.0, 5.0};
    table.rows.push_back(row);
    return table;
}

} // namespace

TEST_CASE("config - INI parsing fills the plan")
{
    const RunConfig config = parse_config_text(ini_text, false);
    const ExperimentPlan &plan = config.plan;

    REQUIRE(plan.scenario.num_aps == 4);
    REQUIRE(plan.scenario.antennas_per_ap == 2);
    REQUIRE(plan.scenario.num_tas == 3);
    REQUIRE(plan.scenario.velocity_mps == Catch::Approx(100.0)); // 360 km/h
    REQUIRE(plan.scenario.noise_power_w == Catch::Approx(3.9811e-13).epsilon(1e-4));
    REQUIRE(plan.scenario.rician_split == RicianSplit::Linear);
    REQUIRE_FALSE(plan.scenario.correlated);

    REQUIRE(plan.sweep.kind == SweepSpec::Kind::Speed);
    REQUIRE(plan.sweep.speeds_kmh == std::vector<double>{100.0, 300.0, 600.0});
    REQUIRE(plan.architectures ==
            std::vector<Architecture>{Architecture::CentralizedMmse, Architecture::LsfdMr});
    REQUIRE(plan.trials == 25);
    REQUIRE(plan.seed == 77);
    REQUIRE(plan.power_scheme == PowerScheme::Fractional);
    REQUIRE(std::isinf(plan.cluster_theta_db));
    REQUIRE(config.output.directory == "results");

    // Untouched keys keep their defaults.
    REQUIRE(plan.scenario.carrier_hz == 1.8e9);
    REQUIRE(plan.se_cap == 30.0);
}

TEST_CASE("config - JSON and INI inputs resolve identically")
{
    const RunConfig a = parse_config_text(ini_text, false);
    const RunConfig b = parse_config_text(json_text, true);
    REQUIRE(resolved_entries(a) == resolved_entries(b));
}

TEST_CASE("config - resolved entries round-trip through INI")
{
    const RunConfig config = parse_config_text(ini_text, false);
    const auto entries = resolved_entries(config);

    std::string rendered;
    std::string section;
    for (const auto &[key, value] : entries)
    {
        const auto dot = key.find('.');
        if (key.substr(0, dot) != section)
        {
            section = key.substr(0, dot);
            rendered += "[" + section + "]\n";
        }
        rendered += key.substr(dot + 1) + " = " + value + "\n";
    }
    const RunConfig again = parse_config_text(rendered, false);
    REQUIRE(resolved_entries(again) == entries);
}

TEST_CASE("config - resolved entries expose defaulted pilot settings")
{
    const RunConfig config = parse_config_text("[scenario]\nmax_power_w = 0.4\n", false);
    bool saw_power = false, saw_len = false;
    for (const auto &[key, value] : resolved_entries(config))
    {
        if (key == "scenario.pilot_power_w")
        {
            REQUIRE(value == "0.4");
            saw_power = true;
        }
        if (key == "scenario.pilot_length")
        {
            REQUIRE(value == "8");
            saw_len = true;
        }
    }
    REQUIRE(saw_power);
    REQUIRE(saw_len);
}

TEST_CASE("config - unknown keys and sections are rejected by name")
{
    REQUIRE_THROWS_MATCHES(
        parse_config_text("[scenario]\nnum_apz = 3\n", false), std::invalid_argument,
        Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("scenario.num_apz")));

    REQUIRE_THROWS_MATCHES(
        parse_config_text("[channel]\nfoo = 1\n", false), std::invalid_argument,
        Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("channel")));

    REQUIRE_THROWS_MATCHES(
        parse_config_text(R"({"scenario": {"num_apz": 3}})", true), std::invalid_argument,
        Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("scenario.num_apz")));
}

TEST_CASE("config - malformed values are rejected by key")
{
    REQUIRE_THROWS_MATCHES(
        parse_config_text("[scenario]\nnum_aps = many\n", false), std::invalid_argument,
        Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("scenario.num_aps")));

    REQUIRE_THROWS_MATCHES(
        parse_config_text("[scenario]\ncorrelated = maybe\n", false), std::invalid_argument,
        Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("boolean")));

    REQUIRE_THROWS_MATCHES(parse_config_text("[experiment]\narchitectures = warp-drive\n", false),
                           std::invalid_argument,
                           Catch::Matchers::MessageMatches(
                               Catch::Matchers::ContainsSubstring("architecture")));

    REQUIRE_THROWS_MATCHES(
        parse_config_text("num_aps = 3\n", false), std::invalid_argument,
        Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("section")));

    // INI errors carry the line number.
    REQUIRE_THROWS_MATCHES(
        parse_config_text("[scenario]\n\nnum_aps\n", false), std::invalid_argument,
        Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("line 3")));

    REQUIRE_THROWS_AS(parse_config_text("{not json", true), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_config_text(R"({"scenario": 3})", true), std::invalid_argument);
}

TEST_CASE("config - missing files raise I/O errors")
{
    REQUIRE_THROWS_AS(load_config("/nonexistent/path/config.cfg"), std::runtime_error);
}

TEST_CASE("config - results CSV lists one row per sweep point")
{
    std::ostringstream os;
    write_results_csv(os, sample_table());
    std::istringstream is(os.str());
    std::string line;

    REQUIRE(std::getline(is, line));
    REQUIRE(line == "position_m,architecture,block_se,wall_s,se_ta0,se_ta1");
    REQUIRE(std::getline(is, line));
    REQUIRE(line == "10,lsfd-mr,2,0.125,1.5,2.5");
    REQUIRE(std::getline(is, line));
    REQUIRE(line == "30,lsfd-mr,4,0.125,3,5");
    REQUIRE_FALSE(std::getline(is, line));

    ResultTable speed = sample_table();
    speed.sweep_kind = SweepSpec::Kind::Speed;
    std::ostringstream os2;
    write_results_csv(os2, speed);
    REQUIRE(os2.str().substr(0, 9) == "speed_kmh");
}

TEST_CASE("config - summary JSON reports capped series statistics")
{
    RunConfig config = parse_config_text("", false);
    config.plan.architectures = {Architecture::LsfdMr};
    config.plan.se_cap = 3.5;
    config.plan.seed = 123;

    std::ostringstream os;
    write_summary_json(os, config, sample_table());
    const nlohmann::json root = nlohmann::json::parse(os.str());

    REQUIRE(root["seed"] == 123);
    REQUIRE(root["sweep"] == "position");
    REQUIRE(root["config"]["scenario"]["num_aps"] == 10);
    const auto &stats = root["architectures"]["lsfd-mr"];
    REQUIRE(stats["rows"] == 2);
    REQUIRE(stats["min"] == 2.0);
    REQUIRE(stats["max"] == 3.5); // capped from 4.0
    REQUIRE(stats["mean"] == Catch::Approx(2.75));
}

TEST_CASE("config - power trace CSV")
{
    PowerResult result;
    result.trace = {0.5, 0.25, 0.01};
    std::ostringstream os;
    write_power_trace_csv(os, "maxmin", result);
    REQUIRE(os.str() == "scheme,iteration,value\n"
                        "maxmin,0,0.5\n"
                        "maxmin,1,0.25\n"
                        "maxmin,2,0.01\n");
}
