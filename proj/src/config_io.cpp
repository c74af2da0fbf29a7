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

#include <json.hpp>

#include <climits>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cfhst
{

namespace
{

using ordered_json = nlohmann::ordered_json;

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

[[noreturn]] void bad_key(const std::string &key, const std::string &what, const std::string &text)
{
    throw std::invalid_argument("key '" + key + "': expected " + what + ", got '" + text + "'");
}

double parse_num(const std::string &key, const std::string &text)
{
    try
    {
        std::size_t pos = 0;
        double v = std::stod(text, &pos);
        if (pos == text.size())
            return v;
    }
    catch (const std::exception &)
    {
    }
    bad_key(key, "a number", text);
}

int parse_int(const std::string &key, const std::string &text)
{
    try
    {
        std::size_t pos = 0;
        long long v = std::stoll(text, &pos);
        if (pos == text.size() && v >= INT_MIN && v <= INT_MAX)
            return static_cast<int>(v);
    }
    catch (const std::exception &)
    {
    }
    bad_key(key, "an integer", text);
}

std::uint64_t parse_u64(const std::string &key, const std::string &text)
{
    try
    {
        std::size_t pos = 0;
        unsigned long long v = std::stoull(text, &pos);
        if (pos == text.size())
            return v;
    }
    catch (const std::exception &)
    {
    }
    bad_key(key, "an unsigned integer", text);
}

bool parse_bool(const std::string &key, const std::string &text)
{
    if (text == "true" || text == "yes" || text == "on" || text == "1")
        return true;
    if (text == "false" || text == "no" || text == "off" || text == "0")
        return false;
    bad_key(key, "a boolean", text);
}

std::vector<std::string> split_list(const std::string &text)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, ','))
    {
        auto b = item.find_first_not_of(" \t");
        auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos)
            continue;
        out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

using Setter = std::function<void(RunConfig &, const std::string &, const std::string &)>;

// One "section.key" dispatch table shared by both encodings, so key errors
// and rejection behaviour are identical for INI and JSON inputs.
const std::map<std::string, Setter> &setters()
{
    auto num = [](double ScenarioConfig::*field) {
        return [field](RunConfig &c, const std::string &k, const std::string &v) {
            c.plan.scenario.*field = parse_num(k, v);
        };
    };
    auto count = [](int ScenarioConfig::*field) {
        return [field](RunConfig &c, const std::string &k, const std::string &v) {
            c.plan.scenario.*field = parse_int(k, v);
        };
    };
    static const std::map<std::string, Setter> table = {
        {"scenario.num_aps", count(&ScenarioConfig::num_aps)},
        {"scenario.antennas_per_ap", count(&ScenarioConfig::antennas_per_ap)},
        {"scenario.num_tas", count(&ScenarioConfig::num_tas)},
        {"scenario.rail_length_m", num(&ScenarioConfig::rail_length_m)},
        {"scenario.train_length_m", num(&ScenarioConfig::train_length_m)},
        {"scenario.track_offset_m", num(&ScenarioConfig::track_offset_m)},
        {"scenario.carrier_hz", num(&ScenarioConfig::carrier_hz)},
        {"scenario.bandwidth_hz", num(&ScenarioConfig::bandwidth_hz)},
        {"scenario.symbol_duration_s", num(&ScenarioConfig::symbol_duration_s)},
        {"scenario.subcarriers", count(&ScenarioConfig::subcarriers)},
        {"scenario.velocity_kmh",
         [](RunConfig &c, const std::string &k, const std::string &v) {
             c.plan.scenario.velocity_mps = parse_num(k, v) / 3.6;
         }},
        {"scenario.noise_power_dbm",
         [](RunConfig &c, const std::string &k, const std::string &v) {
             c.plan.scenario.noise_power_w = std::pow(10.0, (parse_num(k, v) - 30.0) / 10.0);
         }},
        {"scenario.max_power_w", num(&ScenarioConfig::max_power_w)},
        {"scenario.pilot_power_w", num(&ScenarioConfig::pilot_power_w)},
        {"scenario.pilot_length", count(&ScenarioConfig::pilot_length)},
        {"scenario.pathloss_exponent", num(&ScenarioConfig::pathloss_exponent)},
        {"scenario.pathloss_ref", num(&ScenarioConfig::pathloss_ref)},
        {"scenario.rician_k_db", num(&ScenarioConfig::rician_k_db)},
        {"scenario.rician_split",
         [](RunConfig &c, const std::string &k, const std::string &v) {
             try
             {
                 c.plan.scenario.rician_split = parse_rician_split(v);
             }
             catch (const std::invalid_argument &)
             {
                 bad_key(k, "'sqrt' or 'linear'", v);
             }
         }},
        {"scenario.correlated",
         [](RunConfig &c, const std::string &k, const std::string &v) {
             c.plan.scenario.correlated = parse_bool(k, v);
         }},
        {"scenario.asd_deg", num(&ScenarioConfig::asd_deg)},
        {"scenario.aoa_window_deg", num(&ScenarioConfig::aoa_window_deg)},
        {"scenario.scattering_clusters", count(&ScenarioConfig::scattering_clusters)},
        {"scenario.antenna_spacing", num(&ScenarioConfig::antenna_spacing)},

        {"experiment.sweep",
         [](RunConfig &c, const std::string &k, const std::string &v) {
             if (v == "position")
                 c.plan.sweep.kind = SweepSpec::Kind::Position;
             else if (v == "speed")
                 c.plan.sweep.kind = SweepSpec::Kind::Speed;
             else
                 bad_key(k, "'position' or 'speed'", v);
         }},
        {"experiment.start_m",
         [](RunConfig &c, const std::string &k, const std::string &v) {
             c.plan.sweep.start_m = parse_num(k, v);
         }},
        {"experiment.end_m",
         [](RunConfig &c, const std::string &k, const std::string &v) {
             c.plan.sweep.end_m = parse_num(k, v);
         }},
        {"experiment.step_m",
         [](RunConfig &c, const std::string &k, const std::string &v) {
             c.plan.sweep.step_m = parse_num(k, v);
         }},
        {"experiment.speeds_kmh",
         [](RunConfig &c, const std::string &k, const std::string &v) {
             c.plan.sweep.speeds_kmh.clear();
             for (const std::string &item : split_list(v))
                 c.plan.sweep.speeds_kmh.push_back(parse_num(k, item));
         }},
        {"experiment.architectures",
         [](RunConfig &c, const std::string &k, const std::string &v) {
             c.plan.architectures.clear();
             for (const std::string &item : split_list(v))
             {
                 try
                 {
                     c.plan.architectures.push_back(parse_architecture(item));
                 }
                 catch (const std::invalid_argument &)
                 {
                     bad_key(k, "architecture names", item);
                 }
             }
         }},
        {"experiment.trials",
         [](RunConfig &c, const std::string &k, const std::string &v) {
             c.plan.trials = parse_int(k, v);
         }},
        {"experiment.seed",
         [](RunConfig &c, const std::string &k, const std::string &v) {
             c.plan.seed = parse_u64(k, v);
         }},
        {"experiment.power_scheme",
         [](RunConfig &c, const std::string &k, const std::string &v) {
             try
             {
                 c.plan.power_scheme = parse_power_scheme(v);
             }
             catch (const std::invalid_argument &)
             {
                 bad_key(k, "'full', 'fractional', 'maxmin' or 'maxsum'", v);
             }
         }},
        {"experiment.cluster_theta_db",
         [](RunConfig &c, const std::string &k, const std::string &v) {
             if (v == "inf" || v == "all")
                 c.plan.cluster_theta_db = arma::datum::inf;
             else
                 c.plan.cluster_theta_db = parse_num(k, v);
         }},
        {"experiment.weights_drop_serving_offset",
         [](RunConfig &c, const std::string &k, const std::string &v) {
             c.plan.weights_drop_serving_offset = parse_bool(k, v);
         }},
        {"experiment.threads",
         [](RunConfig &c, const std::string &k, const std::string &v) {
             c.plan.threads = parse_int(k, v);
         }},
        {"experiment.se_cap",
         [](RunConfig &c, const std::string &k, const std::string &v) {
             c.plan.se_cap = parse_num(k, v);
         }},

        {"output.directory",
         [](RunConfig &c, const std::string &, const std::string &v) {
             c.output.directory = v;
         }},
    };
    return table;
}

void apply(RunConfig &config, const std::string &section, const std::string &key,
           const std::string &value)
{
    const std::string full = section + "." + key;
    auto it = setters().find(full);
    if (it == setters().end())
        throw std::invalid_argument("unknown key '" + full + "'");
    it->second(config, full, value);
}

void check_section(const std::string &name)
{
    if (name != "scenario" && name != "experiment" && name != "output")
        throw std::invalid_argument("unknown section '" + name + "'");
}

std::string trim(const std::string &s)
{
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

RunConfig parse_ini(const std::string &text)
{
    RunConfig config;
    std::istringstream is(text);
    std::string line, section;
    int line_no = 0;
    while (std::getline(is, line))
    {
        line_no++;
        auto hash = line.find_first_of("#;");
        if (hash != std::string::npos)
            line.resize(hash);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[')
        {
            if (line.back() != ']')
                throw std::invalid_argument("line " + std::to_string(line_no) +
                                            ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            check_section(section);
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": expected 'key = value', got '" + line + "'");
        if (section.empty())
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": key outside of any section");
        apply(config, section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return config;
}

// Scalars go through the same string setters as INI values; arrays are
// joined into the comma-list form those setters already accept.
std::string json_scalar(const std::string &key, const ordered_json &v)
{
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_boolean() || v.is_number())
        return v.dump();
    bad_key(key, "a scalar", v.dump());
}

RunConfig parse_json(const std::string &text)
{
    ordered_json root;
    try
    {
        root = ordered_json::parse(text);
    }
    catch (const ordered_json::parse_error &err)
    {
        throw std::invalid_argument(std::string("JSON parse error: ") + err.what());
    }
    if (!root.is_object())
        throw std::invalid_argument("JSON config must be an object of sections");

    RunConfig config;
    for (const auto &[section, body] : root.items())
    {
        check_section(section);
        if (!body.is_object())
            throw std::invalid_argument("section '" + section + "' must be an object");
        for (const auto &[key, value] : body.items())
        {
            const std::string full = section + "." + key;
            std::string flat;
            if (value.is_array())
            {
                for (const auto &item : value)
                {
                    if (!flat.empty())
                        flat += ",";
                    flat += json_scalar(full, item);
                }
            }
            else
                flat = json_scalar(full, value);
            apply(config, section, key, flat);
        }
    }
    return config;
}

ordered_json config_json(const RunConfig &c)
{
    const ScenarioConfig &s = c.plan.scenario;
    const ExperimentPlan &p = c.plan;

    ordered_json scenario;
    scenario["num_aps"] = s.num_aps;
    scenario["antennas_per_ap"] = s.antennas_per_ap;
    scenario["num_tas"] = s.num_tas;
    scenario["rail_length_m"] = s.rail_length_m;
    scenario["train_length_m"] = s.train_length_m;
    scenario["track_offset_m"] = s.track_offset_m;
    scenario["carrier_hz"] = s.carrier_hz;
    scenario["bandwidth_hz"] = s.bandwidth_hz;
    scenario["symbol_duration_s"] = s.symbol_duration_s;
    scenario["subcarriers"] = s.subcarriers;
    scenario["velocity_kmh"] = s.velocity_mps * 3.6;
    scenario["noise_power_dbm"] = 10.0 * std::log10(s.noise_power_w) + 30.0;
    scenario["max_power_w"] = s.max_power_w;
    scenario["pilot_power_w"] = s.pilot_power();
    scenario["pilot_length"] = s.pilot_len();
    scenario["pathloss_exponent"] = s.pathloss_exponent;
    scenario["pathloss_ref"] = s.pathloss_ref;
    scenario["rician_k_db"] = s.rician_k_db;
    scenario["rician_split"] = to_string(s.rician_split);
    scenario["correlated"] = s.correlated;
    scenario["asd_deg"] = s.asd_deg;
    scenario["aoa_window_deg"] = s.aoa_window_deg;
    scenario["scattering_clusters"] = s.scattering_clusters;
    scenario["antenna_spacing"] = s.antenna_spacing;

    ordered_json experiment;
    experiment["sweep"] = p.sweep.kind == SweepSpec::Kind::Position ? "position" : "speed";
    experiment["start_m"] = p.sweep.start_m;
    experiment["end_m"] = p.sweep.end_m;
    experiment["step_m"] = p.sweep.step_m;
    experiment["speeds_kmh"] = p.sweep.speeds_kmh;
    std::vector<std::string> arch_names;
    for (Architecture a : p.architectures)
        arch_names.push_back(to_string(a));
    experiment["architectures"] = arch_names;
    experiment["trials"] = p.trials;
    experiment["seed"] = p.seed;
    experiment["power_scheme"] = to_string(p.power_scheme);
    if (std::isfinite(p.cluster_theta_db))
        experiment["cluster_theta_db"] = p.cluster_theta_db;
    else
        experiment["cluster_theta_db"] = "inf";
    experiment["weights_drop_serving_offset"] = p.weights_drop_serving_offset;
    experiment["threads"] = p.threads;
    experiment["se_cap"] = p.se_cap;

    ordered_json output;
    output["directory"] = c.output.directory;

    ordered_json root;
    root["scenario"] = scenario;
    root["experiment"] = experiment;
    root["output"] = output;
    return root;
}

} // namespace

RunConfig load_config(const std::string &path)
{
    std::ifstream is(path);
    if (!is)
        throw std::runtime_error("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << is.rdbuf();
    if (is.bad())
        throw std::runtime_error("cannot read config file '" + path + "'");
    bool json_input = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
    return parse_config_text(buffer.str(), json_input);
}

RunConfig parse_config_text(const std::string &text, bool json_input)
{
    return json_input ? parse_json(text) : parse_ini(text);
}

std::vector<std::pair<std::string, std::string>> resolved_entries(const RunConfig &config)
{
    std::vector<std::pair<std::string, std::string>> out;
    const ordered_json root = config_json(config);
    for (const auto &[section, body] : root.items())
        for (const auto &[key, value] : body.items())
        {
            std::string text;
            if (value.is_string())
                text = value.get<std::string>();
            else if (value.is_number_float())
                text = fmt(value.get<double>());
            else if (value.is_array())
            {
                for (const auto &item : value)
                {
                    if (!text.empty())
                        text += ",";
                    text += item.is_string() ? item.get<std::string>() : item.dump();
                }
            }
            else
                text = value.dump();
            out.emplace_back(section + "." + key, text);
        }
    return out;
}

void write_results_csv(std::ostream &os, const ResultTable &table)
{
    const char *sweep_col =
        table.sweep_kind == SweepSpec::Kind::Position ? "position_m" : "speed_kmh";
    const arma::uword K = table.rows.empty() ? 0 : table.rows.front().per_ta_se.n_elem;
    os << sweep_col << ",architecture,block_se,wall_s";
    for (arma::uword k = 0; k < K; k++)
        os << ",se_ta" << k;
    os << "\n";
    for (const ResultRow &row : table.rows)
    {
        os << fmt(row.sweep_value) << "," << to_string(row.architecture) << ","
           << fmt(row.block_se) << "," << fmt(row.wall_s);
        for (arma::uword k = 0; k < row.per_ta_se.n_elem; k++)
            os << "," << fmt(row.per_ta_se(k));
        os << "\n";
    }
}

void write_summary_json(std::ostream &os, const RunConfig &config, const ResultTable &table)
{
    ordered_json root;
    root["seed"] = config.plan.seed;
    root["sweep"] = table.sweep_kind == SweepSpec::Kind::Position ? "position" : "speed";
    root["config"] = config_json(config);

    ordered_json stats;
    for (Architecture arch : config.plan.architectures)
    {
        std::vector<double> series = table.block_series(arch);
        if (series.empty())
            continue;
        for (double &v : series)
            v = std::min(v, config.plan.se_cap);
        CdfSummary cdf = compute_cdf(series);
        ordered_json entry;
        entry["rows"] = series.size();
        entry["mean"] = cdf.mean;
        entry["min"] = cdf.min;
        entry["p5"] = cdf.p5;
        entry["p50"] = cdf.p50;
        entry["p95"] = cdf.p95;
        entry["max"] = cdf.max;
        stats[to_string(arch)] = entry;
    }
    root["architectures"] = stats;
    os << root.dump(2) << "\n";
}

void write_power_trace_csv(std::ostream &os, const std::string &scheme, const PowerResult &result)
{
    os << "scheme,iteration,value\n";
    for (std::size_t i = 0; i < result.trace.size(); i++)
        os << scheme << "," << i << "," << fmt(result.trace[i]) << "\n";
}

} // namespace cfhst
