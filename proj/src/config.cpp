// SPDX-License-Identifier: Apache-2.0
//
// cfmimo - scheduling simulator for user-centric cell-free massive MIMO
// Copyright (C) 2026 The cfmimo authors
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

#include "cfmimo/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

namespace cfmimo {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename Int>
Int parse_int(std::string_view key, std::string_view text)
{
    Int out{};
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, out);
    if (ec != std::errc() || ptr != end)
        throw ConfigError(fmt::format("config key '{}': expected an integer, got '{}'", key, text));
    return out;
}

double parse_double(std::string_view key, std::string_view text)
{
    // from_chars for double is not available in every libstdc++ we build with.
    std::string buf(text);
    char* end = nullptr;
    const double out = std::strtod(buf.c_str(), &end);
    if (buf.empty() || end != buf.c_str() + buf.size() || !std::isfinite(out))
        throw ConfigError(fmt::format("config key '{}': expected a number, got '{}'", key, text));
    return out;
}

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

struct Setting {
    const char* key;
    std::function<void(SimConfig&, std::string_view)> set;
    std::function<std::string(const SimConfig&)> get;
    bool numeric;
};

#define CF_INT_SETTING(name, field)                                                        \
    Setting{name,                                                                          \
            [](SimConfig& c, std::string_view v) { c.field = parse_int<decltype(c.field)>(name, v); }, \
            [](const SimConfig& c) { return std::to_string(c.field); }, true}
#define CF_DOUBLE_SETTING(name, field)                                                     \
    Setting{name, [](SimConfig& c, std::string_view v) { c.field = parse_double(name, v); }, \
            [](const SimConfig& c) { return format_double(c.field); }, true}

const std::vector<Setting>& settings()
{
    static const std::vector<Setting> table = {
        CF_DOUBLE_SETTING("area_side", area_side),
        CF_INT_SETTING("L", num_rus),
        CF_INT_SETTING("ru_grid_cols", ru_grid_cols),
        CF_INT_SETTING("ru_grid_rows", ru_grid_rows),
        CF_INT_SETTING("M", antennas_per_ru),
        CF_INT_SETTING("K_tot_per_subchannel", ues_per_subchannel_f1),
        CF_INT_SETTING("K_act", k_act),
        CF_INT_SETTING("K_tilde", k_tilde),
        CF_INT_SETTING("tau_p", tau_p),
        CF_INT_SETTING("T", block_length),
        CF_INT_SETTING("F", rbs_per_subchannel),
        CF_DOUBLE_SETTING("W_rb", rb_bandwidth_hz),
        CF_DOUBLE_SETTING("eta", eta),
        CF_INT_SETTING("C_max", cluster_max),
        CF_DOUBLE_SETTING("eta_F", eta_f),
        CF_DOUBLE_SETTING("delta", angular_spread),
        CF_DOUBLE_SETTING("V", dpp_v),
        CF_DOUBLE_SETTING("A_max", a_max),
        CF_INT_SETTING("N_window", window_len),
        CF_INT_SETTING("N_init", n_init),
        CF_DOUBLE_SETTING("carrier_freq", carrier_ghz),
        CF_DOUBLE_SETTING("bs_height", bs_height),
        CF_DOUBLE_SETTING("ue_height", ue_height),
        CF_INT_SETTING("seed", seed),
        Setting{"scheduler_kind",
                [](SimConfig& c, std::string_view v) { c.scheduler = parse_scheduler_kind(v); },
                [](const SimConfig& c) { return to_string(c.scheduler); }, false},
        Setting{"pilot_mode",
                [](SimConfig& c, std::string_view v) { c.pilot_mode = parse_pilot_mode(v); },
                [](const SimConfig& c) { return to_string(c.pilot_mode); }, false},
        Setting{"direction",
                [](SimConfig& c, std::string_view v) { c.direction = parse_direction(v); },
                [](const SimConfig& c) { return to_string(c.direction); }, false},
        CF_INT_SETTING("n_slots", n_slots),
        CF_INT_SETTING("calibration_draws", calibration_draws),
        CF_INT_SETTING("pilot_retries", pilot_retries),
        CF_INT_SETTING("node_budget", node_budget),
    };
    return table;
}

#undef CF_INT_SETTING
#undef CF_DOUBLE_SETTING

}  // namespace

std::string to_string(SchedulerKind kind)
{
    switch (kind) {
    case SchedulerKind::pf: return "pf";
    case SchedulerKind::hf: return "hf";
    case SchedulerKind::random: return "random";
    case SchedulerKind::round_robin: return "rr";
    case SchedulerKind::max_sum_rate: return "maxsum";
    }
    return "?";
}

std::string to_string(PilotMode mode) { return mode == PilotMode::fixed ? "fixed" : "reassign"; }
std::string to_string(LinkDirection dir) { return dir == LinkDirection::ul ? "ul" : "dl"; }

SchedulerKind parse_scheduler_kind(std::string_view text)
{
    if (text == "pf") return SchedulerKind::pf;
    if (text == "hf") return SchedulerKind::hf;
    if (text == "random") return SchedulerKind::random;
    if (text == "rr" || text == "round_robin") return SchedulerKind::round_robin;
    if (text == "maxsum" || text == "max_sum_rate") return SchedulerKind::max_sum_rate;
    throw ConfigError(fmt::format("unknown scheduler '{}' (expected pf|hf|random|rr|maxsum)", text));
}

PilotMode parse_pilot_mode(std::string_view text)
{
    if (text == "fixed") return PilotMode::fixed;
    if (text == "reassign") return PilotMode::reassign;
    throw ConfigError(fmt::format("unknown pilot mode '{}' (expected fixed|reassign)", text));
}

LinkDirection parse_direction(std::string_view text)
{
    if (text == "ul") return LinkDirection::ul;
    if (text == "dl") return LinkDirection::dl;
    throw ConfigError(fmt::format("unknown direction '{}' (expected ul|dl)", text));
}

void SimConfig::validate() const
{
    auto require = [](bool ok, const char* what) {
        if (!ok)
            throw ConfigError(std::string("invalid configuration: ") + what);
    };
    require(area_side > 0.0, "area_side must be positive");
    require(num_rus >= 1, "L must be at least 1");
    require(ru_grid_cols >= 0 && ru_grid_rows >= 0, "RU grid dimensions must be non-negative");
    require((ru_grid_cols == 0) == (ru_grid_rows == 0),
            "ru_grid_cols and ru_grid_rows must be given together");
    require(ru_grid_cols == 0 || ru_grid_cols * ru_grid_rows == num_rus,
            "ru_grid_cols * ru_grid_rows must equal L");
    require(antennas_per_ru >= 1, "M must be at least 1");
    require(ues_per_subchannel_f1 >= 1, "K_tot_per_subchannel must be at least 1");
    require(k_act >= 0, "K_act must be non-negative");
    require(k_act <= k_tilde, "K_act must not exceed K_tilde");
    require(k_tilde <= num_ues(), "K_tilde must not exceed the number of UEs");
    require(tau_p >= 1, "tau_p must be at least 1");
    require(tau_p < block_length, "tau_p must be smaller than T");
    require(rbs_per_subchannel >= 1, "F must be at least 1");
    require(rb_bandwidth_hz > 0.0, "W_rb must be positive");
    require(eta > 0.0, "eta must be positive");
    require(cluster_max >= 1, "C_max must be at least 1");
    require(eta_f >= 0.0, "eta_F must be non-negative");
    require(angular_spread > 0.0, "delta must be positive");
    require(dpp_v > 0.0, "V must be positive");
    require(a_max > 0.0, "A_max must be positive");
    require(window_len >= 1, "N_window must be at least 1");
    require(n_init >= 0, "N_init must be non-negative");
    require(carrier_ghz > 0.0, "carrier_freq must be positive");
    require(bs_height > 0.0 && ue_height > 0.0, "antenna heights must be positive");
    require(n_slots >= 0, "n_slots must be non-negative");
    require(calibration_draws >= 1, "calibration_draws must be at least 1");
    require(pilot_retries >= 0, "pilot_retries must be non-negative");
    require(node_budget >= 1, "node_budget must be at least 1");
}

void apply_setting(SimConfig& cfg, std::string_view key, std::string_view value)
{
    for (const auto& s : settings()) {
        if (key == s.key) {
            s.set(cfg, trim(value));
            return;
        }
    }
    throw ConfigError(fmt::format("unknown config key '{}'", key));
}

SimConfig parse_config_text(std::string_view text, SimConfig base)
{
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(fmt::format("config line {}: expected 'key = value'", line_no));
        apply_setting(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return base;
}

SimConfig load_config_file(const std::string& path, SimConfig base)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError(fmt::format("cannot open config file '{}'", path));
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), base);
}

std::vector<std::pair<std::string, std::string>> config_entries(const SimConfig& cfg)
{
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& s : settings())
        out.emplace_back(s.key, s.get(cfg));
    return out;
}

std::string config_to_json(const SimConfig& cfg)
{
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& s : settings()) {
        const std::string v = s.get(cfg);
        if (!s.numeric)
            j[s.key] = v;
        else if (v.find_first_of(".eEn") != std::string::npos)
            j[s.key] = std::strtod(v.c_str(), nullptr);
        else if (v.front() == '-')
            j[s.key] = std::stoll(v);
        else
            j[s.key] = std::stoull(v);
    }
    return j.dump(2);
}

SimConfig config_from_json(std::string_view json_text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed config JSON: ") + e.what());
    }
    if (!j.is_object())
        throw ConfigError("config JSON must be an object");
    SimConfig cfg;
    for (const auto& [key, value] : j.items()) {
        if (value.is_string())
            apply_setting(cfg, key, value.get<std::string>());
        else if (value.is_number_float())
            apply_setting(cfg, key, format_double(value.get<double>()));
        else if (value.is_number())
            apply_setting(cfg, key, value.dump());
        else
            throw ConfigError(fmt::format("config JSON key '{}' has an unsupported type", key));
    }
    return cfg;
}

}  // namespace cfmimo
