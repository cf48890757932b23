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

#include "cfmimo/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#ifndef CFMIMO_VERSION
#define CFMIMO_VERSION "unknown"
#endif

namespace cfmimo {

ThroughputStats throughput_stats(const std::vector<double>& values)
{
    ThroughputStats s;
    double log_sum = 0.0;
    std::size_t positive = 0;
    s.min = values.empty() ? 0.0 : std::numeric_limits<double>::infinity();
    for (double v : values) {
        s.sum += v;
        s.min = std::min(s.min, v);
        if (v > 0.0) {
            log_sum += std::log(v);
            ++positive;
        } else {
            ++s.zero_count;
        }
    }
    s.geo_mean = positive > 0 ? std::exp(log_sum / static_cast<double>(positive)) : 0.0;
    return s;
}

std::vector<double> ThroughputReport::mu_tilde() const
{
    std::vector<double> out;
    out.reserve(users.size());
    for (const auto& u : users)
        out.push_back(u.mu_tilde);
    return out;
}

ThroughputReport run_simulation(const SimConfig& cfg, const RunOptions& options)
{
    const auto start = std::chrono::steady_clock::now();
    const Scenario sc = build_scenario(cfg);
    auto states = initial_states(cfg);
    const int K = cfg.num_ues();
    const double scale = cfg.rbs_per_subchannel * cfg.rb_bandwidth_hz;

    for (int s = 0; s < cfg.n_init; ++s)
        startup_slot(sc, states, s);
    pad_cold_windows(sc, states);

    ThroughputReport rep;
    rep.cfg = cfg;
    rep.snr = sc.snr;
    rep.n_slots = cfg.n_slots;
    rep.tracked = options.track;
    rep.traces.resize(options.track.size());
    rep.static_graph = sc.static_graph;
    rep.slots.reserve(static_cast<std::size_t>(cfg.n_slots));

    const bool dpp = cfg.scheduler == SchedulerKind::pf || cfg.scheduler == SchedulerKind::hf;
    std::vector<double> running(static_cast<std::size_t>(K));
    for (std::int64_t t = 0; t < cfg.n_slots; ++t) {
        const std::int64_t slot = cfg.n_init + t;
        const SlotOutcome out =
            dpp ? dpp_slot(sc, states, slot) : baseline_slot(cfg.scheduler, sc, states, slot, t);
        if (out.suboptimal)
            ++rep.suboptimal_slots;
        for (std::size_t j = 0; j < options.track.size(); ++j) {
            const auto it = std::lower_bound(out.active.begin(), out.active.end(), options.track[j]);
            if (it != out.active.end() && *it == options.track[j])
                rep.traces[j].push_back(out.realized_mi[static_cast<std::size_t>(it - out.active.begin())]);
        }

        SlotRecord rec;
        rec.slot = t;
        for (double mu : out.service)
            rec.sum_mu += mu;
        for (int k = 0; k < K; ++k)
            running[k] = states[k].served_bits / static_cast<double>(t + 1) * scale;
        const ThroughputStats st = throughput_stats(running);
        rec.geo_mean = st.geo_mean;
        rec.min_thr = st.min;
        rec.utility = st.geo_mean > 0.0 ? std::log(st.geo_mean) : 0.0;
        rec.min_queue = sc.eligible.empty() ? 0.0 : std::numeric_limits<double>::infinity();
        for (int k : sc.eligible) {
            rec.max_queue = std::max(rec.max_queue, states[k].queue);
            rec.min_queue = std::min(rec.min_queue, states[k].queue);
        }
        rep.slots.push_back(rec);
        if (options.on_slot)
            options.on_slot(out, states);
    }

    rep.users.resize(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
        UeReport& u = rep.users[k];
        u.ue = k;
        u.position = sc.geometry.ue_positions[k];
        u.clustered = sc.assoc.has_cluster(k);
        if (cfg.n_slots > 0) {
            u.mu_bar = states[k].served_bits / static_cast<double>(cfg.n_slots);
            u.activity = static_cast<double>(states[k].active_count) / static_cast<double>(cfg.n_slots);
        }
        u.mu_tilde = u.mu_bar * scale;
    }
    rep.stats = throughput_stats(rep.mu_tilde());
    rep.windows.reserve(states.size());
    for (const auto& s : states)
        rep.windows.push_back(s.window);
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

std::string users_csv(const ThroughputReport& report)
{
    std::string out = "ue_id,x,y,mu_bar_bpcu,mu_tilde_bps,activity_frac\n";
    for (const auto& u : report.users)
        out += fmt::format("{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", u.ue, u.position.x, u.position.y,
                           u.mu_bar, u.mu_tilde, u.activity);
    return out;
}

std::string slots_csv(const ThroughputReport& report)
{
    std::string out = "slot,sum_mu,geo_mean,min_thr,max_queue\n";
    for (const auto& s : report.slots)
        out += fmt::format("{},{:.17g},{:.17g},{:.17g},{:.17g}\n", s.slot, s.sum_mu, s.geo_mean, s.min_thr,
                           s.max_queue);
    return out;
}

std::string meta_json(const ThroughputReport& report)
{
    nlohmann::ordered_json j;
    j["version"] = CFMIMO_VERSION;
    j["seed"] = report.cfg.seed;
    j["wall_time_s"] = report.wall_seconds;
    j["config"] = nlohmann::ordered_json::parse(config_to_json(report.cfg));
    j["snr"] = report.snr;
    j["n_slots"] = report.n_slots;
    j["num_ues"] = report.users.size();
    std::size_t unclustered = 0;
    for (const auto& u : report.users)
        unclustered += u.clustered ? 0 : 1;
    j["unclustered_ues"] = unclustered;
    j["suboptimal_slots"] = report.suboptimal_slots;
    j["throughput"] = {
        {"geo_mean_bps", report.stats.geo_mean},
        {"zero_count", report.stats.zero_count},
        {"min_bps", report.stats.min},
        {"sum_bps", report.stats.sum},
    };
    return j.dump(2) + "\n";
}

namespace {

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out << content;
    out.close();
    if (!out)
        throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace

void export_report(const ThroughputReport& report, const std::string& prefix, const ExportOptions& options)
{
    write_file(prefix + "users.csv", users_csv(report));
    write_file(prefix + "slots.csv", slots_csv(report));
    write_file(prefix + "meta.json", meta_json(report));
    if (options.windows) {
        std::ostringstream os;
        write_windows_csv(os, report.windows);
        write_file(prefix + "windows.csv", os.str());
    }
    if (options.conflict_graph) {
        std::string edges;
        for (const auto& [a, b] : report.static_graph.edges())
            edges += fmt::format("{} {}\n", a, b);
        write_file(prefix + "conflicts.txt", edges);
    }
}

}  // namespace cfmimo
