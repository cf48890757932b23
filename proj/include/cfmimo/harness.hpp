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

#ifndef CFMIMO_HARNESS_HPP
#define CFMIMO_HARNESS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cfmimo/config.hpp"
#include "cfmimo/geometry.hpp"
#include "cfmimo/ratectl.hpp"
#include "cfmimo/scheduler.hpp"

namespace cfmimo {

struct UeReport {
    int ue = 0;
    Point position;
    bool clustered = true;
    double mu_bar = 0.0;         // served bits / scheduling slots [bit/s/Hz]
    double mu_tilde = 0.0;       // mu_bar * F * W_rb [bit/s]
    double activity = 0.0;       // fraction of scheduling slots active
};

// Running statistics after each scheduling slot. Throughputs are the
// time averages up to and including the slot.
struct SlotRecord {
    std::int64_t slot = 0;       // scheduling slot index from 0
    double sum_mu = 0.0;         // sum_k mu_k(t)
    double geo_mean = 0.0;       // geometric mean of positive running mu_tilde
    double min_thr = 0.0;        // smallest running mu_tilde over all UEs
    double max_queue = 0.0;
    double min_queue = 0.0;
    double utility = 0.0;        // mean log of positive running mu_tilde
};

struct ThroughputStats {
    double geo_mean = 0.0;       // over strictly positive entries
    std::size_t zero_count = 0;
    double min = 0.0;
    double sum = 0.0;
};

// Geometric mean over the strictly positive values plus the zero count.
ThroughputStats throughput_stats(const std::vector<double>& values);

struct ThroughputReport {
    SimConfig cfg;
    double snr = 0.0;
    std::int64_t n_slots = 0;
    std::vector<UeReport> users;
    ThroughputStats stats;       // over users' mu_tilde
    std::vector<SlotRecord> slots;
    std::vector<RateWindow> windows;           // final windows
    std::vector<std::vector<double>> traces;   // realized MI of the tracked UEs
    std::vector<int> tracked;
    ConflictGraph static_graph;
    std::size_t suboptimal_slots = 0;
    double wall_seconds = 0.0;

    std::vector<double> mu_tilde() const;
};

struct RunOptions {
    // UEs whose every realized MI sample over the scheduling slots is kept.
    std::vector<int> track;
    // Called after each scheduling slot.
    std::function<void(const SlotOutcome&, const std::vector<UeSchedulerState>&)> on_slot;
};

// Start-up phase followed by n_slots scheduling slots of the configured
// scheduler. Throws ConfigError before any compute for an invalid config.
ThroughputReport run_simulation(const SimConfig& cfg, const RunOptions& options = {});

struct ExportOptions {
    bool windows = false;        // <prefix>windows.csv
    bool conflict_graph = false; // <prefix>conflicts.txt (fixed pilots)
};

// Writes <prefix>users.csv, <prefix>slots.csv and <prefix>meta.json.
// Throws std::runtime_error naming the path when a file cannot be written.
void export_report(const ThroughputReport& report, const std::string& prefix, const ExportOptions& options = {});

std::string users_csv(const ThroughputReport& report);
std::string slots_csv(const ThroughputReport& report);
std::string meta_json(const ThroughputReport& report);

}  // namespace cfmimo

#endif
