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

#ifndef CFMIMO_CONFIG_HPP
#define CFMIMO_CONFIG_HPP

#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cfmimo {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class SchedulerKind { pf, hf, random, round_robin, max_sum_rate };
enum class PilotMode { fixed, reassign };
enum class LinkDirection { ul, dl };

std::string to_string(SchedulerKind kind);
std::string to_string(PilotMode mode);
std::string to_string(LinkDirection dir);
SchedulerKind parse_scheduler_kind(std::string_view text);
PilotMode parse_pilot_mode(std::string_view text);
LinkDirection parse_direction(std::string_view text);

// Simulation parameters. Config-file keys are listed next to each field.
struct SimConfig {
    double area_side = 200.0;           // area_side [m]
    int num_rus = 20;                   // L
    int ru_grid_cols = 0;               // ru_grid_cols, 0 = choose from L
    int ru_grid_rows = 0;               // ru_grid_rows, 0 = choose from L
    int antennas_per_ru = 10;           // M
    int ues_per_subchannel_f1 = 120;    // K_tot_per_subchannel (UEs at F = 1)
    int k_act = 70;                     // K_act
    int k_tilde = 80;                   // K_tilde
    int tau_p = 20;                     // tau_p
    int block_length = 200;             // T
    int rbs_per_subchannel = 1;         // F
    double rb_bandwidth_hz = 720e3;     // W_rb
    double eta = 1.0;                   // eta
    int cluster_max = 7;                // C_max
    double eta_f = 0.0;                 // eta_F
    double angular_spread = std::numbers::pi / 8.0;  // delta [rad]
    double dpp_v = 5000.0;              // V
    double a_max = 100.0;               // A_max
    int window_len = 100;               // N_window
    int n_init = 500;                   // N_init
    double carrier_ghz = 3.5;           // carrier_freq [GHz]
    double bs_height = 10.0;            // bs_height [m]
    double ue_height = 1.5;             // ue_height [m]
    std::uint64_t seed = 1;             // seed
    SchedulerKind scheduler = SchedulerKind::pf;       // scheduler_kind
    PilotMode pilot_mode = PilotMode::reassign;        // pilot_mode
    LinkDirection direction = LinkDirection::ul;       // direction
    int n_slots = 2000;                 // n_slots
    int calibration_draws = 100000;     // calibration_draws
    int pilot_retries = 10;             // pilot_retries (baseline reassignment)
    std::int64_t node_budget = 1000000; // node_budget (selection solver)

    // Number of UEs on the simulated subchannel, F * K_tot(F=1).
    int num_ues() const { return rbs_per_subchannel * ues_per_subchannel_f1; }

    // Fraction of each resource block left for data, 1 - tau_p / T.
    double data_fraction() const { return 1.0 - static_cast<double>(tau_p) / block_length; }

    // Throws ConfigError naming the first violated constraint.
    void validate() const;

    bool operator==(const SimConfig&) const = default;
};

// Applies one `key = value` setting; unknown keys and malformed values throw.
void apply_setting(SimConfig& cfg, std::string_view key, std::string_view value);

// Flat key-value text: one `key = value` per line, `#` starts a comment.
SimConfig parse_config_text(std::string_view text, SimConfig base = {});
SimConfig load_config_file(const std::string& path, SimConfig base = {});

// All settings as (key, value) text pairs, in a fixed order.
std::vector<std::pair<std::string, std::string>> config_entries(const SimConfig& cfg);

std::string config_to_json(const SimConfig& cfg);
SimConfig config_from_json(std::string_view json_text);

}  // namespace cfmimo

#endif
