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

#include <doctest.h>

#include <numbers>

#include "cfmimo/config.hpp"

using namespace cfmimo;

TEST_CASE("default configuration is valid and sized per subchannel")
{
    SimConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.num_ues() == 120);
    CHECK(cfg.data_fraction() == doctest::Approx(0.9));
    cfg.rbs_per_subchannel = 5;
    CHECK(cfg.num_ues() == 600);
    cfg.rbs_per_subchannel = 10;
    CHECK(cfg.num_ues() == 1200);
}

TEST_CASE("config text parsing")
{
    const SimConfig cfg = parse_config_text(R"(
# comment line
L = 12
M=8
F = 2   # trailing comment
V = 500
delta = 0.5
scheduler_kind = round_robin
pilot_mode = fixed
direction = dl
seed = 18446744073709551615
)");
    CHECK(cfg.num_rus == 12);
    CHECK(cfg.antennas_per_ru == 8);
    CHECK(cfg.rbs_per_subchannel == 2);
    CHECK(cfg.dpp_v == 500.0);
    CHECK(cfg.angular_spread == 0.5);
    CHECK(cfg.scheduler == SchedulerKind::round_robin);
    CHECK(cfg.pilot_mode == PilotMode::fixed);
    CHECK(cfg.direction == LinkDirection::dl);
    CHECK(cfg.seed == 18446744073709551615ULL);

    CHECK_THROWS_AS(parse_config_text("no_such_key = 1"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("L = twelve"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("L = 3.5"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("L"), ConfigError);
    CHECK_THROWS_AS(load_config_file("/nonexistent/dir/cfg.txt"), std::exception);
}

TEST_CASE("scheduler names")
{
    CHECK(parse_scheduler_kind("rr") == SchedulerKind::round_robin);
    CHECK(parse_scheduler_kind("round_robin") == SchedulerKind::round_robin);
    CHECK(parse_scheduler_kind("maxsum") == SchedulerKind::max_sum_rate);
    CHECK(parse_scheduler_kind("max_sum_rate") == SchedulerKind::max_sum_rate);
    CHECK(parse_scheduler_kind("hf") == SchedulerKind::hf);
    CHECK_THROWS_AS(parse_scheduler_kind("fifo"), ConfigError);
    CHECK_THROWS_AS(parse_pilot_mode("dynamic"), ConfigError);
    CHECK_THROWS_AS(parse_direction("both"), ConfigError);
    for (auto k : {SchedulerKind::pf, SchedulerKind::hf, SchedulerKind::random, SchedulerKind::round_robin,
                   SchedulerKind::max_sum_rate})
        CHECK(parse_scheduler_kind(to_string(k)) == k);
}

TEST_CASE("validation rejects inconsistent settings")
{
    auto invalid = [](auto mutate) {
        SimConfig cfg;
        mutate(cfg);
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
    };
    invalid([](SimConfig& c) { c.k_act = 90; });
    invalid([](SimConfig& c) { c.k_tilde = 200; });
    invalid([](SimConfig& c) { c.tau_p = 200; });
    invalid([](SimConfig& c) { c.rbs_per_subchannel = 0; });
    invalid([](SimConfig& c) { c.cluster_max = 0; });
    invalid([](SimConfig& c) { c.eta_f = -1.0; });
    invalid([](SimConfig& c) { c.dpp_v = 0.0; });
    invalid([](SimConfig& c) { c.a_max = -1.0; });
    invalid([](SimConfig& c) { c.ru_grid_cols = 3; c.ru_grid_rows = 3; });
    invalid([](SimConfig& c) { c.ru_grid_cols = 4; });
}

TEST_CASE("json round trip preserves every field")
{
    SimConfig cfg;
    cfg.num_rus = 6;
    cfg.ru_grid_cols = 3;
    cfg.ru_grid_rows = 2;
    cfg.angular_spread = std::numbers::pi / 7.0;
    cfg.carrier_ghz = 2.1234567890123457;
    cfg.seed = 9876543210123ULL;
    cfg.scheduler = SchedulerKind::hf;
    cfg.pilot_mode = PilotMode::fixed;
    cfg.direction = LinkDirection::dl;
    cfg.rb_bandwidth_hz = 180e3;
    CHECK(config_from_json(config_to_json(cfg)) == cfg);
    CHECK(config_from_json(config_to_json(SimConfig{})) == SimConfig{});
}

TEST_CASE("config entries round trip through text")
{
    SimConfig cfg;
    cfg.eta = 0.37;
    cfg.n_init = 17;
    std::string text;
    for (const auto& [k, v] : config_entries(cfg))
        text += k + " = " + v + "\n";
    CHECK(parse_config_text(text) == cfg);
}
