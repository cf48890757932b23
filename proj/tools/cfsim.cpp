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

#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cfmimo/config.hpp"
#include "cfmimo/harness.hpp"
#include "oracles.hpp"

namespace {

struct SimulateArgs {
    std::string config_path;
    std::optional<std::string> scheduler;
    std::optional<std::string> pilot_mode;
    std::optional<std::string> direction;
    std::optional<int> slots;
    std::optional<std::uint64_t> seed;
    std::string out = "./";
    bool windows = false;
    bool conflicts = false;
};

int simulate(const SimulateArgs& args)
{
    cfmimo::SimConfig cfg =
        args.config_path.empty() ? cfmimo::SimConfig{} : cfmimo::load_config_file(args.config_path);
    if (args.scheduler)
        cfg.scheduler = cfmimo::parse_scheduler_kind(*args.scheduler);
    if (args.pilot_mode)
        cfg.pilot_mode = cfmimo::parse_pilot_mode(*args.pilot_mode);
    if (args.direction)
        cfg.direction = cfmimo::parse_direction(*args.direction);
    if (args.slots)
        cfg.n_slots = *args.slots;
    if (args.seed)
        cfg.seed = *args.seed;
    cfg.validate();

    const cfmimo::ThroughputReport rep = cfmimo::run_simulation(cfg);
    cfmimo::export_report(rep, args.out, {args.windows, args.conflicts});

    std::size_t unclustered = 0;
    for (const auto& u : rep.users)
        unclustered += u.clustered ? 0 : 1;
    std::cout << fmt::format("scheduler={} pilots={} direction={} UEs={} slots={}\n",
                             cfmimo::to_string(cfg.scheduler), cfmimo::to_string(cfg.pilot_mode),
                             cfmimo::to_string(cfg.direction), rep.users.size(), rep.n_slots);
    std::cout << fmt::format("geo-mean throughput {:.4g} bit/s, min {:.4g} bit/s, sum {:.4g} bit/s\n",
                             rep.stats.geo_mean, rep.stats.min, rep.stats.sum);
    std::cout << fmt::format("zero-throughput UEs {} (unclustered {}), wall time {:.1f} s\n",
                             rep.stats.zero_count, unclustered, rep.wall_seconds);
    std::cout << "wrote " << args.out << "users.csv, " << args.out << "slots.csv, " << args.out << "meta.json\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"cfsim: fairness scheduling simulator for user-centric cell-free massive MIMO"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate_cmd = app.add_subcommand("simulate", "run one simulation and export CSV/JSON results");
    simulate_cmd->add_option("--config", sim.config_path, "key = value configuration file");
    simulate_cmd->add_option("--scheduler", sim.scheduler, "pf | hf | random | rr | maxsum");
    simulate_cmd->add_option("--pilot-mode", sim.pilot_mode, "fixed | reassign");
    simulate_cmd->add_option("--direction", sim.direction, "ul | dl");
    simulate_cmd->add_option("--slots", sim.slots, "number of scheduling slots");
    simulate_cmd->add_option("--seed", sim.seed, "master seed");
    simulate_cmd->add_option("--out", sim.out, "output path prefix (users.csv, slots.csv, meta.json appended)");
    simulate_cmd->add_flag("--windows", sim.windows, "also write <prefix>windows.csv");
    simulate_cmd->add_flag("--conflicts", sim.conflicts, "also write <prefix>conflicts.txt (fixed pilots)");

    auto* selftest_cmd = app.add_subcommand("selftest", "run the oracle and invariant checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate_cmd->parsed())
            return simulate(sim);
        if (selftest_cmd->parsed()) {
            const int failed = cfmimo::oracle::run_selftest(std::cout);
            std::cout << (failed == 0 ? "selftest passed\n" : fmt::format("selftest: {} check(s) failed\n", failed));
            return failed == 0 ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "cfsim: error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
