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

#include <algorithm>
#include <numeric>

#include "cfmimo/scheduler.hpp"

using namespace cfmimo;

namespace {

SimConfig tiny_config()
{
    SimConfig cfg;
    cfg.area_side = 60.0;
    cfg.num_rus = 4;
    cfg.antennas_per_ru = 4;
    cfg.ues_per_subchannel_f1 = 24;
    cfg.k_act = 6;
    cfg.k_tilde = 8;
    cfg.tau_p = 3;
    cfg.block_length = 30;
    cfg.cluster_max = 3;
    cfg.n_init = 30;
    cfg.n_slots = 40;
    cfg.calibration_draws = 2000;
    cfg.seed = 5;
    return cfg;
}

// Network where every UE is served by the single RU and nothing conflicts.
SimConfig conflict_free_config(int num_ues, int k_act)
{
    SimConfig cfg = tiny_config();
    cfg.area_side = 10.0;
    cfg.num_rus = 1;
    cfg.ues_per_subchannel_f1 = num_ues;
    cfg.k_act = k_act;
    cfg.k_tilde = num_ues;
    cfg.tau_p = num_ues;
    cfg.block_length = 4 * num_ues;
    cfg.eta = 1e-3;
    return cfg;
}

std::vector<UeSchedulerState> started(const Scenario& sc)
{
    auto states = initial_states(sc.cfg);
    for (int t = 0; t < sc.cfg.n_init; ++t)
        startup_slot(sc, states, t);
    pad_cold_windows(sc, states);
    return states;
}

bool independent(const std::vector<int>& set, const ConflictGraph& g)
{
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j)
            if (g.num_vertices() > 0 && g.has_edge(set[i], set[j]))
                return false;
    return true;
}

void check_outcome(const Scenario& sc, const SlotOutcome& out, const std::vector<UeSchedulerState>& before,
                   const std::vector<UeSchedulerState>& after)
{
    const double frac = sc.cfg.data_fraction();
    CHECK(static_cast<int>(out.active.size()) <= sc.cfg.k_act);
    CHECK(std::is_sorted(out.active.begin(), out.active.end()));
    double sum_mu = 0.0, sum_r = 0.0;
    for (std::size_t i = 0; i < out.active.size(); ++i) {
        const int k = out.active[i];
        CHECK(std::binary_search(sc.eligible.begin(), sc.eligible.end(), k));
        CHECK(out.rates[i] == before[k].window.r_star());
        CHECK(out.service[k] == realized_service(out.realized_mi[i], out.rates[i], frac));
        CHECK(static_cast<bool>(out.outage[i]) == !(out.realized_mi[i] > out.rates[i]));
        CHECK(after[k].window.samples().back() == out.realized_mi[i]);
        CHECK(after[k].active_count == before[k].active_count + 1);
        sum_r += out.rates[i];
    }
    for (std::size_t k = 0; k < after.size(); ++k) {
        const bool active = std::binary_search(out.active.begin(), out.active.end(), static_cast<int>(k));
        if (!active)
            CHECK(out.service[k] == 0.0);
        sum_mu += out.service[k];
        CHECK(after[k].served_bits == before[k].served_bits + out.service[k]);
        CHECK(after[k].queue >= 0.0);
        if (!out.arrivals.empty())
            CHECK(after[k].queue == queue_update(before[k].queue, out.service[k], out.arrivals[k]));
    }
    CHECK(sum_mu <= frac * sum_r + 1e-12);
}

}  // namespace

TEST_CASE("arrival rules")
{
    const std::vector<double> q{0.0, 100.0, 50.0, 1e6};
    CHECK(virtual_arrivals_pf(q, 5000.0, 100.0) == std::vector<double>{100.0, 50.0, 100.0, 0.005});
    for (double a : virtual_arrivals_pf(q, 5000.0, 100.0))
        CHECK(a <= 100.0);

    CHECK(virtual_arrivals_hf(std::vector<double>{1000.0, 3000.0}, 5000.0, 100.0) ==
          std::vector<double>{100.0, 100.0});
    CHECK(virtual_arrivals_hf(std::vector<double>{3000.0, 3000.0}, 5000.0, 100.0) ==
          std::vector<double>{0.0, 0.0});
    CHECK(virtual_arrivals_hf(std::vector<double>{2500.0, 2500.0}, 5000.0, 100.0) ==
          std::vector<double>{0.0, 0.0});
    CHECK(virtual_arrivals_hf(std::vector<double>{0.0, 0.0, 0.0}, 5000.0, 100.0) ==
          std::vector<double>{100.0, 100.0, 100.0});
}

TEST_CASE("service and queue arithmetic")
{
    CHECK(realized_service(2.5, 2.0, 0.9) == doctest::Approx(1.8));
    CHECK(realized_service(1.5, 2.0, 0.9) == 0.0);
    CHECK(realized_service(2.0, 2.0, 0.9) == 0.0);
    CHECK(queue_update(5.0, 3.0, 2.0) == 4.0);
    CHECK(queue_update(1.0, 5.0, 0.0) == 0.0);
    SimConfig cfg;
    CHECK(cfg.data_fraction() == doctest::Approx(0.9));
}

TEST_CASE("scenario construction")
{
    SimConfig bad = tiny_config();
    bad.k_act = 9;
    CHECK_THROWS_AS(build_scenario(bad), ConfigError);

    SimConfig cfg = tiny_config();
    const Scenario sc = build_scenario(cfg);
    CHECK(sc.assoc.num_ues() == cfg.num_ues());
    CHECK(sc.eligible.size() + sc.assoc.unclustered().size() == static_cast<std::size_t>(cfg.num_ues()));
    CHECK(sc.static_graph.num_vertices() == 0);
    for (int p : sc.assoc.pilots)
        CHECK(p == kNoPilot);

    cfg.pilot_mode = PilotMode::fixed;
    const Scenario fixed = build_scenario(cfg);
    CHECK(fixed.static_graph.edges() ==
          build_conflict_graph(fixed.assoc, fixed.assoc.pilots, fixed.lss, cfg.eta_f, fixed.eligible).edges());
    for (int k : fixed.eligible)
        CHECK(fixed.assoc.pilots[k] != kNoPilot);
    CHECK(fixed.lss.snr() == sc.snr);
}

TEST_CASE("start-up records windows without touching queues")
{
    const Scenario sc = build_scenario(tiny_config());
    auto states = initial_states(sc.cfg);
    for (int t = 0; t < 5; ++t) {
        const auto before = states;
        const SlotOutcome out = startup_slot(sc, states, t);
        CHECK(out.arrivals.empty());
        CHECK(static_cast<int>(out.active.size()) <= sc.cfg.k_act);
        for (std::size_t k = 0; k < states.size(); ++k) {
            CHECK(states[k].queue == 0.0);
            CHECK(states[k].served_bits == 0.0);
            CHECK(states[k].active_count == 0);
            const bool active = std::binary_search(out.active.begin(), out.active.end(), static_cast<int>(k));
            CHECK(states[k].window.size() == before[k].window.size() + (active ? 1u : 0u));
        }
    }

    // A cold eligible UE inherits the smallest sample seen anywhere.
    auto cold = initial_states(sc.cfg);
    cold[sc.eligible[0]].window.record(2.0);
    cold[sc.eligible[1]].window.record(0.75);
    pad_cold_windows(sc, cold);
    for (int k : sc.eligible) {
        REQUIRE(cold[k].window.size() == 1);
        if (k != sc.eligible[0])
            CHECK(cold[k].window.samples()[0] == 0.75);
    }
    for (int k : sc.assoc.unclustered())
        CHECK(cold[k].window.empty());
}

TEST_CASE("DPP slots respect the scheduling invariants")
{
    for (PilotMode mode : {PilotMode::reassign, PilotMode::fixed}) {
        for (SchedulerKind kind : {SchedulerKind::pf, SchedulerKind::hf}) {
            SimConfig cfg = tiny_config();
            cfg.pilot_mode = mode;
            cfg.scheduler = kind;
            const Scenario sc = build_scenario(cfg);
            auto states = started(sc);
            for (int t = 0; t < 25; ++t) {
                const auto before = states;
                std::vector<double> w(states.size(), 0.0);
                for (int k : sc.eligible)
                    w[k] = before[k].queue * before[k].window.r_bar();
                const SlotOutcome out = dpp_slot(sc, states, cfg.n_init + t);
                check_outcome(sc, out, before, states);
                for (int k : sc.assoc.unclustered())
                    CHECK(out.arrivals[k] == 0.0);
                if (kind == SchedulerKind::pf)
                    for (int k : sc.eligible)
                        CHECK(out.arrivals[k] * before[k].queue <= cfg.dpp_v * (1.0 + 1e-12));

                if (mode == PilotMode::fixed) {
                    CHECK(independent(out.active, sc.static_graph));
                } else {
                    const auto pre = preselect(w, sc.eligible, cfg.k_tilde);
                    for (int k : out.active)
                        CHECK(std::binary_search(pre.begin(), pre.end(), k));
                    const auto pr = reassign_pilots(pre, sc.assoc, sc.lss, cfg, pre);
                    CHECK(independent(out.active, pr.graph));
                }
            }
        }
    }
}

TEST_CASE("round robin windows")
{
    const Scenario sc = build_scenario(conflict_free_config(5, 2));
    REQUIRE(sc.eligible.size() == 5);
    auto states = started(sc);
    const std::vector<std::vector<int>> expected{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {0, 1}};
    for (int r = 0; r < 6; ++r) {
        const auto before = states;
        const SlotOutcome out = baseline_slot(SchedulerKind::round_robin, sc, states, 100 + r, r);
        CHECK(out.active == expected[r]);
        CHECK(out.arrivals.empty());
        check_outcome(sc, out, before, states);
    }
}

TEST_CASE("max-sum-rate with equal rates picks the lowest indices")
{
    const Scenario sc = build_scenario(conflict_free_config(6, 3));
    auto states = initial_states(sc.cfg);
    for (auto& s : states)
        s.window.record(1.0);
    const SlotOutcome out = baseline_slot(SchedulerKind::max_sum_rate, sc, states, 7, 0);
    CHECK(out.active == std::vector<int>{0, 1, 2});
}

TEST_CASE("baselines are reproducible and conflict free")
{
    const Scenario sc = build_scenario(tiny_config());
    for (SchedulerKind kind : {SchedulerKind::random, SchedulerKind::round_robin, SchedulerKind::max_sum_rate}) {
        auto a = started(sc);
        auto b = a;
        for (int t = 0; t < 10; ++t) {
            const auto before = a;
            const SlotOutcome oa = baseline_slot(kind, sc, a, 30 + t, t);
            const SlotOutcome ob = baseline_slot(kind, sc, b, 30 + t, t);
            CHECK(oa.active == ob.active);
            CHECK(oa.service == ob.service);
            check_outcome(sc, oa, before, a);
        }
    }
    auto states = started(sc);
    CHECK_THROWS_AS(baseline_slot(SchedulerKind::pf, sc, states, 0, 0), std::invalid_argument);
}

TEST_CASE("retry reassignment drops residual conflicts")
{
    SimConfig cfg = tiny_config();
    cfg.tau_p = 1;
    cfg.pilot_retries = 3;
    const Scenario sc = build_scenario(cfg);
    Rng rng(3);
    const std::vector<int> chosen(sc.eligible.begin(), sc.eligible.begin() + 6);
    const PilotedSet kept = reassign_with_retries(sc, chosen, rng, false);
    CHECK(kept.active == chosen);
    Rng rng2(3);
    const PilotedSet ps = reassign_with_retries(sc, chosen, rng2);
    CHECK(ps.graph.edges() == kept.graph.edges());
    CHECK(independent(ps.active, ps.graph));
    CHECK(std::includes(chosen.begin(), chosen.end(), ps.active.begin(), ps.active.end()));
    // Every dropped UE is the larger endpoint of a residual edge.
    for (int k : chosen) {
        if (std::binary_search(ps.active.begin(), ps.active.end(), k))
            continue;
        const auto edges = ps.graph.edges();
        CHECK(std::any_of(edges.begin(), edges.end(), [&](const auto& e) { return e.second == k; }));
    }
}
