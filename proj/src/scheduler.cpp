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

#include "cfmimo/scheduler.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "cfmimo/rng.hpp"

namespace cfmimo {

Scenario build_scenario(const SimConfig& cfg)
{
    cfg.validate();
    Scenario sc;
    sc.cfg = cfg;
    Rng placement = make_stream(cfg.seed, Stream::ue_positions);
    sc.geometry = place_topology(cfg, placement);
    sc.snr = calibrate_snr(cfg);
    sc.lss = draw_large_scale(sc.geometry, cfg, sc.snr);
    sc.assoc = form_clusters(sc.lss, cfg);
    for (int k = 0; k < sc.assoc.num_ues(); ++k)
        if (sc.assoc.has_cluster(k))
            sc.eligible.push_back(k);
    if (cfg.pilot_mode == PilotMode::fixed) {
        sc.assoc = assign_pilots_fixed(std::move(sc.assoc), sc.lss, cfg);
        sc.static_graph = build_conflict_graph(sc.assoc, sc.assoc.pilots, sc.lss, cfg.eta_f, sc.eligible);
    }
    sc.grid = DftGrid(cfg.antennas_per_ru);
    return sc;
}

std::vector<UeSchedulerState> initial_states(const SimConfig& cfg)
{
    UeSchedulerState proto;
    proto.window = RateWindow(static_cast<std::size_t>(cfg.window_len));
    return std::vector<UeSchedulerState>(static_cast<std::size_t>(cfg.num_ues()), proto);
}

std::vector<double> virtual_arrivals_pf(std::span<const double> queues, double v, double a_max)
{
    std::vector<double> a(queues.size());
    for (std::size_t k = 0; k < queues.size(); ++k)
        a[k] = queues[k] > 0.0 ? std::min(v / queues[k], a_max) : a_max;
    return a;
}

std::vector<double> virtual_arrivals_hf(std::span<const double> queues, double v, double a_max)
{
    double total = 0.0;
    for (double q : queues)
        total += q;
    return std::vector<double>(queues.size(), total < v ? a_max : 0.0);
}

double realized_service(double mi, double rate, double data_fraction)
{
    return mi > rate ? data_fraction * rate : 0.0;
}

double queue_update(double queue, double service, double arrival)
{
    return std::max(queue - service, 0.0) + arrival;
}

MutualInfoRecord transmit(const Scenario& sc, std::span<const int> active, std::span<const int> pilots,
                          std::int64_t slot)
{
    const SimConfig& cfg = sc.cfg;
    const SlotStreams streams{cfg.seed, slot};
    const ChannelBlock truth = sample_channels(sc.lss, cfg.rbs_per_subchannel, active, streams);
    const EstimatedChannelBlock est =
        estimate_channels(truth, sc.assoc, active, pilots, sc.snr, cfg.tau_p, streams);
    const CombinerSet comb = compute_combiners(est, sc.assoc, active, sc.snr);
    return cfg.direction == LinkDirection::ul ? ul_mutual_information(truth, comb, sc.snr)
                                              : dl_mutual_information(truth, comb, sc.snr);
}

PilotedSet reassign_with_retries(const Scenario& sc, std::span<const int> chosen, Rng& rng, bool drop_conflicts)
{
    std::vector<int> order(chosen.begin(), chosen.end());
    std::sort(order.begin(), order.end());
    const std::vector<int> sorted = order;

    PilotReassignment best = reassign_pilots(sorted, sc.assoc, sc.lss, sc.cfg, order);
    for (int attempt = 0; attempt < sc.cfg.pilot_retries && best.graph.num_edges() > 0; ++attempt) {
        std::shuffle(order.begin(), order.end(), rng);
        PilotReassignment next = reassign_pilots(sorted, sc.assoc, sc.lss, sc.cfg, order);
        if (next.graph.num_edges() < best.graph.num_edges())
            best = std::move(next);
    }

    PilotedSet out;
    out.pilots = std::move(best.pilots);
    out.graph = std::move(best.graph);
    std::vector<char> dropped(static_cast<std::size_t>(sc.assoc.num_ues()), 0);
    if (drop_conflicts)
        for (const auto& [a, b] : out.graph.edges())
            if (!dropped[a] && !dropped[b])
                dropped[b] = 1;
    for (int k : sorted)
        if (!dropped[k])
            out.active.push_back(k);
    return out;
}

namespace {

std::vector<double> queues_of(const std::vector<UeSchedulerState>& states)
{
    std::vector<double> q(states.size());
    for (std::size_t k = 0; k < states.size(); ++k)
        q[k] = states[k].queue;
    return q;
}

// Transmits, fills rates / MI / service for `out.active` and records the
// realized samples. Queues and served totals are updated only when
// `scheduling` is set.
void run_transmission(const Scenario& sc, std::vector<UeSchedulerState>& states, std::span<const int> pilots,
                      SlotOutcome& out, bool scheduling)
{
    const std::size_t K = states.size();
    out.service.assign(K, 0.0);
    const std::size_t n = out.active.size();
    out.rates.assign(n, 0.0);
    out.realized_mi.assign(n, 0.0);
    out.outage.assign(n, 0);
    if (n > 0) {
        const MutualInfoRecord mi = transmit(sc, out.active, pilots, out.slot);
        const double data_fraction = sc.cfg.data_fraction();
        for (std::size_t i = 0; i < n; ++i) {
            const int k = out.active[i];
            const double r = states[k].window.empty() ? 0.0 : states[k].window.r_star();
            out.rates[i] = r;
            out.realized_mi[i] = mi.value[i];
            out.outage[i] = !(mi.value[i] > r);
            out.service[k] = scheduling ? realized_service(mi.value[i], r, data_fraction) : 0.0;
        }
    }
    if (scheduling) {
        for (std::size_t k = 0; k < K; ++k) {
            const double a = out.arrivals.empty() ? 0.0 : out.arrivals[k];
            if (!out.arrivals.empty())
                states[k].queue = queue_update(states[k].queue, out.service[k], a);
            states[k].served_bits += out.service[k];
        }
        for (int k : out.active)
            ++states[k].active_count;
    }
    for (std::size_t i = 0; i < n; ++i)
        states[out.active[i]].window.record(out.realized_mi[i]);
}

std::vector<double> dpp_weights(const Scenario& sc, const std::vector<UeSchedulerState>& states)
{
    std::vector<double> w(states.size(), 0.0);
    for (int k : sc.eligible)
        if (!states[k].window.empty())
            w[k] = states[k].queue * states[k].window.r_bar();
    return w;
}

}  // namespace

SlotOutcome dpp_slot(const Scenario& sc, std::vector<UeSchedulerState>& states, std::int64_t slot)
{
    const SimConfig& cfg = sc.cfg;
    SlotOutcome out;
    out.slot = slot;
    const std::vector<double> queues = queues_of(states);
    out.arrivals = cfg.scheduler == SchedulerKind::hf ? virtual_arrivals_hf(queues, cfg.dpp_v, cfg.a_max)
                                                      : virtual_arrivals_pf(queues, cfg.dpp_v, cfg.a_max);
    for (int k = 0; k < sc.assoc.num_ues(); ++k)
        if (!sc.assoc.has_cluster(k))
            out.arrivals[k] = 0.0;

    std::vector<double> w = dpp_weights(sc, states);
    if (cfg.pilot_mode == PilotMode::fixed) {
        SelectionResult sel = solve_selection(w, sc.static_graph, cfg.k_act, {}, static_cast<std::size_t>(cfg.node_budget));
        out.active = std::move(sel.selected);
        out.suboptimal = sel.suboptimal;
        run_transmission(sc, states, sc.assoc.pilots, out, true);
        return out;
    }

    const std::vector<int> pre = preselect(w, sc.eligible, cfg.k_tilde);
    PilotReassignment pr = reassign_pilots(pre, sc.assoc, sc.lss, cfg, pre);
    std::vector<double> w_pre(w.size(), 0.0);
    for (int k : pre)
        w_pre[k] = w[k];
    SelectionResult sel = solve_selection(w_pre, pr.graph, cfg.k_act, {}, static_cast<std::size_t>(cfg.node_budget));
    out.active = std::move(sel.selected);
    out.suboptimal = sel.suboptimal;
    run_transmission(sc, states, pr.pilots, out, true);
    return out;
}

SlotOutcome baseline_slot(SchedulerKind kind, const Scenario& sc, std::vector<UeSchedulerState>& states,
                          std::int64_t slot, std::int64_t round)
{
    const SimConfig& cfg = sc.cfg;
    SlotOutcome out;
    out.slot = slot;
    Rng rng = make_stream(cfg.seed, Stream::selection, {static_cast<std::uint64_t>(slot)});
    const auto n_elig = static_cast<std::int64_t>(sc.eligible.size());
    const std::int64_t take = std::min<std::int64_t>(cfg.k_act, n_elig);

    std::vector<int> chosen;
    PilotedSet ps;
    switch (kind) {
    case SchedulerKind::random: {
        chosen = sc.eligible;
        std::shuffle(chosen.begin(), chosen.end(), rng);
        chosen.resize(static_cast<std::size_t>(take));
        ps = reassign_with_retries(sc, chosen, rng);
        break;
    }
    case SchedulerKind::round_robin: {
        for (std::int64_t i = 0; i < take; ++i)
            chosen.push_back(sc.eligible[static_cast<std::size_t>((round + i) % n_elig)]);
        ps = reassign_with_retries(sc, chosen, rng);
        break;
    }
    case SchedulerKind::max_sum_rate: {
        std::vector<double> w(states.size(), 0.0);
        for (int k : sc.eligible)
            if (!states[k].window.empty())
                w[k] = states[k].window.r_bar();
        chosen = preselect(w, sc.eligible, cfg.k_tilde);
        ps = reassign_with_retries(sc, chosen, rng, false);
        std::vector<double> w_pre(w.size(), 0.0);
        for (int k : chosen)
            w_pre[k] = w[k];
        SelectionResult sel = solve_selection(w_pre, ps.graph, cfg.k_act, {}, static_cast<std::size_t>(cfg.node_budget));
        ps.active = std::move(sel.selected);
        out.suboptimal = sel.suboptimal;
        break;
    }
    default:
        throw std::invalid_argument("baseline_slot: not a baseline scheduler: " + to_string(kind));
    }
    out.active = std::move(ps.active);
    run_transmission(sc, states, ps.pilots, out, true);
    return out;
}

SlotOutcome startup_slot(const Scenario& sc, std::vector<UeSchedulerState>& states, std::int64_t slot)
{
    const SimConfig& cfg = sc.cfg;
    SlotOutcome out;
    out.slot = slot;
    Rng rng = make_stream(cfg.seed, Stream::selection, {static_cast<std::uint64_t>(slot)});
    std::vector<int> order = sc.eligible;
    std::shuffle(order.begin(), order.end(), rng);

    if (cfg.pilot_mode == PilotMode::fixed) {
        std::vector<char> taken(states.size(), 0);
        for (int k : order) {
            if (static_cast<int>(out.active.size()) >= cfg.k_act)
                break;
            const auto& nb = sc.static_graph.neighbors(k);
            if (std::none_of(nb.begin(), nb.end(), [&](int j) { return taken[j] != 0; })) {
                taken[k] = 1;
                out.active.push_back(k);
            }
        }
        std::sort(out.active.begin(), out.active.end());
        run_transmission(sc, states, sc.assoc.pilots, out, false);
        return out;
    }

    order.resize(std::min(order.size(), static_cast<std::size_t>(cfg.k_act)));
    PilotedSet ps = reassign_with_retries(sc, order, rng);
    out.active = std::move(ps.active);
    run_transmission(sc, states, ps.pilots, out, false);
    return out;
}

void pad_cold_windows(const Scenario& sc, std::vector<UeSchedulerState>& states)
{
    double floor = std::numeric_limits<double>::infinity();
    for (const auto& s : states)
        for (double v : s.window.samples())
            floor = std::min(floor, v);
    if (floor == std::numeric_limits<double>::infinity())
        floor = 0.0;
    for (int k : sc.eligible)
        if (states[k].window.empty())
            states[k].window.record(floor);
}

}  // namespace cfmimo
