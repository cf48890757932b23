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

#ifndef CFMIMO_SCHEDULER_HPP
#define CFMIMO_SCHEDULER_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "cfmimo/association.hpp"
#include "cfmimo/channel.hpp"
#include "cfmimo/config.hpp"
#include "cfmimo/geometry.hpp"
#include "cfmimo/phy.hpp"
#include "cfmimo/ratectl.hpp"
#include "cfmimo/selection.hpp"

namespace cfmimo {

// Everything about a run that stays fixed across slots.
struct Scenario {
    SimConfig cfg;
    NetworkGeometry geometry;
    double snr = 0.0;
    LargeScaleState lss;
    Association assoc;           // carries the fixed pilots in fixed mode
    ConflictGraph static_graph;  // fixed mode only, over the eligible UEs
    std::vector<int> eligible;   // UEs with a non-empty cluster
    DftGrid grid{1};
};

// Topology, SNR calibration, large-scale fading, clusters and (fixed mode)
// pilots plus conflict graph. Validates the config first.
Scenario build_scenario(const SimConfig& cfg);

struct UeSchedulerState {
    double queue = 0.0;
    RateWindow window;
    double served_bits = 0.0;  // sum of mu over scheduling slots
    std::int64_t active_count = 0;
};

std::vector<UeSchedulerState> initial_states(const SimConfig& cfg);

struct SlotOutcome {
    std::int64_t slot = 0;
    std::vector<int> active;           // ascending
    std::vector<double> rates;         // r* per active UE
    std::vector<double> realized_mi;   // per active UE
    std::vector<char> outage;          // per active UE
    std::vector<double> service;       // mu per UE (all UEs)
    std::vector<double> arrivals;      // per UE; empty for baselines and start-up
    bool suboptimal = false;           // selection hit its node budget
};

// a_k = min(V / Q_k, A_max), A_max when Q_k = 0.
std::vector<double> virtual_arrivals_pf(std::span<const double> queues, double v, double a_max);

// All A_max when sum Q < V, else all zero.
std::vector<double> virtual_arrivals_hf(std::span<const double> queues, double v, double a_max);

// (1 - tau_p / T) r 1{mi > r}.
double realized_service(double mi, double rate, double data_fraction);

// Q' = max(Q - mu, 0) + A.
double queue_update(double queue, double service, double arrival);

// Sample, estimate, combine and evaluate the active UEs of one slot.
MutualInfoRecord transmit(const Scenario& sc, std::span<const int> active, std::span<const int> pilots,
                          std::int64_t slot);

// Baseline pilot handling: greedy reassignment in ascending order, then
// random orders until conflict-free or the retry budget is spent (keeping the
// attempt with the fewest edges), then the larger index of every residual
// edge is dropped.
struct PilotedSet {
    std::vector<int> active;  // ascending
    std::vector<int> pilots;  // per UE
    ConflictGraph graph;      // over the chosen UEs, before drops
};
PilotedSet reassign_with_retries(const Scenario& sc, std::span<const int> chosen, Rng& rng,
                                 bool drop_conflicts = true);

// One DPP slot (arrivals, selection, transmission, queue and window update).
// `slot` is the global slot index.
SlotOutcome dpp_slot(const Scenario& sc, std::vector<UeSchedulerState>& states, std::int64_t slot);

// One baseline slot; `round` counts scheduling slots from zero (round robin).
SlotOutcome baseline_slot(SchedulerKind kind, const Scenario& sc, std::vector<UeSchedulerState>& states,
                          std::int64_t slot, std::int64_t round);

// One start-up slot: random conflict-respecting selection, windows only.
SlotOutcome startup_slot(const Scenario& sc, std::vector<UeSchedulerState>& states, std::int64_t slot);

// After start-up: eligible UEs with empty windows get one sample equal to
// the smallest sample recorded by any UE (zero if none).
void pad_cold_windows(const Scenario& sc, std::vector<UeSchedulerState>& states);

}  // namespace cfmimo

#endif
