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

#ifndef CFMIMO_ASSOCIATION_HPP
#define CFMIMO_ASSOCIATION_HPP

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cfmimo/config.hpp"
#include "cfmimo/geometry.hpp"

namespace cfmimo {

inline constexpr int kNoPilot = -1;

// User-centric clusters, their inverse map, and UL pilot indices (0-based).
struct Association {
    std::vector<std::vector<int>> clusters;  // per UE, sorted RU indices
    std::vector<std::vector<int>> served;    // per RU, sorted UE indices
    std::vector<int> pilots;                 // per UE, kNoPilot when unassigned

    int num_ues() const { return static_cast<int>(clusters.size()); }
    int num_rus() const { return static_cast<int>(served.size()); }
    bool has_cluster(int ue) const { return !clusters[ue].empty(); }

    // UEs whose cluster is empty; they are never scheduled.
    std::vector<int> unclustered() const;
};

// Undirected conflict graph over UE indices.
class ConflictGraph {
public:
    ConflictGraph() = default;
    explicit ConflictGraph(int num_vertices);

    // Adds {a, b}; self-loops and duplicates are ignored.
    void add_edge(int a, int b);

    int num_vertices() const { return static_cast<int>(adjacency_.size()); }
    bool has_edge(int a, int b) const;
    const std::vector<int>& neighbors(int v) const { return adjacency_[v]; }

    // Edges as (smaller, larger) pairs in lexicographic order.
    std::vector<std::pair<int, int>> edges() const;
    std::size_t num_edges() const;

private:
    std::vector<std::vector<int>> adjacency_;  // sorted
};

// Up to C_max RUs with the largest LSFC among those with
// beta >= eta / (M * SNR); ties go to the lower RU index.
Association form_clusters(const LargeScaleState& lss, const SimConfig& cfg);

// Frobenius norm of F_A^H F_B for orthonormal DFT grid columns, sqrt(|A n B|).
double subspace_overlap(const SupportSet& a, const SupportSet& b);

// Greedy min-conflict pilot assignment over `order`. Each UE takes the pilot
// with the fewest already-assigned conflicting UEs (smallest index on ties).
// Only UEs already holding a pilot in `pilots` count as conflicts.
void greedy_pilot_assignment(std::span<const int> order, const Association& assoc,
                             const LargeScaleState& lss, int tau_p, double eta_f,
                             std::vector<int>& pilots);

// Fixed mode: every UE gets a pilot, processed in ascending index order.
Association assign_pilots_fixed(Association assoc, const LargeScaleState& lss, const SimConfig& cfg);

// Edge {k, k'} for k, k' in `scope` iff they share an RU, hold the same
// pilot, and their supports overlap by more than eta_F at a shared RU.
ConflictGraph build_conflict_graph(const Association& assoc, std::span<const int> pilots,
                                   const LargeScaleState& lss, double eta_f,
                                   std::span<const int> scope);

struct PilotReassignment {
    std::vector<int> pilots;  // per UE; kNoPilot outside the preselected set
    ConflictGraph graph;      // over the preselected set only
};

// Greedy assignment restricted to `preselected`, visiting UEs in
// `attempt_order` (a permutation of `preselected`).
PilotReassignment reassign_pilots(std::span<const int> preselected, const Association& assoc,
                                  const LargeScaleState& lss, const SimConfig& cfg,
                                  std::span<const int> attempt_order);

// One "k k'" pair per line.
void write_edge_list(const ConflictGraph& graph, const std::string& path);

}  // namespace cfmimo

#endif
