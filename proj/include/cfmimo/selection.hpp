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

#ifndef CFMIMO_SELECTION_HPP
#define CFMIMO_SELECTION_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "cfmimo/association.hpp"

namespace cfmimo {

struct SelectionResult {
    std::vector<int> selected;  // ascending
    double value = 0.0;         // weights summed in rank order
    bool suboptimal = false;    // node budget ran out; selected is the incumbent
    std::size_t nodes = 0;
};

// Rank order used for ties: weight descending, then index ascending.
std::vector<int> rank_order(std::span<const double> weights, std::span<const int> candidates);

// Maximum-weight independent set of the graph with at most cap members.
// Zero-weight and forced-zero vertices are never selected. Among optimal sets
// the one whose membership vector is lexicographically largest in rank order
// wins (prefer the heaviest, then lowest-index, UEs).
//
// Exact branch-and-bound: include-first DFS in rank order (the first leaf is
// the greedy solution), bounded by the top-r maxima of a greedy clique cover
// of the vertices still available.
SelectionResult solve_selection(std::span<const double> weights, const ConflictGraph& graph, int cap,
                                std::span<const int> forced_zero = {},
                                std::size_t node_budget = 1'000'000);

// The K~ candidates with the largest weights (ties to the smaller index), in
// ascending index order. Zero-weight candidates only pad.
std::vector<int> preselect(std::span<const double> weights, std::span<const int> candidates, int k_tilde);

}  // namespace cfmimo

#endif
