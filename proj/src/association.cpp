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

#include "cfmimo/association.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace cfmimo {

std::vector<int> Association::unclustered() const
{
    std::vector<int> out;
    for (int k = 0; k < num_ues(); ++k)
        if (clusters[k].empty())
            out.push_back(k);
    return out;
}

ConflictGraph::ConflictGraph(int num_vertices) : adjacency_(static_cast<std::size_t>(num_vertices)) {}

void ConflictGraph::add_edge(int a, int b)
{
    if (a == b)
        return;
    auto insert = [](std::vector<int>& list, int v) {
        auto it = std::lower_bound(list.begin(), list.end(), v);
        if (it == list.end() || *it != v)
            list.insert(it, v);
    };
    insert(adjacency_[a], b);
    insert(adjacency_[b], a);
}

bool ConflictGraph::has_edge(int a, int b) const
{
    const auto& list = adjacency_[a];
    return std::binary_search(list.begin(), list.end(), b);
}

std::vector<std::pair<int, int>> ConflictGraph::edges() const
{
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < num_vertices(); ++a)
        for (int b : adjacency_[a])
            if (a < b)
                out.emplace_back(a, b);
    return out;
}

std::size_t ConflictGraph::num_edges() const
{
    std::size_t twice = 0;
    for (const auto& list : adjacency_)
        twice += list.size();
    return twice / 2;
}

Association form_clusters(const LargeScaleState& lss, const SimConfig& cfg)
{
    const int L = lss.num_rus();
    const int K = lss.num_ues();
    const double threshold = cfg.eta / (lss.antennas() * lss.snr());

    Association assoc;
    assoc.clusters.resize(static_cast<std::size_t>(K));
    assoc.served.resize(static_cast<std::size_t>(L));
    assoc.pilots.assign(static_cast<std::size_t>(K), kNoPilot);

    std::vector<int> candidates;
    for (int k = 0; k < K; ++k) {
        candidates.clear();
        for (int l = 0; l < L; ++l)
            if (lss.beta(l, k) >= threshold)
                candidates.push_back(l);
        std::stable_sort(candidates.begin(), candidates.end(),
                         [&](int a, int b) { return lss.beta(a, k) > lss.beta(b, k); });
        if (static_cast<int>(candidates.size()) > cfg.cluster_max)
            candidates.resize(static_cast<std::size_t>(cfg.cluster_max));
        std::sort(candidates.begin(), candidates.end());
        assoc.clusters[k] = candidates;
        for (int l : candidates)
            assoc.served[l].push_back(k);
    }
    return assoc;
}

double subspace_overlap(const SupportSet& a, const SupportSet& b)
{
    std::size_t shared = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            ++shared;
            ++ia;
            ++ib;
        }
    }
    return std::sqrt(static_cast<double>(shared));
}

void greedy_pilot_assignment(std::span<const int> order, const Association& assoc,
                             const LargeScaleState& lss, int tau_p, double eta_f,
                             std::vector<int>& pilots)
{
    const int K = assoc.num_ues();
    if (static_cast<int>(pilots.size()) != K)
        throw std::invalid_argument("pilot vector does not match the UE count");

    // seen[k'] == k + 1 marks k' as already counted for UE k (union over RUs).
    std::vector<int> seen(static_cast<std::size_t>(K), 0);
    std::vector<int> count(static_cast<std::size_t>(tau_p));
    for (int k : order) {
        std::fill(count.begin(), count.end(), 0);
        for (int l : assoc.clusters[k]) {
            const SupportSet& own = lss.support(l, k);
            for (int other : assoc.served[l]) {
                const int p = pilots[other];
                if (other == k || p == kNoPilot || seen[other] == k + 1)
                    continue;
                if (subspace_overlap(own, lss.support(l, other)) > eta_f) {
                    seen[other] = k + 1;
                    ++count[p];
                }
            }
        }
        pilots[k] = static_cast<int>(std::min_element(count.begin(), count.end()) - count.begin());
    }
}

Association assign_pilots_fixed(Association assoc, const LargeScaleState& lss, const SimConfig& cfg)
{
    std::vector<int> order(static_cast<std::size_t>(assoc.num_ues()));
    for (int k = 0; k < assoc.num_ues(); ++k)
        order[k] = k;
    std::fill(assoc.pilots.begin(), assoc.pilots.end(), kNoPilot);
    greedy_pilot_assignment(order, assoc, lss, cfg.tau_p, cfg.eta_f, assoc.pilots);
    return assoc;
}

ConflictGraph build_conflict_graph(const Association& assoc, std::span<const int> pilots,
                                   const LargeScaleState& lss, double eta_f,
                                   std::span<const int> scope)
{
    const int K = assoc.num_ues();
    std::vector<char> in_scope(static_cast<std::size_t>(K), 0);
    for (int k : scope)
        in_scope[k] = 1;

    ConflictGraph graph(K);
    std::vector<int> members;
    for (int l = 0; l < assoc.num_rus(); ++l) {
        members.clear();
        for (int k : assoc.served[l])
            if (in_scope[k] && pilots[k] != kNoPilot)
                members.push_back(k);
        std::stable_sort(members.begin(), members.end(),
                         [&](int a, int b) { return pilots[a] < pilots[b]; });
        for (std::size_t i = 0; i < members.size(); ++i) {
            for (std::size_t j = i + 1; j < members.size() && pilots[members[j]] == pilots[members[i]]; ++j) {
                const int a = members[i];
                const int b = members[j];
                if (subspace_overlap(lss.support(l, a), lss.support(l, b)) > eta_f)
                    graph.add_edge(a, b);
            }
        }
    }
    return graph;
}

PilotReassignment reassign_pilots(std::span<const int> preselected, const Association& assoc,
                                  const LargeScaleState& lss, const SimConfig& cfg,
                                  std::span<const int> attempt_order)
{
    if (attempt_order.size() != preselected.size())
        throw std::invalid_argument("attempt order must be a permutation of the preselected set");
    {
        std::vector<int> a(preselected.begin(), preselected.end());
        std::vector<int> b(attempt_order.begin(), attempt_order.end());
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b)
            throw std::invalid_argument("attempt order must be a permutation of the preselected set");
    }

    PilotReassignment out;
    out.pilots.assign(static_cast<std::size_t>(assoc.num_ues()), kNoPilot);
    greedy_pilot_assignment(attempt_order, assoc, lss, cfg.tau_p, cfg.eta_f, out.pilots);
    out.graph = build_conflict_graph(assoc, out.pilots, lss, cfg.eta_f, preselected);
    return out;
}

void write_edge_list(const ConflictGraph& graph, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write conflict graph to '" + path + "'");
    for (const auto& [a, b] : graph.edges())
        out << a << ' ' << b << '\n';
}

}  // namespace cfmimo
