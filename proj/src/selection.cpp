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

#include "cfmimo/selection.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cfmimo {

std::vector<int> rank_order(std::span<const double> weights, std::span<const int> candidates)
{
    std::vector<int> order(candidates.begin(), candidates.end());
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (weights[a] != weights[b])
            return weights[a] > weights[b];
        return a < b;
    });
    return order;
}

namespace {

class BranchAndBound {
public:
    BranchAndBound(std::vector<int> order, std::span<const double> weights, const ConflictGraph& graph,
                   int cap, std::size_t budget)
        : order_(std::move(order)), cap_(cap), budget_(budget)
    {
        const int n = static_cast<int>(order_.size());
        w_.resize(n);
        later_.resize(n);
        blocked_.assign(n, 0);
        matched_.assign(n, 0);
        if (graph.num_vertices() > 0) {
            std::vector<int> rank(static_cast<std::size_t>(graph.num_vertices()), -1);
            for (int i = 0; i < n; ++i)
                rank[order_[i]] = i;
            for (int i = 0; i < n; ++i)
                for (int nb : graph.neighbors(order_[i]))
                    if (rank[nb] > i)
                        later_[i].push_back(rank[nb]);
            for (auto& l : later_)
                std::sort(l.begin(), l.end());
        }
        for (int i = 0; i < n; ++i)
            w_[i] = weights[order_[i]];
    }

    SelectionResult run()
    {
        dfs(0, 0, 0.0);
        SelectionResult out;
        for (int i : best_)
            out.selected.push_back(order_[i]);
        std::sort(out.selected.begin(), out.selected.end());
        out.value = best_value_;
        out.suboptimal = aborted_;
        out.nodes = nodes_;
        return out;
    }

private:
    // Upper bound on what the vertices ranked pos and later can still add.
    double bound(int pos, int room)
    {
        ++stamp_;
        double total = 0.0;
        int taken = 0;
        const int n = static_cast<int>(order_.size());
        for (int i = pos; i < n && taken < room; ++i) {
            if (blocked_[i] > 0 || matched_[i] == stamp_)
                continue;
            total += w_[i];
            ++taken;
            for (int nb : later_[i])
                if (blocked_[nb] == 0 && matched_[nb] != stamp_) {
                    matched_[nb] = stamp_;
                    break;
                }
        }
        return total;
    }

    bool has_free_later_neighbor(int pos) const
    {
        return std::any_of(later_[pos].begin(), later_[pos].end(), [&](int nb) { return blocked_[nb] == 0; });
    }

    void dfs(int pos, int count, double value)
    {
        if (aborted_)
            return;
        if (++nodes_ > budget_ && have_incumbent_) {
            aborted_ = true;
            return;
        }
        const int n = static_cast<int>(order_.size());
        while (pos < n && blocked_[pos] > 0)
            ++pos;
        if (pos == n || count == cap_) {
            if (!have_incumbent_ || value > best_value_) {
                have_incumbent_ = true;
                best_value_ = value;
                best_ = chosen_;
            }
            return;
        }
        if (have_incumbent_ && value + bound(pos, cap_ - count) <= best_value_)
            return;

        chosen_.push_back(pos);
        for (int nb : later_[pos])
            ++blocked_[nb];
        dfs(pos + 1, count + 1, value + w_[pos]);
        for (int nb : later_[pos])
            --blocked_[nb];
        chosen_.pop_back();

        if (!has_free_later_neighbor(pos))
            return;
        dfs(pos + 1, count, value);
    }

    std::vector<int> order_;
    std::vector<double> w_;
    std::vector<std::vector<int>> later_;  // neighbors with larger rank
    std::vector<int> blocked_;             // number of chosen neighbors
    std::vector<unsigned> matched_;
    unsigned stamp_ = 0;
    std::vector<int> chosen_;
    std::vector<int> best_;
    double best_value_ = 0.0;
    bool have_incumbent_ = false;
    bool aborted_ = false;
    int cap_;
    std::size_t budget_;
    std::size_t nodes_ = 0;
};

}  // namespace

SelectionResult solve_selection(std::span<const double> weights, const ConflictGraph& graph, int cap,
                                std::span<const int> forced_zero, std::size_t node_budget)
{
    const int n = static_cast<int>(weights.size());
    if (graph.num_vertices() != 0 && graph.num_vertices() != n)
        throw std::invalid_argument("solve_selection: graph has " + std::to_string(graph.num_vertices()) +
                                    " vertices for " + std::to_string(n) + " weights");
    if (cap < 0)
        throw std::invalid_argument("solve_selection: cap must be >= 0");

    std::vector<char> excluded(static_cast<std::size_t>(n), 0);
    for (int v : forced_zero) {
        if (v < 0 || v >= n)
            throw std::out_of_range("solve_selection: forced-zero vertex out of range");
        excluded[v] = 1;
    }
    std::vector<int> candidates;
    for (int v = 0; v < n; ++v) {
        if (weights[v] < 0.0 || weights[v] != weights[v])
            throw std::invalid_argument("solve_selection: weights must be nonnegative");
        if (!excluded[v] && weights[v] > 0.0)
            candidates.push_back(v);
    }
    if (cap == 0 || candidates.empty())
        return {};
    return BranchAndBound(rank_order(weights, candidates), weights, graph, cap, node_budget).run();
}

std::vector<int> preselect(std::span<const double> weights, std::span<const int> candidates, int k_tilde)
{
    auto order = rank_order(weights, candidates);
    if (k_tilde < static_cast<int>(order.size()))
        order.resize(static_cast<std::size_t>(std::max(k_tilde, 0)));
    std::sort(order.begin(), order.end());
    return order;
}

}  // namespace cfmimo
