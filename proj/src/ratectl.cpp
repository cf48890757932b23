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

#include "cfmimo/ratectl.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace cfmimo {

double empirical_ccdf(std::span<const double> samples, double r)
{
    if (samples.empty())
        throw std::invalid_argument("empirical_ccdf: empty sample window");
    const auto hits = std::count_if(samples.begin(), samples.end(), [r](double s) { return s >= r; });
    return static_cast<double>(hits) / static_cast<double>(samples.size());
}

OutageRate optimal_outage_rate(std::span<const double> samples)
{
    if (samples.empty())
        throw std::invalid_argument("optimal_outage_rate: empty sample window");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<double>(sorted.size());

    OutageRate best{sorted.front(), sorted.front()};
    double best_count = n;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i > 0 && sorted[i] == sorted[i - 1])
            continue;
        const double at_least = static_cast<double>(sorted.size() - i);
        if (sorted[i] * at_least > best.r_star * best_count) {
            best.r_star = sorted[i];
            best_count = at_least;
        }
    }
    best.r_bar = best.r_star * best_count / n;
    return best;
}

RateWindow::RateWindow(std::size_t capacity) : buffer_(capacity)
{
    if (capacity == 0)
        throw std::invalid_argument("RateWindow capacity must be positive");
}

void RateWindow::record(double value)
{
    if (!(value >= 0.0))
        throw std::invalid_argument(fmt::format("RateWindow::record: sample must be >= 0 (got {})", value));
    buffer_[head_] = value;
    head_ = (head_ + 1) % buffer_.size();
    size_ = std::min(size_ + 1, buffer_.size());
    rate_ = optimal_outage_rate(samples());
}

std::vector<double> RateWindow::samples() const
{
    std::vector<double> out;
    out.reserve(size_);
    const std::size_t start = (head_ + buffer_.size() - size_) % buffer_.size();
    for (std::size_t i = 0; i < size_; ++i)
        out.push_back(buffer_[(start + i) % buffer_.size()]);
    return out;
}

double RateWindow::ccdf(double r) const
{
    return empirical_ccdf(samples(), r);
}

void write_windows_csv(std::ostream& out, std::span<const RateWindow> windows)
{
    out << "ue_id,sample_index,value\n";
    for (std::size_t k = 0; k < windows.size(); ++k) {
        const auto s = windows[k].samples();
        for (std::size_t i = 0; i < s.size(); ++i)
            out << fmt::format("{},{},{:.17g}\n", k, i, s[i]);
    }
}

}  // namespace cfmimo
