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

#ifndef CFMIMO_RATECTL_HPP
#define CFMIMO_RATECTL_HPP

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace cfmimo {

struct OutageRate {
    double r_star = 0.0;
    double r_bar = 0.0;
};

// P(r) = |{s : s >= r}| / n over the given samples. Throws on an empty span.
double empirical_ccdf(std::span<const double> samples, double r);

// argmax_r r P(r) over the distinct sample values, smallest rate on ties.
// Throws on an empty span.
OutageRate optimal_outage_rate(std::span<const double> samples);

// Sliding window of the last N mutual-information samples of one UE.
class RateWindow {
public:
    explicit RateWindow(std::size_t capacity = 100);

    // Appends a sample (evicting the oldest at capacity) and refreshes
    // r_star / r_bar. Throws std::invalid_argument for negative or NaN values.
    void record(double value);

    std::size_t capacity() const { return buffer_.size(); }
    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    // Samples oldest first.
    std::vector<double> samples() const;

    double ccdf(double r) const;
    double r_star() const { return rate_.r_star; }
    double r_bar() const { return rate_.r_bar; }

private:
    std::vector<double> buffer_;
    std::size_t head_ = 0;  // next write position
    std::size_t size_ = 0;
    OutageRate rate_;
};

// CSV dump "ue_id,sample_index,value", samples oldest first.
void write_windows_csv(std::ostream& out, std::span<const RateWindow> windows);

}  // namespace cfmimo

#endif
