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

#ifndef CFMIMO_RNG_HPP
#define CFMIMO_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace cfmimo {

using Rng = std::mt19937_64;

// Purpose tags for independent random substreams.
enum class Stream : std::uint32_t {
    ue_positions = 1,
    large_scale = 2,
    calibration = 3,
    small_scale = 4,
    estimation_noise = 5,
    selection = 6,
    pilot_order = 7,
};

// Engine seeded from (seed, purpose, keys...). Streams with different keys
// are independent, so draws do not depend on evaluation order.
Rng make_stream(std::uint64_t seed, Stream purpose, std::initializer_list<std::uint64_t> keys = {});

// Circularly-symmetric complex normal draws; the variance is split equally
// between the real and imaginary parts.
class ComplexGaussian {
public:
    template <typename Engine>
    std::complex<double> operator()(Engine& rng, double variance = 1.0)
    {
        const double scale = std::sqrt(variance / 2.0);
        const double re = normal_(rng);
        const double im = normal_(rng);
        return {scale * re, scale * im};
    }

private:
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace cfmimo

#endif
