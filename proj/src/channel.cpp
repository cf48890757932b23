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

#include "cfmimo/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cfmimo/rng.hpp"

namespace cfmimo {

DftGrid::DftGrid(int antennas) : matrix_(antennas, antennas)
{
    const double norm = 1.0 / std::sqrt(static_cast<double>(antennas));
    for (int m = 0; m < antennas; ++m) {
        for (int n = 0; n < antennas; ++n) {
            // Reduce m*n mod M first so the phase stays exact for large grids.
            const double phase = -2.0 * std::numbers::pi * ((m * n) % antennas) / antennas;
            matrix_(m, n) = std::polar(norm, phase);
        }
    }
}

Eigen::VectorXcd DftGrid::synthesize(const SupportSet& support, const Eigen::VectorXcd& coeffs) const
{
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(matrix_.rows());
    for (std::size_t i = 0; i < support.size(); ++i)
        out.noalias() += coeffs(static_cast<Eigen::Index>(i)) * matrix_.col(support[i]);
    return out;
}

Eigen::VectorXcd DftGrid::project(const SupportSet& support, const Eigen::VectorXcd& x) const
{
    Eigen::VectorXcd coeffs(static_cast<Eigen::Index>(support.size()));
    for (std::size_t i = 0; i < support.size(); ++i)
        coeffs(static_cast<Eigen::Index>(i)) = matrix_.col(support[i]).dot(x);
    return synthesize(support, coeffs);
}

ChannelTensor::ChannelTensor(const LargeScaleState& lss, int num_rbs)
    : lss_(&lss),
      num_rbs_(num_rbs),
      data_(static_cast<std::size_t>(lss.num_ues())),
      offsets_(static_cast<std::size_t>(lss.num_ues())),
      zeros_(static_cast<std::size_t>(lss.antennas()))
{
}

void ChannelTensor::allocate(int ue)
{
    const int L = lss_->num_rus();
    auto& off = offsets_[ue];
    off.resize(static_cast<std::size_t>(L) + 1);
    off[0] = 0;
    for (int l = 0; l < L; ++l)
        off[l + 1] = off[l] + lss_->support(l, ue).size() * static_cast<std::size_t>(num_rbs_);
    data_[ue].assign(off[L], std::complex<double>{});
}

std::span<const std::complex<double>> ChannelTensor::coeffs(int rb, int ru, int ue) const
{
    const std::size_t s = lss_->support(ru, ue).size();
    if (!has(ue))
        return {zeros_.data(), s};
    return {data_[ue].data() + offsets_[ue][ru] + static_cast<std::size_t>(rb) * s, s};
}

std::span<std::complex<double>> ChannelTensor::mut(int rb, int ru, int ue)
{
    if (!has(ue))
        allocate(ue);
    const std::size_t s = lss_->support(ru, ue).size();
    return {data_[ue].data() + offsets_[ue][ru] + static_cast<std::size_t>(rb) * s, s};
}

Eigen::VectorXcd ChannelTensor::antenna_vector(int rb, int ru, int ue, const DftGrid& grid) const
{
    const auto c = coeffs(rb, ru, ue);
    return grid.synthesize(support(ru, ue), Eigen::Map<const Eigen::VectorXcd>(c.data(), static_cast<Eigen::Index>(c.size())));
}

double ChannelTensor::energy(int rb, int ru, int ue) const
{
    double e = 0.0;
    for (const auto& c : coeffs(rb, ru, ue))
        e += std::norm(c);
    return e;
}

ChannelBlock sample_channels(const LargeScaleState& lss, int num_rbs, std::span<const int> ues,
                             SlotStreams streams)
{
    const int L = lss.num_rus();
    const int M = lss.antennas();
    ChannelBlock block{streams.slot, ChannelTensor(lss, num_rbs)};

    ComplexGaussian cn;
    for (int k : ues) {
        Rng rng = make_stream(streams.seed, Stream::small_scale,
                              {static_cast<std::uint64_t>(streams.slot), static_cast<std::uint64_t>(k)});
        for (int l = 0; l < L; ++l) {
            const double scale = std::sqrt(lss.beta(l, k) * M / static_cast<double>(lss.support(l, k).size()));
            for (int f = 0; f < num_rbs; ++f)
                for (auto& c : block.h.mut(f, l, k))
                    c = scale * cn(rng);
        }
    }
    return block;
}

EstimatedChannelBlock estimate_channels(const ChannelBlock& truth, const Association& assoc,
                                        std::span<const int> active, std::span<const int> pilots,
                                        double snr, int tau_p, SlotStreams streams)
{
    const int L = truth.h.num_rus();
    const int F = truth.h.num_rbs();
    const int M = truth.h.antennas();
    const int K = truth.h.num_ues();

    std::vector<char> is_active(static_cast<std::size_t>(K), 0);
    for (int k : active) {
        if (pilots[k] == kNoPilot || pilots[k] < 0 || pilots[k] >= tau_p)
            throw std::logic_error("active UE " + std::to_string(k) + " has no valid pilot");
        is_active[k] = 1;
    }

    EstimatedChannelBlock est{streams.slot, ChannelTensor(truth.h.large_scale(), F)};
    const double noise_var = 1.0 / (tau_p * snr);
    ComplexGaussian cn;

    // Angular matched-filter outputs, [pilot][rb][column], at one RU.
    std::vector<std::complex<double>> y(static_cast<std::size_t>(tau_p) * F * M);
    std::vector<char> observed(static_cast<std::size_t>(tau_p) * M);
    auto at = [&](int p, int f, int m) -> std::complex<double>& {
        return y[(static_cast<std::size_t>(p) * F + f) * M + m];
    };
    for (int l = 0; l < L; ++l) {
        std::fill(observed.begin(), observed.end(), 0);
        bool any = false;
        for (int k : assoc.served[l]) {
            if (!is_active[k])
                continue;
            any = true;
            for (int m : truth.h.support(l, k))
                observed[static_cast<std::size_t>(pilots[k]) * M + m] = 1;
        }
        if (!any)
            continue;

        Rng rng = make_stream(streams.seed, Stream::estimation_noise,
                              {static_cast<std::uint64_t>(streams.slot), static_cast<std::uint64_t>(l)});
        for (int p = 0; p < tau_p; ++p)
            for (int f = 0; f < F; ++f)
                for (int m = 0; m < M; ++m)
                    at(p, f, m) = observed[static_cast<std::size_t>(p) * M + m] ? cn(rng, noise_var)
                                                                                : std::complex<double>{};
        for (int i : active) {
            const SupportSet& s = truth.h.support(l, i);
            for (int f = 0; f < F; ++f) {
                const auto c = truth.h.coeffs(f, l, i);
                for (std::size_t j = 0; j < s.size(); ++j)
                    at(pilots[i], f, s[j]) += c[j];
            }
        }
        for (int k : assoc.served[l]) {
            if (!is_active[k])
                continue;
            const SupportSet& s = truth.h.support(l, k);
            for (int f = 0; f < F; ++f) {
                auto out = est.h_hat.mut(f, l, k);
                for (std::size_t j = 0; j < s.size(); ++j)
                    out[j] = at(pilots[k], f, s[j]);
            }
        }
    }
    return est;
}

}  // namespace cfmimo
