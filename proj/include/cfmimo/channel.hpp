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

#ifndef CFMIMO_CHANNEL_HPP
#define CFMIMO_CHANNEL_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cfmimo/association.hpp"
#include "cfmimo/geometry.hpp"

namespace cfmimo {

// Orthonormal M-point DFT grid, [F]_{m,n} = exp(-j 2 pi m n / M) / sqrt(M).
class DftGrid {
public:
    explicit DftGrid(int antennas);

    int antennas() const { return static_cast<int>(matrix_.rows()); }
    const Eigen::MatrixXcd& matrix() const { return matrix_; }

    // F_S * coeffs for the columns selected by `support`.
    Eigen::VectorXcd synthesize(const SupportSet& support, const Eigen::VectorXcd& coeffs) const;

    // F_S (F_S^H x), without forming the M x M projector.
    Eigen::VectorXcd project(const SupportSet& support, const Eigen::VectorXcd& x) const;

private:
    Eigen::MatrixXcd matrix_;
};

// Per-(RB, RU, UE) channel vectors in the angular (DFT) basis. The vector of
// UE k at RU l is F_S c with S = support(l, k), so only the |S| coefficients
// c are stored. Storage is allocated per UE; UEs never touched read back as
// zero coefficients.
class ChannelTensor {
public:
    ChannelTensor() = default;
    ChannelTensor(const LargeScaleState& lss, int num_rbs);

    int num_rbs() const { return num_rbs_; }
    int num_rus() const { return lss_ ? lss_->num_rus() : 0; }
    int num_ues() const { return static_cast<int>(data_.size()); }
    int antennas() const { return lss_ ? lss_->antennas() : 0; }

    bool has(int ue) const { return !data_[ue].empty(); }
    const SupportSet& support(int ru, int ue) const { return lss_->support(ru, ue); }
    const LargeScaleState& large_scale() const { return *lss_; }

    // Coefficients on support(ru, ue).
    std::span<const std::complex<double>> coeffs(int rb, int ru, int ue) const;

    // Write access; allocates zeroed storage for the UE on first use.
    std::span<std::complex<double>> mut(int rb, int ru, int ue);

    // Antenna-domain M-vector F_S c.
    Eigen::VectorXcd antenna_vector(int rb, int ru, int ue, const DftGrid& grid) const;

    // ||F_S c||^2 = ||c||^2.
    double energy(int rb, int ru, int ue) const;

private:
    void allocate(int ue);

    const LargeScaleState* lss_ = nullptr;
    int num_rbs_ = 0;
    std::vector<std::vector<std::complex<double>>> data_;  // per UE: [ru][rb][i]
    std::vector<std::vector<std::size_t>> offsets_;        // per UE: start of each RU
    std::vector<std::complex<double>> zeros_;
};

// True channels h_{l,k}(t, f) of one slot.
struct ChannelBlock {
    std::int64_t slot = 0;
    ChannelTensor h;
};

// Estimates; zero wherever the UE is inactive or not served by the RU.
struct EstimatedChannelBlock {
    std::int64_t slot = 0;
    ChannelTensor h_hat;
};

// Random substreams for one slot.
struct SlotStreams {
    std::uint64_t seed = 0;
    std::int64_t slot = 0;
};

// h = sqrt(beta M / |S|) F_S nu with nu ~ CN(0, I), for every RU and RB of the
// listed UEs. Each UE draws from its own (slot, UE) substream. The tensor
// refers to `lss`, which must outlive it.
ChannelBlock sample_channels(const LargeScaleState& lss, int num_rbs, std::span<const int> ues,
                             SlotStreams streams);

// Pilot-matched, subspace-projected estimates
//   h_hat = P (h_k + sum_{co-pilot active i != k} h_i + z),
// z ~ CN(0, I / (tau_p SNR)) shared by all UEs on the same pilot at an RU.
// The noise is drawn in the angular basis, where it has the same law, and only
// on the DFT columns some served active UE of that pilot observes.
// `pilots` is indexed by UE. Throws std::logic_error if an active UE has no pilot.
EstimatedChannelBlock estimate_channels(const ChannelBlock& truth, const Association& assoc,
                                        std::span<const int> active, std::span<const int> pilots,
                                        double snr, int tau_p, SlotStreams streams);

}  // namespace cfmimo

#endif
