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

#ifndef CFMIMO_PHY_HPP
#define CFMIMO_PHY_HPP

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cfmimo/association.hpp"
#include "cfmimo/channel.hpp"

namespace cfmimo {

// Cluster-level fusion weight w_{l,k} from the local estimate and the local
// MMSE combiner, both given as M-vectors in the angular (DFT) basis.
using FusionWeightRule =
    std::function<double(const Eigen::VectorXcd& local_estimate, const Eigen::VectorXcd& local_combiner)>;

// w_{l,k} = ||h_hat_{l,k}||^2.
double energy_fusion_weight(const Eigen::VectorXcd& local_estimate, const Eigen::VectorXcd& local_combiner);

// Unit-norm overall combiners of the active UEs. The LM-vector of UE k on RB f
// is stored as its |C_k| non-zero M-blocks, in cluster order, each in the
// angular basis (the antenna-domain block is F v).
class CombinerSet {
public:
    CombinerSet() = default;
    CombinerSet(std::vector<int> active, const Association& assoc, int num_ues, int num_rbs, int antennas);

    const std::vector<int>& active() const { return active_; }
    int num_rbs() const { return num_rbs_; }
    int antennas() const { return antennas_; }

    // Position of `ue` in active(), or -1.
    int slot_of(int ue) const { return slot_[ue]; }

    const std::vector<int>& cluster(int pos) const { return *clusters_[pos]; }

    // Stacked blocks [w_1 v_1; ...; w_C v_C] for RB f (length M |C_k|).
    Eigen::Ref<const Eigen::VectorXcd> stacked(int pos, int rb) const { return vectors_[pos].col(rb); }
    Eigen::Ref<Eigen::VectorXcd> stacked(int pos, int rb) { return vectors_[pos].col(rb); }

    // w_{l,k} for the i-th RU of the cluster.
    double weight(int pos, int cluster_idx, int rb) const { return weights_[pos](cluster_idx, rb); }
    double& weight(int pos, int cluster_idx, int rb) { return weights_[pos](cluster_idx, rb); }

    // Dense angular-basis LM-vector, zero outside the cluster.
    Eigen::VectorXcd overall(int pos, int rb, int num_rus) const;

    // v^H h summed over the cluster of active UE `pos`, for UE `ue` in `h`.
    std::complex<double> gain(int pos, int rb, const ChannelTensor& h, int ue) const;

private:
    std::vector<int> active_;
    std::vector<int> slot_;
    std::vector<const std::vector<int>*> clusters_;
    std::vector<Eigen::MatrixXcd> vectors_;  // per active UE: (M |C_k|) x F
    std::vector<Eigen::MatrixXd> weights_;   // per active UE: |C_k| x F
    int num_rbs_ = 0;
    int antennas_ = 0;
};

// Per-RU local MMSE v_{l,k} = (sum_j h_hat_j h_hat_j^H + SNR^-1 I)^-1 h_hat_k
// over the RU's active served UEs, fused with `rule` and normalized to unit
// norm per RB. The system is solved on the DFT columns the estimates occupy;
// on all other columns the solution is zero. Throws std::logic_error for an
// all-zero overall vector.
CombinerSet compute_combiners(const EstimatedChannelBlock& est, const Association& assoc,
                              std::span<const int> active, double snr,
                              const FusionWeightRule& rule = energy_fusion_weight);

struct MutualInfoRecord {
    std::vector<int> ues;         // active UEs, same order as the combiner set
    std::vector<double> value;    // (1/F) sum_f log2(1 + SINR) [bit/s/Hz]
    Eigen::MatrixXd per_rb_sinr;  // |active| x F
};

// (1/F) sum_f log2(1 + sinr_f).
double mutual_information(std::span<const double> sinr_per_rb);

// G(a, b) = v_a^H h_b on RB f, over the active UEs in combiner order.
Eigen::MatrixXcd effective_gains(const ChannelBlock& truth, const CombinerSet& comb, int rb);

// UL: |v_k^H h_k|^2 / (SNR^-1 + sum_{j != k} |v_k^H h_j|^2) with true channels.
MutualInfoRecord ul_mutual_information(const ChannelBlock& truth, const CombinerSet& comb, double snr);

// DL with the UL combiners as equal-power precoders:
// |h_k^H v_k|^2 / (SNR^-1 + sum_{j != k} |h_k^H v_j|^2).
MutualInfoRecord dl_mutual_information(const ChannelBlock& truth, const CombinerSet& comb, double snr);

}  // namespace cfmimo

#endif
