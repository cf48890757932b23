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

#include "cfmimo/phy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace cfmimo {

double energy_fusion_weight(const Eigen::VectorXcd& local_estimate, const Eigen::VectorXcd& /*local_combiner*/)
{
    return local_estimate.squaredNorm();
}

CombinerSet::CombinerSet(std::vector<int> active, const Association& assoc, int num_ues, int num_rbs, int antennas)
    : active_(std::move(active)),
      slot_(static_cast<std::size_t>(num_ues), -1),
      num_rbs_(num_rbs),
      antennas_(antennas)
{
    clusters_.reserve(active_.size());
    vectors_.reserve(active_.size());
    weights_.reserve(active_.size());
    for (std::size_t i = 0; i < active_.size(); ++i) {
        const int k = active_[i];
        slot_[k] = static_cast<int>(i);
        const auto& c = assoc.clusters[k];
        clusters_.push_back(&c);
        vectors_.push_back(Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(c.size()) * antennas, num_rbs));
        weights_.push_back(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(c.size()), num_rbs));
    }
}

Eigen::VectorXcd CombinerSet::overall(int pos, int rb, int num_rus) const
{
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(num_rus) * antennas_);
    const auto& c = cluster(pos);
    for (std::size_t i = 0; i < c.size(); ++i)
        out.segment(static_cast<Eigen::Index>(c[i]) * antennas_, antennas_) =
            vectors_[pos].col(rb).segment(static_cast<Eigen::Index>(i) * antennas_, antennas_);
    return out;
}

std::complex<double> CombinerSet::gain(int pos, int rb, const ChannelTensor& h, int ue) const
{
    std::complex<double> acc = 0.0;
    const auto& c = cluster(pos);
    const auto& v = vectors_[pos];
    for (std::size_t i = 0; i < c.size(); ++i) {
        const SupportSet& s = h.support(c[i], ue);
        const auto coeffs = h.coeffs(rb, c[i], ue);
        const Eigen::Index base = static_cast<Eigen::Index>(i) * antennas_;
        for (std::size_t j = 0; j < s.size(); ++j)
            acc += std::conj(v(base + s[j], rb)) * coeffs[j];
    }
    return acc;
}

CombinerSet compute_combiners(const EstimatedChannelBlock& est, const Association& assoc,
                              std::span<const int> active, double snr, const FusionWeightRule& rule)
{
    const int F = est.h_hat.num_rbs();
    const int M = est.h_hat.antennas();
    const int K = est.h_hat.num_ues();
    CombinerSet comb(std::vector<int>(active.begin(), active.end()), assoc, K, F, M);

    std::vector<int> local;
    std::vector<int> used;                       // DFT columns occupied at this RU
    std::vector<int> column_slot(static_cast<std::size_t>(M), -1);
    Eigen::MatrixXcd H, R, V;
    Eigen::VectorXcd h_hat(M), v(M);
    for (int l = 0; l < assoc.num_rus(); ++l) {
        local.clear();
        for (int k : assoc.served[l])
            if (comb.slot_of(k) >= 0)
                local.push_back(k);
        if (local.empty())
            continue;

        used.clear();
        for (int k : local)
            for (int m : est.h_hat.support(l, k))
                if (column_slot[m] < 0) {
                    column_slot[m] = 0;
                    used.push_back(m);
                }
        std::sort(used.begin(), used.end());
        for (std::size_t u = 0; u < used.size(); ++u)
            column_slot[used[u]] = static_cast<int>(u);
        const auto n_used = static_cast<Eigen::Index>(used.size());
        const auto n_local = static_cast<Eigen::Index>(local.size());

        for (int f = 0; f < F; ++f) {
            H.setZero(n_used, n_local);
            for (Eigen::Index j = 0; j < n_local; ++j) {
                const SupportSet& s = est.h_hat.support(l, local[j]);
                const auto c = est.h_hat.coeffs(f, l, local[j]);
                for (std::size_t i = 0; i < s.size(); ++i)
                    H(column_slot[s[i]], j) = c[i];
            }
            R = H * H.adjoint();
            R.diagonal().array() += 1.0 / snr;
            V = R.llt().solve(H);
            for (Eigen::Index j = 0; j < n_local; ++j) {
                const int k = local[j];
                const int pos = comb.slot_of(k);
                const auto& c = assoc.clusters[k];
                const int ci = static_cast<int>(std::lower_bound(c.begin(), c.end(), l) - c.begin());
                h_hat.setZero();
                v.setZero();
                for (Eigen::Index u = 0; u < n_used; ++u) {
                    h_hat(used[u]) = H(u, j);
                    v(used[u]) = V(u, j);
                }
                const double w = rule(h_hat, v);
                comb.weight(pos, ci, f) = w;
                comb.stacked(pos, f).segment(static_cast<Eigen::Index>(ci) * M, M) = w * v;
            }
        }
        for (int m : used)
            column_slot[m] = -1;
    }

    for (std::size_t pos = 0; pos < active.size(); ++pos) {
        for (int f = 0; f < F; ++f) {
            auto vec = comb.stacked(static_cast<int>(pos), f);
            const double norm = vec.norm();
            if (!(norm > 0.0))
                throw std::logic_error("UE " + std::to_string(active[pos]) +
                                       " has an all-zero combining vector (empty cluster?)");
            vec /= norm;
        }
    }
    return comb;
}

double mutual_information(std::span<const double> sinr_per_rb)
{
    double sum = 0.0;
    for (double s : sinr_per_rb)
        sum += std::log2(1.0 + s);
    return sinr_per_rb.empty() ? 0.0 : sum / static_cast<double>(sinr_per_rb.size());
}

Eigen::MatrixXcd effective_gains(const ChannelBlock& truth, const CombinerSet& comb, int rb)
{
    const auto& active = comb.active();
    const auto n = static_cast<Eigen::Index>(active.size());
    const int M = comb.antennas();
    const int L = truth.h.num_rus();

    // Per RU: (position in active, index of the RU within that UE's cluster).
    std::vector<std::vector<std::pair<int, int>>> rows(static_cast<std::size_t>(L));
    for (Eigen::Index a = 0; a < n; ++a) {
        const auto& c = comb.cluster(static_cast<int>(a));
        for (std::size_t i = 0; i < c.size(); ++i)
            rows[c[i]].emplace_back(static_cast<int>(a), static_cast<int>(i));
    }

    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(n, n);
    // Conjugated combiner blocks of the RU, one column per row of G.
    Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> vc;
    for (int l = 0; l < L; ++l) {
        const auto& rl = rows[l];
        if (rl.empty())
            continue;
        const auto nr = static_cast<Eigen::Index>(rl.size());
        vc.resize(M, nr);
        for (Eigen::Index r = 0; r < nr; ++r) {
            const auto [a, i] = rl[r];
            vc.col(r) = comb.stacked(a, rb).segment(static_cast<Eigen::Index>(i) * M, M).conjugate();
        }
        for (Eigen::Index b = 0; b < n; ++b) {
            const SupportSet& s = truth.h.support(l, active[b]);
            const auto c = truth.h.coeffs(rb, l, active[b]);
            for (std::size_t j = 0; j < s.size(); ++j) {
                const auto row = vc.row(s[j]);
                for (Eigen::Index r = 0; r < nr; ++r)
                    G(rl[r].first, b) += row(r) * c[j];
            }
        }
    }
    return G;
}

namespace {

MutualInfoRecord mutual_information_from_gains(const ChannelBlock& truth, const CombinerSet& comb,
                                               double snr, bool downlink)
{
    const int F = comb.num_rbs();
    const auto n = static_cast<Eigen::Index>(comb.active().size());
    MutualInfoRecord rec;
    rec.ues = comb.active();
    rec.per_rb_sinr.resize(n, F);
    for (int f = 0; f < F; ++f) {
        const Eigen::MatrixXd power = effective_gains(truth, comb, f).cwiseAbs2();
        for (Eigen::Index k = 0; k < n; ++k) {
            const double leak = downlink ? power.col(k).sum() : power.row(k).sum();
            const double interference = leak - power(k, k);
            rec.per_rb_sinr(k, f) = power(k, k) / (1.0 / snr + std::max(interference, 0.0));
        }
    }
    rec.value.resize(static_cast<std::size_t>(n));
    std::vector<double> row(static_cast<std::size_t>(F));
    for (Eigen::Index k = 0; k < n; ++k) {
        for (int f = 0; f < F; ++f)
            row[f] = rec.per_rb_sinr(k, f);
        rec.value[k] = mutual_information(row);
    }
    return rec;
}

}  // namespace

MutualInfoRecord ul_mutual_information(const ChannelBlock& truth, const CombinerSet& comb, double snr)
{
    return mutual_information_from_gains(truth, comb, snr, false);
}

MutualInfoRecord dl_mutual_information(const ChannelBlock& truth, const CombinerSet& comb, double snr)
{
    return mutual_information_from_gains(truth, comb, snr, true);
}

}  // namespace cfmimo
