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

#include <doctest.h>

#include <cmath>
#include <complex>

#include "cfmimo/channel.hpp"

using namespace cfmimo;

namespace {

Association make_assoc(int num_rus, std::vector<std::vector<int>> clusters, std::vector<int> pilots)
{
    Association a;
    a.served.assign(static_cast<std::size_t>(num_rus), {});
    for (int k = 0; k < static_cast<int>(clusters.size()); ++k)
        for (int l : clusters[k])
            a.served[l].push_back(k);
    a.clusters = std::move(clusters);
    a.pilots = std::move(pilots);
    return a;
}

SupportSet full_support(int M)
{
    SupportSet s(static_cast<std::size_t>(M));
    for (int m = 0; m < M; ++m)
        s[m] = m;
    return s;
}

}  // namespace

TEST_CASE("DFT grid is unitary and projection is idempotent")
{
    for (int M : {1, 4, 10, 64}) {
        const DftGrid g(M);
        const Eigen::MatrixXcd I = g.matrix().adjoint() * g.matrix();
        CHECK((I - Eigen::MatrixXcd::Identity(M, M)).norm() < 1e-12);
    }
    const DftGrid g(10);
    const Eigen::VectorXcd x = Eigen::VectorXcd::Random(10);
    for (const SupportSet& s : {SupportSet{0}, SupportSet{2, 3, 9}, full_support(10)}) {
        const auto once = g.project(s, x);
        CHECK((g.project(s, once) - once).norm() <= 1e-10 * x.norm());
    }
    CHECK((g.project(full_support(10), x) - x).norm() < 1e-12);
}

TEST_CASE("channel second moments")
{
    const int M = 10;
    const double beta = 3e-7;
    LargeScaleState lss(1, 2, M, 1.0);
    lss.set(0, 0, beta, true, full_support(M));
    lss.set(0, 1, beta, false, SupportSet{1, 2});
    const DftGrid grid(M);
    const std::vector<int> ues{0, 1};

    double energy_full = 0.0, energy_part = 0.0, leak = 0.0;
    std::complex<double> cross = 0.0;
    double norm0 = 0.0, norm1 = 0.0;
    const int draws = 10000;
    for (int t = 0; t < draws; ++t) {
        const auto block = sample_channels(lss, 2, ues, {5, t});
        const Eigen::VectorXcd h0 = block.h.antenna_vector(0, 0, 0, grid);
        const Eigen::VectorXcd h1 = block.h.antenna_vector(1, 0, 0, grid);
        energy_full += h0.squaredNorm();
        const Eigen::VectorXcd p = block.h.antenna_vector(0, 0, 1, grid);
        energy_part += p.squaredNorm();
        leak += (grid.project({1, 2}, p) - p).norm();
        cross += h0(3) * std::conj(h1(3));
        norm0 += std::norm(h0(3));
        norm1 += std::norm(h1(3));
    }
    CHECK(energy_full / draws == doctest::Approx(beta * M).epsilon(0.03));
    CHECK(energy_full / draws / M == doctest::Approx(beta).epsilon(0.03));
    CHECK(energy_part / draws == doctest::Approx(beta * M).epsilon(0.03));
    CHECK(leak / draws < 1e-12 * std::sqrt(beta));
    CHECK(std::abs(cross) / std::sqrt(norm0 * norm1) <= 0.05);
}

TEST_CASE("zero LSFC gives a zero channel")
{
    LargeScaleState lss(1, 1, 4, 1.0);
    lss.set(0, 0, 0.0, false, SupportSet{0, 1});
    const auto block = sample_channels(lss, 1, std::vector<int>{0}, {1, 0});
    CHECK(block.h.energy(0, 0, 0) == 0.0);
}

TEST_CASE("sampling is deterministic and per-UE")
{
    LargeScaleState lss(2, 3, 4, 1.0);
    for (int l = 0; l < 2; ++l)
        for (int k = 0; k < 3; ++k)
            lss.set(l, k, 1.0 + l + k, false, SupportSet{k});
    const auto a = sample_channels(lss, 2, std::vector<int>{0, 2}, {9, 4});
    const auto b = sample_channels(lss, 2, std::vector<int>{2}, {9, 4});
    CHECK(!a.h.has(1));
    CHECK(a.h.energy(0, 0, 1) == 0.0);
    for (int l = 0; l < 2; ++l)
        for (int f = 0; f < 2; ++f)
            CHECK(a.h.coeffs(f, l, 2)[0] == b.h.coeffs(f, l, 2)[0]);
}

TEST_CASE("estimation without noise or contamination is exact")
{
    const int M = 8;
    LargeScaleState lss(2, 3, M, 1e14);
    lss.set(0, 0, 1.0, true, SupportSet{1, 2});
    lss.set(1, 0, 0.5, true, SupportSet{3});
    for (int l = 0; l < 2; ++l) {
        lss.set(l, 1, 1.0, true, SupportSet{5, 6});
        lss.set(l, 2, 1.0, true, SupportSet{1, 2, 3});
    }
    const DftGrid grid(M);
    const Association assoc = make_assoc(2, {{0, 1}, {0}, {1}}, {0, 0, 0});

    SUBCASE("single active UE")
    {
        const std::vector<int> active{0};
        const auto truth = sample_channels(lss, 1, active, {1, 0});
        const auto est = estimate_channels(truth, assoc, active, assoc.pilots, 1e14, 4, {1, 0});
        for (int l = 0; l < 2; ++l)
            CHECK((est.h_hat.antenna_vector(0, l, 0, grid) - truth.h.antenna_vector(0, l, 0, grid)).norm() < 1e-6);
    }
    SUBCASE("co-pilot UEs with disjoint supports")
    {
        const std::vector<int> active{0, 1};
        const auto truth = sample_channels(lss, 1, active, {1, 1});
        const auto est = estimate_channels(truth, assoc, active, assoc.pilots, 1e14, 4, {1, 1});
        CHECK((est.h_hat.antenna_vector(0, 0, 0, grid) - truth.h.antenna_vector(0, 0, 0, grid)).norm() < 1e-6);
        CHECK((est.h_hat.antenna_vector(0, 0, 1, grid) - truth.h.antenna_vector(0, 0, 1, grid)).norm() < 1e-6);
        CHECK(!est.h_hat.has(2));
    }
    SUBCASE("co-pilot UEs with identical supports add up")
    {
        LargeScaleState same = lss;
        same.set(0, 1, 1.0, true, SupportSet{1, 2});
        const std::vector<int> active{0, 1};
        const auto truth = sample_channels(same, 1, active, {1, 2});
        const auto est = estimate_channels(truth, assoc, active, assoc.pilots, 1e14, 4, {1, 2});
        const Eigen::VectorXcd sum =
            truth.h.antenna_vector(0, 0, 0, grid) + truth.h.antenna_vector(0, 0, 1, grid);
        CHECK((est.h_hat.antenna_vector(0, 0, 0, grid) - sum).norm() < 1e-6);
        CHECK((est.h_hat.antenna_vector(0, 0, 1, grid) - sum).norm() < 1e-6);
    }
    SUBCASE("different pilots do not contaminate")
    {
        LargeScaleState same = lss;
        same.set(0, 1, 1.0, true, SupportSet{1, 2});
        const std::vector<int> pilots{0, 1, 2};
        const std::vector<int> active{0, 1};
        const auto truth = sample_channels(same, 1, active, {1, 3});
        const auto est = estimate_channels(truth, assoc, active, pilots, 1e14, 4, {1, 3});
        CHECK((est.h_hat.antenna_vector(0, 0, 0, grid) - truth.h.antenna_vector(0, 0, 0, grid)).norm() < 1e-6);
    }
    SUBCASE("contamination from an active co-pilot UE outside the cluster")
    {
        const std::vector<int> active{0, 2};
        const auto truth = sample_channels(lss, 1, active, {1, 4});
        const auto est = estimate_channels(truth, assoc, active, assoc.pilots, 1e14, 4, {1, 4});
        const Eigen::VectorXcd expected = grid.project(
            {1, 2}, truth.h.antenna_vector(0, 0, 0, grid) + truth.h.antenna_vector(0, 0, 2, grid));
        CHECK((est.h_hat.antenna_vector(0, 0, 0, grid) - expected).norm() < 1e-6);
        // UE 2 is not served by RU 0.
        CHECK(est.h_hat.energy(0, 0, 2) == 0.0);
    }
}

TEST_CASE("estimation noise power")
{
    const int M = 10;
    const double snr = 2.0;
    const int tau_p = 20;
    LargeScaleState lss(1, 1, M, snr);
    lss.set(0, 0, 1.0, true, SupportSet{2, 3, 4});
    const DftGrid grid(M);
    const Association assoc = make_assoc(1, {{0}}, {7});
    const std::vector<int> active{0};
    double err = 0.0;
    const int draws = 10000;
    for (int t = 0; t < draws; ++t) {
        const auto truth = sample_channels(lss, 1, active, {3, t});
        const auto est = estimate_channels(truth, assoc, active, assoc.pilots, snr, tau_p, {3, t});
        const Eigen::VectorXcd e = est.h_hat.antenna_vector(0, 0, 0, grid) - truth.h.antenna_vector(0, 0, 0, grid);
        err += e.squaredNorm();
        CHECK((grid.project({2, 3, 4}, e) - e).norm() < 1e-12);
    }
    CHECK(err / draws == doctest::Approx(3.0 / (tau_p * snr)).epsilon(0.05));
}

TEST_CASE("estimation rejects an active UE without a pilot")
{
    LargeScaleState lss(1, 2, 4, 1.0);
    lss.set(0, 0, 1.0, true, SupportSet{0});
    lss.set(0, 1, 1.0, true, SupportSet{1});
    const Association assoc = make_assoc(1, {{0}, {0}}, {0, kNoPilot});
    const std::vector<int> active{0, 1};
    const auto truth = sample_channels(lss, 1, active, {1, 0});
    CHECK_THROWS_AS(estimate_channels(truth, assoc, active, assoc.pilots, 1.0, 2, {1, 0}), std::logic_error);
    const std::vector<int> bad{5, 0};
    CHECK_THROWS_AS(estimate_channels(truth, assoc, std::vector<int>{0}, bad, 1.0, 2, {1, 0}), std::logic_error);
}
