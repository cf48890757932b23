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

#ifndef CFMIMO_GEOMETRY_HPP
#define CFMIMO_GEOMETRY_HPP

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "cfmimo/config.hpp"
#include "cfmimo/rng.hpp"

namespace cfmimo {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// RU and UE positions on a square torus of side `area_side`.
struct NetworkGeometry {
    std::vector<Point> ru_positions;
    std::vector<Point> ue_positions;
    double area_side = 0.0;
};

// Sorted DFT grid indices spanning a channel's angular support.
using SupportSet = std::vector<int>;

// Large-scale propagation state for every (RU, UE) pair, stored RU-major.
class LargeScaleState {
public:
    LargeScaleState() = default;
    LargeScaleState(int num_rus, int num_ues, int antennas, double snr);

    int num_rus() const { return num_rus_; }
    int num_ues() const { return num_ues_; }
    int antennas() const { return antennas_; }
    double snr() const { return snr_; }

    double beta(int ru, int ue) const { return beta_[index(ru, ue)]; }
    bool los(int ru, int ue) const { return los_[index(ru, ue)] != 0; }
    const SupportSet& support(int ru, int ue) const { return support_[index(ru, ue)]; }

    void set(int ru, int ue, double beta, bool los, SupportSet support);

private:
    std::size_t index(int ru, int ue) const
    {
        return static_cast<std::size_t>(ru) * static_cast<std::size_t>(num_ues_) + static_cast<std::size_t>(ue);
    }

    int num_rus_ = 0;
    int num_ues_ = 0;
    int antennas_ = 0;
    double snr_ = 0.0;
    std::vector<double> beta_;
    std::vector<std::uint8_t> los_;
    std::vector<SupportSet> support_;
};

// (columns, rows) of the RU grid; derived from L when not configured.
std::pair<int, int> ru_grid_shape(const SimConfig& cfg);

// RUs at the cell centres of the grid, UEs i.i.d. uniform. UE k is the k-th
// pair of draws from `rng`, so a larger population extends a smaller one.
NetworkGeometry place_topology(const SimConfig& cfg, Rng& rng);

// Shortest displacement from `from` to `to` on the torus.
Point torus_displacement(Point from, Point to, double side);
double torus_distance(Point a, Point b, double side);

// UMi street-canyon LOS probability.
double los_probability(double d2d);

// UMi street-canyon pathloss [dB], ignoring the far-field breakpoint branch.
// NLOS is floored at the LOS value. Distances below 1 m are clamped.
double pathloss_db(double d2d, bool los, const SimConfig& cfg);
double shadowing_sigma_db(bool los);

// Linear LSFC 10^(-(PL + sigma * shadow_draw) / 10).
double pathloss_lsfc(double d2d, bool los, double shadow_draw, const SimConfig& cfg);

// DFT grid angles 2*pi*m/M (wrapped to (-pi, pi]) within [theta - delta/2,
// theta + delta/2]; falls back to the single nearest grid angle when empty.
SupportSet angular_support(double theta, double delta, int antennas);

// Evaluation distance 2.5 * sqrt(A / (pi * L)) used for SNR calibration.
double calibration_distance(const SimConfig& cfg);

// Monte-Carlo mean of the LSFC at distance d2d over the LOS draw and shadowing.
double mean_lsfc(double d2d, const SimConfig& cfg, int draws, Rng& rng);

double snr_from_mean_lsfc(double mean_beta, int antennas);

// Transmit SNR such that M * beta_bar * SNR = 1.
double calibrate_snr(const SimConfig& cfg);

// LOS flags, shadowing, LSFCs and angular supports; each link uses its own
// substream keyed by (RU, UE).
LargeScaleState draw_large_scale(const NetworkGeometry& geo, const SimConfig& cfg, double snr);

}  // namespace cfmimo

#endif
