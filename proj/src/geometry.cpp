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

#include "cfmimo/geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace cfmimo {

namespace {

constexpr double kPi = std::numbers::pi;

// Wraps an angle to (-pi, pi].
double wrap_angle(double a)
{
    a = std::remainder(a, 2.0 * kPi);
    if (a <= -kPi)
        a += 2.0 * kPi;
    return a;
}

double wrap_axis(double d, double side)
{
    d = std::remainder(d, side);
    return d;
}

}  // namespace

LargeScaleState::LargeScaleState(int num_rus, int num_ues, int antennas, double snr)
    : num_rus_(num_rus),
      num_ues_(num_ues),
      antennas_(antennas),
      snr_(snr),
      beta_(static_cast<std::size_t>(num_rus) * num_ues, 0.0),
      los_(static_cast<std::size_t>(num_rus) * num_ues, 0),
      support_(static_cast<std::size_t>(num_rus) * num_ues)
{
}

void LargeScaleState::set(int ru, int ue, double beta, bool los, SupportSet support)
{
    const auto i = index(ru, ue);
    beta_[i] = beta;
    los_[i] = los ? 1 : 0;
    support_[i] = std::move(support);
}

std::pair<int, int> ru_grid_shape(const SimConfig& cfg)
{
    if (cfg.ru_grid_cols > 0 || cfg.ru_grid_rows > 0) {
        if (cfg.ru_grid_cols * cfg.ru_grid_rows != cfg.num_rus)
            throw ConfigError("RU grid " + std::to_string(cfg.ru_grid_cols) + "x" +
                              std::to_string(cfg.ru_grid_rows) + " does not hold L = " +
                              std::to_string(cfg.num_rus) + " RUs");
        return {cfg.ru_grid_cols, cfg.ru_grid_rows};
    }
    if (cfg.num_rus < 1)
        throw ConfigError("L must be at least 1");
    int cols = 1;
    for (int c = 1; c * c <= cfg.num_rus; ++c)
        if (cfg.num_rus % c == 0)
            cols = c;
    return {cols, cfg.num_rus / cols};
}

NetworkGeometry place_topology(const SimConfig& cfg, Rng& rng)
{
    const auto [cols, rows] = ru_grid_shape(cfg);
    const double side = cfg.area_side;

    NetworkGeometry geo;
    geo.area_side = side;
    geo.ru_positions.reserve(static_cast<std::size_t>(cfg.num_rus));
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            geo.ru_positions.push_back({side * (c + 0.5) / cols, side * (r + 0.5) / rows});

    std::uniform_real_distribution<double> uni(0.0, side);
    auto draw = [&] {
        double v = uni(rng);
        return v < side ? v : 0.0;
    };
    const int K = cfg.num_ues();
    geo.ue_positions.reserve(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
        const double x = draw();
        const double y = draw();
        geo.ue_positions.push_back({x, y});
    }
    return geo;
}

Point torus_displacement(Point from, Point to, double side)
{
    return {wrap_axis(to.x - from.x, side), wrap_axis(to.y - from.y, side)};
}

double torus_distance(Point a, Point b, double side)
{
    const Point d = torus_displacement(a, b, side);
    return std::hypot(d.x, d.y);
}

double los_probability(double d2d)
{
    if (d2d <= 18.0)
        return 1.0;
    return 18.0 / d2d + std::exp(-d2d / 36.0) * (1.0 - 18.0 / d2d);
}

double pathloss_db(double d2d, bool los, const SimConfig& cfg)
{
    const double d = std::max(d2d, 1.0);
    const double dh = cfg.bs_height - cfg.ue_height;
    const double d3d = std::sqrt(d * d + dh * dh);
    const double fc = cfg.carrier_ghz;
    const double pl_los = 32.4 + 21.0 * std::log10(d3d) + 20.0 * std::log10(fc);
    if (los)
        return pl_los;
    const double pl_nlos =
        35.3 * std::log10(d3d) + 22.4 + 21.3 * std::log10(fc) - 0.3 * (cfg.ue_height - 1.5);
    return std::max(pl_los, pl_nlos);
}

double shadowing_sigma_db(bool los) { return los ? 4.0 : 7.82; }

double pathloss_lsfc(double d2d, bool los, double shadow_draw, const SimConfig& cfg)
{
    const double loss_db = pathloss_db(d2d, los, cfg) + shadowing_sigma_db(los) * shadow_draw;
    return std::pow(10.0, -loss_db / 10.0);
}

SupportSet angular_support(double theta, double delta, int antennas)
{
    constexpr double kTol = 1e-12;
    SupportSet out;
    int nearest = 0;
    double nearest_gap = std::numeric_limits<double>::infinity();
    for (int m = 0; m < antennas; ++m) {
        const double grid = wrap_angle(2.0 * kPi * m / antennas);
        const double gap = std::abs(wrap_angle(grid - theta));
        if (gap <= delta / 2.0 + kTol)
            out.push_back(m);
        if (gap < nearest_gap) {
            nearest_gap = gap;
            nearest = m;
        }
    }
    if (out.empty())
        out.push_back(nearest);
    return out;
}

double calibration_distance(const SimConfig& cfg)
{
    const double area = cfg.area_side * cfg.area_side;
    return 2.5 * std::sqrt(area / (kPi * cfg.num_rus));
}

double mean_lsfc(double d2d, const SimConfig& cfg, int draws, Rng& rng)
{
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double p_los = los_probability(d2d);
    double sum = 0.0;
    for (int i = 0; i < draws; ++i) {
        const bool los = uni(rng) < p_los;
        sum += pathloss_lsfc(d2d, los, normal(rng), cfg);
    }
    return sum / draws;
}

double snr_from_mean_lsfc(double mean_beta, int antennas) { return 1.0 / (antennas * mean_beta); }

double calibrate_snr(const SimConfig& cfg)
{
    Rng rng = make_stream(cfg.seed, Stream::calibration);
    const double beta_bar = mean_lsfc(calibration_distance(cfg), cfg, cfg.calibration_draws, rng);
    return snr_from_mean_lsfc(beta_bar, cfg.antennas_per_ru);
}

LargeScaleState draw_large_scale(const NetworkGeometry& geo, const SimConfig& cfg, double snr)
{
    const int L = static_cast<int>(geo.ru_positions.size());
    const int K = static_cast<int>(geo.ue_positions.size());
    LargeScaleState lss(L, K, cfg.antennas_per_ru, snr);
    for (int l = 0; l < L; ++l) {
        for (int k = 0; k < K; ++k) {
            Rng rng = make_stream(cfg.seed, Stream::large_scale,
                                  {static_cast<std::uint64_t>(l), static_cast<std::uint64_t>(k)});
            std::uniform_real_distribution<double> uni(0.0, 1.0);
            std::normal_distribution<double> normal(0.0, 1.0);

            const Point d = torus_displacement(geo.ru_positions[l], geo.ue_positions[k], geo.area_side);
            const double d2d = std::hypot(d.x, d.y);
            const bool los = uni(rng) < los_probability(d2d);
            const double beta = pathloss_lsfc(d2d, los, normal(rng), cfg);
            const double theta = std::atan2(d.y, d.x);
            lss.set(l, k, beta, los, angular_support(theta, cfg.angular_spread, cfg.antennas_per_ru));
        }
    }
    return lss;
}

}  // namespace cfmimo
