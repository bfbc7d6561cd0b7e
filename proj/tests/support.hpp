// SPDX-License-Identifier: Apache-2.0
//
// vlcsel: joint LED selection and precoding for multi-cell VLC networks
// Copyright (C) 2026 The vlcsel authors
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

// Shared fixtures and independent reference computations for the tests.
// Oracles here are written from the physical definitions, not from the
// library code paths they check.

#pragma once

#include "vlcsel/scenario.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace vlcsel::test
{

inline Scenario room(std::size_t n_leds, std::size_t n_users, std::uint64_t seed, double eta = 0.7)
{
    Scenario s;
    s.led_positions = led_grid(n_leds, kDefaultLedArraySpan, kDefaultLedHeight);
    s.max_luminous_intensity = n_leds == 36 ? 900.0 : 600.0;
    s.dimming_target = eta;
    return with_random_users(s, n_users, seed);
}

inline double rel_err(double a, double b)
{
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

// LOS gain evaluated term by term from the Lambertian model.
inline double oracle_gain(const Point3 &led, const Point3 &user, const Scenario &s)
{
    const double dx = led.x - user.x, dy = led.y - user.y, dz = led.z - user.z;
    const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
    const double cos_angle = dz / d; // same angle at both ends for parallel planes
    const double fov = s.fov_deg * std::numbers::pi / 180.0;
    if (std::acos(cos_angle) > fov)
        return 0.0;
    const double l = -std::log(2.0) / std::log(std::cos(s.semiangle_deg * std::numbers::pi / 180.0));
    const double conc = s.concentrator_index * s.concentrator_index / std::pow(std::sin(fov), 2);
    return s.detector_area * (l + 1.0) / (2.0 * std::numbers::pi * d * d) * std::pow(cos_angle, l) * s.filter_gain *
           conc * cos_angle;
}

inline double oracle_lux(const Point3 &led, double x, double y, const Scenario &s)
{
    const double dx = led.x - x, dy = led.y - y, dz = led.z - s.receiver_plane_height;
    const double d2 = dx * dx + dy * dy + dz * dz;
    const double c = dz / std::sqrt(d2);
    const double l = -std::log(2.0) / std::log(std::cos(s.semiangle_deg * std::numbers::pi / 180.0));
    return s.max_luminous_intensity * std::pow(c, l) * c / d2;
}

// Population CV of a list of per-point totals, two-pass.
inline double oracle_cv(const std::vector<double> &v)
{
    double mean = 0.0;
    for (double x : v)
        mean += x;
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v)
        ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size())) / mean;
}

// sum_i 0.5 log2(1 + m_i q_i)
inline double oracle_rate(const Eigen::VectorXd &m, const Eigen::VectorXd &q)
{
    double r = 0.0;
    for (Eigen::Index i = 0; i < m.size(); ++i)
        r += 0.5 * std::log2(1.0 + m(i) * q(i));
    return r;
}

// max_j sum_l |sum_i P_ji q_i P_li| <= bound, checked by explicit loops.
inline bool oracle_row_feasible(const Eigen::MatrixXd &p, const Eigen::VectorXd &q, double bound, double tol = 1e-12)
{
    for (Eigen::Index j = 0; j < p.rows(); ++j)
    {
        double row = 0.0;
        for (Eigen::Index l = 0; l < p.rows(); ++l)
        {
            double e = 0.0;
            for (Eigen::Index i = 0; i < p.cols(); ++i)
                e += p(j, i) * q(i) * p(l, i);
            row += std::abs(e);
        }
        if (row > bound * (1.0 + tol))
            return false;
    }
    return true;
}

// Largest t with t * dir feasible (bisection on the convex row constraint).
inline double max_feasible_scale(const Eigen::MatrixXd &p, const Eigen::VectorXd &dir, double bound)
{
    double lo = 0.0, hi = 1.0;
    while (oracle_row_feasible(p, hi * dir, bound, 0.0))
        hi *= 2.0;
    for (int k = 0; k < 200; ++k)
    {
        const double mid = 0.5 * (lo + hi);
        (oracle_row_feasible(p, mid * dir, bound, 0.0) ? lo : hi) = mid;
    }
    return lo;
}

// Grid-search optimum of the allocation problem. The rate increases along
// every coordinate, so the optimum lies on the boundary of the feasible set:
// search over directions on the simplex (coarse, then refined around the
// incumbent), scaling each to the boundary. Handles up to three users.
inline double oracle_allocation(const Eigen::MatrixXd &p, const Eigen::VectorXd &m, double bound,
                                Eigen::VectorXd *best_q = nullptr)
{
    const Eigen::Index n = m.size();
    auto eval = [&](Eigen::VectorXd dir, Eigen::VectorXd &q) {
        dir = dir.cwiseMax(0.0);
        if (dir.sum() <= 0.0)
            return -1.0;
        dir /= dir.sum();
        q = max_feasible_scale(p, dir, bound) * dir;
        return oracle_rate(m, q);
    };
    double best = -1.0;
    Eigen::VectorXd bq = Eigen::VectorXd::Zero(n), q;
    Eigen::VectorXd center = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    double width = 1.0;
    const int steps = 40;
    for (int level = 0; level < 8; ++level)
    {
        Eigen::VectorXd incumbent = center;
        if (n == 1)
        {
            best = eval(Eigen::VectorXd::Ones(1), bq);
            break;
        }
        for (int a = 0; a <= steps; ++a)
            for (int b = 0; b <= (n >= 3 ? steps : 0); ++b)
            {
                Eigen::VectorXd dir(n);
                const double u = (static_cast<double>(a) / steps - 0.5) * width;
                const double v = (static_cast<double>(b) / steps - 0.5) * width;
                dir(0) = center(0) + u;
                if (n == 2)
                    dir(1) = center(1) - u;
                else
                {
                    dir(1) = center(1) + v;
                    dir(2) = center(2) - u - v;
                }
                const double r = eval(dir, q);
                if (r > best)
                {
                    best = r;
                    bq = q;
                    incumbent = dir.cwiseMax(0.0) / dir.cwiseMax(0.0).sum();
                }
            }
        center = incumbent;
        width *= 0.25;
    }
    if (best_q)
        *best_q = bq;
    return best;
}

} // namespace vlcsel::test
