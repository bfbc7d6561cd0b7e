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

#pragma once

#include "vlcsel/scenario.hpp"

#include <Eigen/Dense>

#include <span>

namespace vlcsel
{

/// Illuminance of every LED (at full intensity) at every sample point of the
/// receiver plane. Sample points sit at the centers of a lattice with the
/// configured pitch, ceil(extent / pitch) points per axis, centered in the
/// room; origin_x/origin_y record the first point.
struct IlluminanceField
{
    std::vector<Point2> points;
    Eigen::MatrixXd lux; // K x N_T
    double grid_spacing = 0.0;
    double origin_x = 0.0, origin_y = 0.0;
    std::size_t nx = 0, ny = 0;

    std::size_t num_points() const { return points.size(); }
};

IlluminanceField build_field(const Scenario &scenario);

struct UniformityStats
{
    double mean = 0.0; // average illuminance, lux
    double rmse = 0.0; // population RMS deviation, lux
    double cv = 0.0;   // rmse / mean
};

/// Per-point illuminance with LED j scaled by weights[j] (0/1 for a binary
/// activation, fractional during the relaxed solve).
Eigen::VectorXd point_totals(const IlluminanceField &field, std::span<const double> weights);

/// Throws DomainError when the mean illuminance is zero.
UniformityStats cv_rmse(const IlluminanceField &field, std::span<const double> weights);
UniformityStats uniformity_of(const Eigen::VectorXd &totals);

/// d cv / d weights.
Eigen::VectorXd cv_gradient(const IlluminanceField &field, std::span<const double> weights);

} // namespace vlcsel
