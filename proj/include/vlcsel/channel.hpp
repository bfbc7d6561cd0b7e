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

/// Elementary charge (CODATA, exact since 2019).
inline constexpr double kElementaryCharge = 1.602176634e-19;

/// LOS gain between an LED facing straight down and a PD facing straight up.
/// Zero beyond the receiver field of view. Throws DomainError when the two
/// points coincide or the LED is not above the user.
double channel_gain(const Point3 &led, const Point3 &user, const Scenario &scenario);

/// Non-imaging concentrator gain kappa^2 / sin^2(FOV) inside the FOV, else 0.
double concentrator_gain(double incidence_rad, const Scenario &scenario);

struct NoiseTerms
{
    double shot = 0.0;       // signal-dependent shot noise, A^2
    double background = 0.0; // ambient-light shot noise, A^2
    double thermal = 0.0;    // pre-amplifier noise, A^2
    double total() const { return shot + background + thermal; }
};

/// Receiver noise for a user whose own-cell gains are h_row, each LED biased
/// at bias_current. Throws DomainError when bias_current is outside the
/// scenario's current range.
NoiseTerms noise_terms(std::span<const double> h_row, const Scenario &scenario, double bias_current);
double noise_variance(std::span<const double> h_row, const Scenario &scenario, double bias_current);

/// Horizontal illuminance (lux) from one LED at full intensity. No FOV cutoff.
double illuminance(const Point3 &led, const Point3 &sample, const Scenario &scenario);

/// Gains of every (user, LED) pair.
struct ChannelMatrix
{
    Eigen::MatrixXd gains; // num_users x num_leds

    std::size_t num_users() const { return static_cast<std::size_t>(gains.rows()); }
    std::size_t num_leds() const { return static_cast<std::size_t>(gains.cols()); }

    /// Sub-matrix with the given user rows and LED columns.
    Eigen::MatrixXd block(std::span<const std::size_t> users, std::span<const std::size_t> leds) const;
};

ChannelMatrix build_channel(const Scenario &scenario);

} // namespace vlcsel
