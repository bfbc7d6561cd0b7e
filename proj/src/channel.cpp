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

#include "vlcsel/channel.hpp"
#include "vlcsel/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace vlcsel
{

namespace
{

struct Geometry
{
    double distance;
    double cos_angle; // irradiance and incidence angles coincide for facing planes
};

Geometry geometry(const Point3 &led, const Point3 &rx)
{
    const double dx = rx.x - led.x, dy = rx.y - led.y, dz = led.z - rx.z;
    const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
    if (d == 0.0)
        throw DomainError("degenerate geometry: LED and receiver coincide");
    if (dz < 0.0)
        throw DomainError("LED must lie above the receiver");
    return {d, dz / d};
}

} // namespace

double concentrator_gain(double incidence_rad, const Scenario &s)
{
    const double fov = deg2rad(s.fov_deg);
    if (incidence_rad > fov)
        return 0.0;
    const double sf = std::sin(fov);
    return s.concentrator_index * s.concentrator_index / (sf * sf);
}

double channel_gain(const Point3 &led, const Point3 &user, const Scenario &s)
{
    const auto g = geometry(led, user);
    const double psi = std::acos(std::clamp(g.cos_angle, -1.0, 1.0));
    if (psi > deg2rad(s.fov_deg))
        return 0.0;
    const double l = lambertian_order(s.semiangle_deg);
    return s.detector_area * (l + 1.0) / (2.0 * std::numbers::pi * g.distance * g.distance) *
           std::pow(g.cos_angle, l) * s.filter_gain * concentrator_gain(psi, s) * g.cos_angle;
}

NoiseTerms noise_terms(std::span<const double> h_row, const Scenario &s, double bias_current)
{
    if (bias_current < s.current_low || bias_current > s.current_high)
        throw DomainError("DC bias outside the LED current range");
    double hsum = 0.0;
    for (double h : h_row)
        hsum += h;
    const double received_power = s.eo_coefficient * hsum * bias_current;
    NoiseTerms t;
    t.shot = 2.0 * s.responsivity * kElementaryCharge * received_power * s.bandwidth;
    t.background = 4.0 * std::numbers::pi * kElementaryCharge * s.detector_area * s.responsivity *
                   s.ambient_photocurrent * (1.0 - std::cos(deg2rad(s.fov_deg))) * s.bandwidth;
    t.thermal = s.preamp_noise_density * s.preamp_noise_density * s.bandwidth;
    return t;
}

double noise_variance(std::span<const double> h_row, const Scenario &s, double bias_current)
{
    return noise_terms(h_row, s, bias_current).total();
}

double illuminance(const Point3 &led, const Point3 &sample, const Scenario &s)
{
    const auto g = geometry(led, sample);
    const double l = lambertian_order(s.semiangle_deg);
    const double c = std::max(g.cos_angle, 0.0);
    return s.max_luminous_intensity * std::pow(c, l) * c / (g.distance * g.distance);
}

Eigen::MatrixXd ChannelMatrix::block(std::span<const std::size_t> users, std::span<const std::size_t> leds) const
{
    Eigen::MatrixXd out(static_cast<Eigen::Index>(users.size()), static_cast<Eigen::Index>(leds.size()));
    for (std::size_t i = 0; i < users.size(); ++i)
        for (std::size_t j = 0; j < leds.size(); ++j)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                gains(static_cast<Eigen::Index>(users[i]), static_cast<Eigen::Index>(leds[j]));
    return out;
}

ChannelMatrix build_channel(const Scenario &s)
{
    ChannelMatrix ch;
    ch.gains.resize(static_cast<Eigen::Index>(s.num_users()), static_cast<Eigen::Index>(s.num_leds()));
    for (std::size_t i = 0; i < s.num_users(); ++i)
        for (std::size_t j = 0; j < s.num_leds(); ++j)
            ch.gains(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                channel_gain(s.led_positions[j], s.user_positions[i], s);
    return ch;
}

} // namespace vlcsel
