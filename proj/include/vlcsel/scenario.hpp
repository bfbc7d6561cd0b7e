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

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace vlcsel
{

struct Point3
{
    double x = 0.0, y = 0.0, z = 0.0;
    friend bool operator==(const Point3 &, const Point3 &) = default;
};

struct Point2
{
    double x = 0.0, y = 0.0;
    friend bool operator==(const Point2 &, const Point2 &) = default;
};

struct RoomSize
{
    double length = 8.0; // x extent, meters
    double width = 8.0;  // y extent, meters
    double height = 3.0; // meters
    friend bool operator==(const RoomSize &, const RoomSize &) = default;
};

struct SolverSettings
{
    double penalty_lambda = 1e5;   // binary-penalty weight at the final stage
    bool adaptive_penalty = false; // lambda = 1e3 * |R(a0)| instead of the fixed value
    double stepsize_a = 10.0;      // subgradient stepsize constant, theta_t = a / sqrt(t), normalized units
    double eps1 = 1e-6;            // final barrier weight of the uniformity constraint
    double eps2 = 1e-3;            // allocator stop: |R(t) - R(t-1)|^2 <= eps2
    double gap_tol = 1e-4;         // allocator stop: relative duality gap
    double eps3 = 1e-3;            // outer stop:     |R(t+1) - R(t)|^2 <= eps3
    int max_inner_iters = 5000;
    int max_outer_iters = 20;
    int selection_restarts = 4; // random restarts besides the uniform start
    std::uint64_t rng_seed = 1;
    friend bool operator==(const SolverSettings &, const SolverSettings &) = default;
};

/// Complete, validated description of one experiment. Coordinates put the
/// room center at x = y = 0 and the floor at z = 0. Immutable once built.
struct Scenario
{
    RoomSize room;
    std::vector<Point3> led_positions;
    std::vector<Point3> user_positions;
    double receiver_plane_height = 0.75;

    double semiangle_deg = 80.0;        // LED semiangle at half power
    double detector_area = 1e-4;        // m^2
    double fov_deg = 60.0;              // PD field of view
    double filter_gain = 1.0;           // optical filter gain T_s
    double concentrator_index = 1.0;    // refractive index kappa
    double responsivity = 0.54;         // A/W
    double eo_coefficient = 0.44;       // W/A
    double ambient_photocurrent = 10.93; // A/(m^2 sr)
    double preamp_noise_density = 5e-12; // A/Hz^0.5
    double bandwidth = 1e8;             // Hz
    double current_low = 0.0;           // A
    double current_high = 2.0;          // A
    double max_luminous_intensity = 600.0; // cd

    double dimming_target = 0.7;
    double uniformity_threshold = 0.25;
    double distance_threshold = 3.0; // user clustering radius d_0
    double grid_spacing = 0.3;       // illuminance sample lattice pitch

    // Inter-cell DC light adds to the shot noise when set (sensitivity study).
    bool include_intercell_dc = false;

    SolverSettings solver;

    std::size_t num_leds() const { return led_positions.size(); }
    std::size_t num_users() const { return user_positions.size(); }

    friend bool operator==(const Scenario &, const Scenario &) = default;
};

// Default LED plane height and array span used when positions are generated.
inline constexpr double kDefaultLedHeight = 2.5;
inline constexpr double kDefaultLedArraySpan = 7.2;

/// Throws InvalidScenario naming the first offending field.
void validate(const Scenario &scenario);

/// Parses a JSON configuration. Omitted physics constants take the table
/// defaults above; LED and user positions may be listed explicitly or
/// generated ("count" plus optional "span"/"seed").
Scenario load_scenario(std::string_view source);
Scenario load_scenario_file(const std::string &path);

/// Writes every field explicitly, so load_scenario(serialize(s)) == s.
std::string serialize_scenario(const Scenario &scenario);

/// Square grid of n LEDs (n must be a perfect square), one LED at the center
/// of each cell of a span x span square centered in the room.
std::vector<Point3> led_grid(std::size_t n, double span, double height);

/// n points uniform over the open receiver-plane rectangle. Pure function of
/// (room, receiver height, n, seed).
std::vector<Point3> place_users_random(const Scenario &scenario, std::size_t n,
                                       std::uint64_t seed);

/// Copy of the scenario with users redrawn via place_users_random.
Scenario with_random_users(const Scenario &scenario, std::size_t n, std::uint64_t seed);

/// -ln 2 / ln(cos(semiangle)). Throws DomainError outside (0, 90) degrees.
double lambertian_order(double semiangle_deg);

double deg2rad(double deg);

} // namespace vlcsel
