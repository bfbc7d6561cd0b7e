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

#include "vlcsel/scenario.hpp"
#include "vlcsel/error.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

namespace vlcsel
{

using nlohmann::json;

double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }

double lambertian_order(double semiangle_deg)
{
    if (!(semiangle_deg > 0.0 && semiangle_deg < 90.0))
        throw DomainError("semiangle must lie in (0, 90) degrees, got " + std::to_string(semiangle_deg));
    return -std::log(2.0) / std::log(std::cos(deg2rad(semiangle_deg)));
}

std::vector<Point3> led_grid(std::size_t n, double span, double height)
{
    const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
    if (n == 0 || side * side != n)
        throw InvalidScenario("leds.count", "generated grids need a perfect square, got " + std::to_string(n));
    if (!(span > 0.0))
        throw InvalidScenario("leds.span", "must be positive");
    const double pitch = span / static_cast<double>(side);
    std::vector<Point3> out;
    out.reserve(n);
    for (std::size_t r = 0; r < side; ++r)
        for (std::size_t c = 0; c < side; ++c)
            out.push_back({(static_cast<double>(c) + 0.5) * pitch - span / 2.0,
                           (static_cast<double>(r) + 0.5) * pitch - span / 2.0, height});
    return out;
}

std::vector<Point3> place_users_random(const Scenario &scenario, std::size_t n, std::uint64_t seed)
{
    if (n == 0)
        throw InvalidScenario("users.count", "at least one user is required");
    std::mt19937_64 rng(seed);
    const double hx = scenario.room.length / 2.0, hy = scenario.room.width / 2.0;
    std::uniform_real_distribution<double> ux(-hx, hx), uy(-hy, hy);
    auto draw = [&rng](auto &dist, double bound) {
        double v = dist(rng);
        while (v <= -bound || v >= bound) // keep the open interval
            v = dist(rng);
        return v;
    };
    std::vector<Point3> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        const double x = draw(ux, hx);
        const double y = draw(uy, hy);
        out.push_back({x, y, scenario.receiver_plane_height});
    }
    return out;
}

Scenario with_random_users(const Scenario &scenario, std::size_t n, std::uint64_t seed)
{
    Scenario out = scenario;
    out.user_positions = place_users_random(scenario, n, seed);
    out.solver.rng_seed = seed;
    validate(out);
    return out;
}

namespace
{

void require(bool ok, const char *field, const std::string &what)
{
    if (!ok)
        throw InvalidScenario(field, what);
}

} // namespace

void validate(const Scenario &s)
{
    require(s.room.length > 0 && s.room.width > 0 && s.room.height > 0, "room", "dimensions must be positive");
    require(s.dimming_target > 0.0 && s.dimming_target <= 1.0, "dimming_target", "must lie in (0, 1]");
    require(s.current_low < s.current_high, "current_range", "current_low must be below current_high");
    require(s.semiangle_deg > 0.0 && s.semiangle_deg < 90.0, "semiangle_deg", "must lie in (0, 90)");
    require(s.fov_deg > 0.0 && s.fov_deg <= 90.0, "fov_deg", "must lie in (0, 90]");
    require(s.detector_area > 0.0, "detector_area", "must be positive");
    require(s.filter_gain > 0.0, "filter_gain", "must be positive");
    require(s.concentrator_index > 0.0, "concentrator_index", "must be positive");
    require(s.responsivity > 0.0, "responsivity", "must be positive");
    require(s.eo_coefficient > 0.0, "eo_coefficient", "must be positive");
    require(s.ambient_photocurrent >= 0.0, "ambient_photocurrent", "must be non-negative");
    require(s.preamp_noise_density >= 0.0, "preamp_noise_density", "must be non-negative");
    require(s.bandwidth >= 0.0, "bandwidth", "must be non-negative");
    require(s.max_luminous_intensity > 0.0, "max_luminous_intensity", "must be positive");
    require(s.uniformity_threshold > 0.0, "uniformity_threshold", "must be positive");
    require(s.distance_threshold > 0.0, "distance_threshold", "must be positive");
    require(s.grid_spacing > 0.0, "grid_spacing", "must be positive");
    require(s.receiver_plane_height >= 0.0 && s.receiver_plane_height < s.room.height, "receiver_plane_height",
            "must lie inside the room");

    require(!s.led_positions.empty(), "led_positions", "must not be empty");
    require(!s.user_positions.empty(), "user_positions", "must not be empty");
    require(s.user_positions.size() <= s.led_positions.size(), "user_positions",
            "user count may not exceed LED count");

    const double led_z = s.led_positions.front().z;
    for (const auto &p : s.led_positions)
    {
        require(p.z == led_z, "led_positions", "all LEDs must share one height");
        require(std::abs(p.x) <= s.room.length / 2 && std::abs(p.y) <= s.room.width / 2, "led_positions",
                "LED outside the room footprint");
    }
    require(led_z > s.receiver_plane_height && led_z <= s.room.height, "led_positions",
            "LED plane must lie above the receiver plane and inside the room");
    for (const auto &p : s.user_positions)
    {
        require(p.z < led_z, "user_positions", "users must lie below the LED plane");
        require(std::abs(p.x) <= s.room.length / 2 && std::abs(p.y) <= s.room.width / 2, "user_positions",
                "user outside the room footprint");
    }

    const auto &v = s.solver;
    require(v.penalty_lambda >= 1.0, "solver.penalty_lambda", "must be >= 1");
    require(v.stepsize_a > 0.0, "solver.stepsize_a", "must be positive");
    require(v.eps1 > 0.0, "solver.eps1", "must be positive");
    require(v.eps2 > 0.0, "solver.eps2", "must be positive");
    require(v.eps3 > 0.0, "solver.eps3", "must be positive");
    require(v.gap_tol > 0.0, "solver.gap_tol", "must be positive");
    require(v.max_inner_iters >= 1, "solver.max_inner_iters", "must be >= 1");
    require(v.max_outer_iters >= 1, "solver.max_outer_iters", "must be >= 1");
    require(v.selection_restarts >= 0, "solver.selection_restarts", "must be >= 0");
}

namespace
{

// Reads a table, rejecting keys the schema does not know so typos surface.
class Table
{
public:
    Table(const json &j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object())
            throw ParseError("'" + path_ + "' must be a table");
    }

    template <typename T>
    void get(const char *key, T &out)
    {
        seen_.insert(key);
        if (!j_.contains(key))
            return;
        try
        {
            out = j_.at(key).get<T>();
        }
        catch (const json::exception &e)
        {
            throw ParseError("'" + qualified(key) + "': " + e.what());
        }
    }

    void get_threshold(const char *key, double &out)
    {
        seen_.insert(key);
        if (!j_.contains(key))
            return;
        const auto &v = j_.at(key);
        if (v.is_null() || (v.is_string() && v.get<std::string>() == "inf"))
            out = std::numeric_limits<double>::infinity();
        else if (v.is_number())
            out = v.get<double>();
        else
            throw ParseError("'" + qualified(key) + "' must be a number, null or \"inf\"");
    }

    bool has(const char *key) const { return j_.contains(key); }

    Table sub(const char *key)
    {
        seen_.insert(key);
        static const json empty = json::object();
        return Table(j_.contains(key) ? j_.at(key) : empty, qualified(key));
    }

    const json &raw(const char *key)
    {
        seen_.insert(key);
        return j_.at(key);
    }

    void finish() const
    {
        for (const auto &item : j_.items())
            if (!seen_.count(item.key()))
                throw ParseError("unknown key '" + qualified(item.key().c_str()) + "'");
    }

private:
    std::string qualified(const char *key) const { return path_.empty() ? key : path_ + "." + key; }

    const json &j_;
    std::string path_;
    std::set<std::string> seen_;
};

std::vector<Point3> read_points(const json &arr, const char *field)
{
    if (!arr.is_array())
        throw ParseError(std::string("'") + field + "' must be an array of [x, y, z]");
    std::vector<Point3> out;
    for (const auto &p : arr)
    {
        if (!p.is_array() || p.size() != 3)
            throw ParseError(std::string("'") + field + "' entries must be [x, y, z]");
        out.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
    }
    return out;
}

json write_points(const std::vector<Point3> &pts)
{
    json arr = json::array();
    for (const auto &p : pts)
        arr.push_back({p.x, p.y, p.z});
    return arr;
}

} // namespace

Scenario load_scenario(std::string_view source)
{
    json doc;
    try
    {
        doc = json::parse(source);
    }
    catch (const json::parse_error &e)
    {
        throw ParseError(std::string("malformed configuration: ") + e.what());
    }

    Scenario s;
    Table root(doc, "");

    auto room = root.sub("room");
    room.get("length", s.room.length);
    room.get("width", s.room.width);
    room.get("height", s.room.height);
    room.finish();

    root.get("receiver_plane_height", s.receiver_plane_height);

    auto optics = root.sub("optics");
    optics.get("semiangle_deg", s.semiangle_deg);
    optics.get("detector_area", s.detector_area);
    optics.get("fov_deg", s.fov_deg);
    optics.get("filter_gain", s.filter_gain);
    optics.get("concentrator_index", s.concentrator_index);
    optics.finish();

    auto elec = root.sub("electrical");
    elec.get("responsivity", s.responsivity);
    elec.get("eo_coefficient", s.eo_coefficient);
    elec.get("ambient_photocurrent", s.ambient_photocurrent);
    elec.get("preamp_noise_density", s.preamp_noise_density);
    elec.get("bandwidth", s.bandwidth);
    elec.get("current_low", s.current_low);
    elec.get("current_high", s.current_high);
    elec.get("include_intercell_dc", s.include_intercell_dc);
    elec.finish();

    auto light = root.sub("lighting");
    light.get("max_luminous_intensity", s.max_luminous_intensity);
    light.get("dimming_target", s.dimming_target);
    light.get_threshold("uniformity_threshold", s.uniformity_threshold);
    light.get("grid_spacing", s.grid_spacing);
    light.finish();

    auto cells = root.sub("cells");
    cells.get("distance_threshold", s.distance_threshold);
    cells.finish();

    auto solver = root.sub("solver");
    solver.get("penalty_lambda", s.solver.penalty_lambda);
    solver.get("adaptive_penalty", s.solver.adaptive_penalty);
    solver.get("stepsize_a", s.solver.stepsize_a);
    solver.get("eps1", s.solver.eps1);
    solver.get("eps2", s.solver.eps2);
    solver.get("eps3", s.solver.eps3);
    solver.get("gap_tol", s.solver.gap_tol);
    solver.get("max_inner_iters", s.solver.max_inner_iters);
    solver.get("max_outer_iters", s.solver.max_outer_iters);
    solver.get("selection_restarts", s.solver.selection_restarts);
    solver.get("rng_seed", s.solver.rng_seed);
    solver.finish();

    if (!root.has("leds"))
        throw ParseError("missing required table 'leds'");
    auto leds = root.sub("leds");
    if (leds.has("positions"))
    {
        s.led_positions = read_points(leds.raw("positions"), "leds.positions");
    }
    else
    {
        std::size_t count = 0;
        double height = kDefaultLedHeight, span = kDefaultLedArraySpan;
        leds.get("count", count);
        leds.get("height", height);
        leds.get("span", span);
        if (count == 0)
            throw InvalidScenario("leds.count", "give 'positions' or a positive 'count'");
        s.led_positions = led_grid(count, span, height);
    }
    leds.finish();

    if (!root.has("users"))
        throw ParseError("missing required table 'users'");
    auto users = root.sub("users");
    if (users.has("positions"))
    {
        s.user_positions = read_points(users.raw("positions"), "users.positions");
    }
    else
    {
        std::size_t count = 0;
        std::uint64_t seed = s.solver.rng_seed;
        users.get("count", count);
        users.get("seed", seed);
        if (count == 0)
            throw InvalidScenario("users.count", "give 'positions' or a positive 'count'");
        s.user_positions = place_users_random(s, count, seed);
    }
    users.finish();
    root.finish();

    validate(s);
    return s;
}

Scenario load_scenario_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open scenario file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return load_scenario(buf.str());
}

std::string serialize_scenario(const Scenario &s)
{
    json doc;
    doc["room"] = {{"length", s.room.length}, {"width", s.room.width}, {"height", s.room.height}};
    doc["receiver_plane_height"] = s.receiver_plane_height;
    doc["optics"] = {{"semiangle_deg", s.semiangle_deg},
                     {"detector_area", s.detector_area},
                     {"fov_deg", s.fov_deg},
                     {"filter_gain", s.filter_gain},
                     {"concentrator_index", s.concentrator_index}};
    doc["electrical"] = {{"responsivity", s.responsivity},
                         {"eo_coefficient", s.eo_coefficient},
                         {"ambient_photocurrent", s.ambient_photocurrent},
                         {"preamp_noise_density", s.preamp_noise_density},
                         {"bandwidth", s.bandwidth},
                         {"current_low", s.current_low},
                         {"current_high", s.current_high},
                         {"include_intercell_dc", s.include_intercell_dc}};
    json light = {{"max_luminous_intensity", s.max_luminous_intensity},
                  {"dimming_target", s.dimming_target},
                  {"grid_spacing", s.grid_spacing}};
    if (std::isinf(s.uniformity_threshold))
        light["uniformity_threshold"] = "inf";
    else
        light["uniformity_threshold"] = s.uniformity_threshold;
    doc["lighting"] = light;
    doc["cells"] = {{"distance_threshold", s.distance_threshold}};
    doc["solver"] = {{"penalty_lambda", s.solver.penalty_lambda},
                     {"adaptive_penalty", s.solver.adaptive_penalty},
                     {"stepsize_a", s.solver.stepsize_a},
                     {"eps1", s.solver.eps1},
                     {"eps2", s.solver.eps2},
                     {"eps3", s.solver.eps3},
                     {"gap_tol", s.solver.gap_tol},
                     {"max_inner_iters", s.solver.max_inner_iters},
                     {"max_outer_iters", s.solver.max_outer_iters},
                     {"selection_restarts", s.solver.selection_restarts},
                     {"rng_seed", s.solver.rng_seed}};
    doc["leds"] = {{"positions", write_points(s.led_positions)}};
    doc["users"] = {{"positions", write_points(s.user_positions)}};
    return doc.dump(2);
}

} // namespace vlcsel
