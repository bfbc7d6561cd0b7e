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

// Command-line front end. Talks to the library only through the C API.

#include "vlcsel/vlcsel.h"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace
{

constexpr int kExitInvalid = 2;

std::vector<std::string> split_list(const std::string &text)
{
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text + ",")
    {
        if (ch == ',' || ch == ' ')
        {
            if (!cur.empty())
                out.push_back(cur);
            cur.clear();
        }
        else
            cur += ch;
    }
    return out;
}

// Whole-string numeric conversion; rejects signs on unsigned and trailing text.
template <class T> T number(const std::string &item)
{
    T v{};
    const char *end = item.data() + item.size();
    const auto [ptr, ec] = std::from_chars(item.data(), end, v);
    if (ec != std::errc() || ptr != end || item.empty())
        throw std::invalid_argument("'" + item + "' is not a valid number");
    return v;
}

// "0.3,0.5" or "start:stop:step" (inclusive).
std::vector<double> parse_levels(const std::string &text)
{
    std::vector<double> out;
    for (const auto &item : split_list(text))
    {
        const auto c1 = item.find(':');
        if (c1 == std::string::npos)
        {
            out.push_back(number<double>(item));
            continue;
        }
        const auto c2 = item.find(':', c1 + 1);
        if (c2 == std::string::npos)
            throw std::invalid_argument("range '" + item + "' needs start:stop:step");
        const double a = number<double>(item.substr(0, c1));
        const double b = number<double>(item.substr(c1 + 1, c2 - c1 - 1));
        const double step = number<double>(item.substr(c2 + 1));
        if (!(step > 0.0) || b < a)
            throw std::invalid_argument("range '" + item + "' is empty");
        const auto n = static_cast<long>(std::floor((b - a) / step + 1e-9));
        for (long k = 0; k <= n; ++k)
            out.push_back(std::round((a + static_cast<double>(k) * step) * 1e9) / 1e9);
    }
    return out;
}

// "1,2,7" or "1-20".
std::vector<std::uint64_t> parse_seeds(const std::string &text)
{
    std::vector<std::uint64_t> out;
    for (const auto &item : split_list(text))
    {
        const auto dash = item.find('-');
        if (dash == std::string::npos || dash == 0)
        {
            out.push_back(number<std::uint64_t>(item));
            continue;
        }
        const auto a = number<std::uint64_t>(item.substr(0, dash));
        const auto b = number<std::uint64_t>(item.substr(dash + 1));
        if (b < a)
            throw std::invalid_argument("seed range '" + item + "' is empty");
        for (auto s = a; s <= b; ++s)
            out.push_back(s);
    }
    return out;
}

// "1,3,4" or "nc" for one group per cell.
std::vector<int> parse_fr(const std::string &text)
{
    std::vector<int> out;
    for (const auto &item : split_list(text))
        out.push_back(item == "nc" ? 0 : number<int>(item));
    return out;
}

template <class F> auto parsed(const char *what, const std::string &text, F f)
{
    try
    {
        return f(text);
    }
    catch (const std::exception &e)
    {
        throw std::invalid_argument(std::string("bad ") + what + " '" + text + "': " + e.what());
    }
}

struct PlanDeleter
{
    void operator()(vlcsel_plan *p) const { vlcsel_plan_free(p); }
};
struct ScenarioDeleter
{
    void operator()(vlcsel_scenario *s) const { vlcsel_scenario_free(s); }
};
struct ResultDeleter
{
    void operator()(vlcsel_result *r) const { vlcsel_result_free(r); }
};

// Throws with the library's message when a call fails. Bad input maps to
// invalid_argument (exit 2), everything else to runtime_error (exit 1).
void check(vlcsel_status st, const char *what)
{
    if (st == VLCSEL_OK)
        return;
    const std::string msg = std::string(what) + ": " + vlcsel_status_name(st) + ": " + vlcsel_last_error();
    if (st == VLCSEL_ERR_ARGUMENT || st == VLCSEL_ERR_PARSE || st == VLCSEL_ERR_INVALID_SCENARIO)
        throw std::invalid_argument(msg);
    throw std::runtime_error(msg);
}

void log_line(int, const char *line, void *)
{
    std::cerr << line << '\n';
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"LED selection and precoding experiments for multi-cell VLC"};
    app.set_version_flag("--version", std::string(vlcsel_version()));
    app.require_subcommand(1);

    std::string scenario_path, out_dir = "results", schemes = "tasp-hd,ad,dd", levels = "0.7", seeds = "1", fr = "1";
    int verbosity = 0, verbose_flags = 0;
    unsigned workers = 0;
    bool fixed_users = false;

    auto *run = app.add_subcommand("run", "sweep schemes x dimming levels x seeds, write CSV and JSON");
    run->add_option("-s,--scenario", scenario_path, "scenario JSON (default: 64 LEDs, 16 users)")
        ->envname("VLCSEL_SCENARIO");
    run->add_option("--schemes", schemes, "comma list of tasp-hd, tasp-hd-up, ad, dd")
        ->envname("VLCSEL_SCHEMES")
        ->capture_default_str();
    run->add_option("--etas", levels, "dimming levels, list or start:stop:step")
        ->envname("VLCSEL_ETAS")
        ->capture_default_str();
    run->add_option("--seeds", seeds, "seeds, list or a-b")->envname("VLCSEL_SEEDS")->capture_default_str();
    run->add_option("--fr", fr, "frequency reuse factors, list; nc = one group per cell")
        ->envname("VLCSEL_FR")
        ->capture_default_str();
    run->add_option("-o,--out", out_dir, "output directory")->envname("VLCSEL_OUT")->capture_default_str();
    run->add_option("-j,--workers", workers, "worker threads (0 = all cores)")->envname("VLCSEL_WORKERS");
    run->add_flag("--fixed-users", fixed_users, "keep the scenario's users for every seed")
        ->envname("VLCSEL_FIXED_USERS");
    run->add_option("--verbosity", verbosity, "0 quiet, 1 per run, 2 details")->envname("VLCSEL_VERBOSITY");
    run->add_flag("-v", verbose_flags, "raise verbosity by one per flag");

    std::string map_scenario, map_scheme = "tasp-hd", map_out = "illuminance.csv";
    double map_eta = 0.7;
    std::uint64_t map_seed = 1;
    auto *map = app.add_subcommand("map", "run one scheme and write its x,y,lux illuminance map");
    map->add_option("-s,--scenario", map_scenario, "scenario JSON (default: 64 LEDs, 16 users)")
        ->envname("VLCSEL_SCENARIO");
    map->add_option("--scheme", map_scheme, "scheme")->envname("VLCSEL_SCHEME")->capture_default_str();
    map->add_option("--eta", map_eta, "dimming level")->envname("VLCSEL_ETA")->capture_default_str();
    map->add_option("--seed", map_seed, "user placement and solver seed")
        ->envname("VLCSEL_SEED")
        ->capture_default_str();
    map->add_option("-o,--out", map_out, "output CSV")->envname("VLCSEL_MAP_OUT")->capture_default_str();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitInvalid;
    }

    try
    {
        if (*run)
        {
            std::unique_ptr<vlcsel_plan, PlanDeleter> plan;
            {
                vlcsel_plan *p = nullptr;
                check(vlcsel_plan_create(&p), "plan");
                plan.reset(p);
            }
            if (!scenario_path.empty())
                check(vlcsel_plan_set_scenario_path(plan.get(), scenario_path.c_str()), "scenario");
            for (const auto &s : split_list(schemes))
                check(vlcsel_plan_add_scheme(plan.get(), s.c_str()), "scheme");
            for (double eta : parsed("dimming levels", levels, parse_levels))
                check(vlcsel_plan_add_dimming(plan.get(), eta), "dimming level");
            for (int n : parsed("FR list", fr, parse_fr))
                check(vlcsel_plan_add_fr(plan.get(), n), "fr");
            for (auto s : parsed("seed list", seeds, parse_seeds))
                check(vlcsel_plan_add_seed(plan.get(), s), "seed");
            check(vlcsel_plan_set_output_dir(plan.get(), out_dir.c_str()), "output");
            check(vlcsel_plan_set_workers(plan.get(), workers), "workers");
            check(vlcsel_plan_set_verbosity(plan.get(), std::max(verbosity, verbose_flags)), "verbosity");
            check(vlcsel_plan_set_redraw_users(plan.get(), fixed_users ? 0 : 1), "users");
            int code = 0;
            check(vlcsel_experiment_run(plan.get(), log_line, nullptr, &code), "experiment");
            if (code != 0)
                std::cerr << "vlcsel: " << vlcsel_last_error() << '\n';
            return code;
        }

        std::unique_ptr<vlcsel_scenario, ScenarioDeleter> scn;
        {
            vlcsel_scenario *s = nullptr;
            if (map_scenario.empty())
                check(vlcsel_scenario_default(64, 16, map_seed, &s), "scenario");
            else
                check(vlcsel_scenario_load(map_scenario.c_str(), &s), "scenario");
            scn.reset(s);
        }
        if (!map_scenario.empty())
            check(vlcsel_scenario_reseed(scn.get(), map_seed), "seed");
        check(vlcsel_scenario_set_dimming(scn.get(), map_eta), "dimming level");
        std::unique_ptr<vlcsel_result, ResultDeleter> res;
        {
            vlcsel_result *r = nullptr;
            check(vlcsel_run(scn.get(), map_scheme.c_str(), &r), "run");
            res.reset(r);
        }
        std::size_t n_leds = 0;
        check(vlcsel_scenario_counts(scn.get(), &n_leds, nullptr), "scenario");
        std::vector<double> weights(n_leds);
        check(vlcsel_result_led_weights(res.get(), weights.data(), weights.size()), "weights");
        check(vlcsel_illuminance_map(scn.get(), weights.data(), weights.size(), map_out.c_str()), "map");
        return 0;
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "vlcsel: " << e.what() << '\n';
        return kExitInvalid;
    }
    catch (const std::out_of_range &e)
    {
        std::cerr << "vlcsel: invalid input: " << e.what() << '\n';
        return kExitInvalid;
    }
    catch (const std::exception &e)
    {
        std::cerr << "vlcsel: " << e.what() << '\n';
        return 1;
    }
}
