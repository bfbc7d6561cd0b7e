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

#include "vlcsel/orchestrator.hpp"
#include "vlcsel/scenario.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vlcsel
{

// FR entry meaning "one frequency group per cell".
inline constexpr int kReusePerCell = 0;

struct ExperimentPlan
{
    std::string scenario_path;        // empty: built-in 64 LED / 16 user room
    std::optional<Scenario> scenario; // takes precedence over the path
    std::vector<Scheme> schemes;
    std::vector<double> dimming_levels;
    std::vector<int> fr_modes{1};
    std::vector<std::uint64_t> seeds;
    std::string output_dir;
    bool redraw_users = true; // each seed places the users anew
    unsigned workers = 0;     // 0: hardware concurrency
    int verbosity = 0;        // 0 quiet, 1 per run, 2 per run with details
};

/// Throws InvalidScenario naming the offending plan field.
void validate(const ExperimentPlan &plan);

/// One CSV row. Doubles are written in shortest round-trip form.
struct MetricsRow
{
    std::string scheme;
    double eta = 0.0;
    std::size_t n_t = 0; // LED count N_T
    std::size_t n_r = 0; // user count N_R
    int fr = 1;
    std::uint64_t seed = 0;
    double mbe = 0.0;
    double cv = 0.0;
    double sum_rate = 0.0;
    int iterations = 0;
    friend bool operator==(const MetricsRow &, const MetricsRow &) = default;
};

std::string metrics_csv_header();
std::string format_metrics_row(const MetricsRow &row);
std::string metrics_csv(const std::vector<MetricsRow> &rows);
/// Inverse of metrics_csv. Throws ParseError on a malformed line.
std::vector<MetricsRow> parse_metrics_csv(std::string_view text);

enum ExitStatus : int
{
    kExitOk = 0,
    kExitRunFailure = 1,
    kExitInvalidInput = 2
};

struct ExperimentOutcome
{
    int exit_code = kExitOk;
    std::size_t runs = 0;
    std::size_t failures = 0;
    std::vector<MetricsRow> rows;
    std::vector<std::string> diagnostics; // one line per failed run or skipped FR
};

using LogSink = std::function<void(int level, const std::string &line)>;

/// Runs every (scheme, eta, seed) on a bounded pool. Writes metrics.csv and
/// one JSON per run into output_dir, each through a temp file and rename.
/// Output is identical for identical plans whatever the worker count.
ExperimentOutcome run_experiment(const ExperimentPlan &plan, const LogSink &log = {});

/// Scenario actually simulated for one seed and dimming level.
Scenario scenario_for_run(const Scenario &base, double eta, std::uint64_t seed, bool redraw_users);

/// x,y,lux rows over the sample lattice for the given per-LED weights.
std::string illuminance_map_csv(const Scenario &scenario, const std::vector<double> &led_weights);
void emit_illuminance_map(const Scenario &scenario, const std::vector<double> &led_weights,
                          const std::string &path);

/// Writes content to path.tmp.<unique> and renames it over path.
void write_file_atomic(const std::string &path, std::string_view content);

} // namespace vlcsel
