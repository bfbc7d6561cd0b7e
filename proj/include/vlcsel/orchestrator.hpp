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

#include "vlcsel/allocator.hpp"
#include "vlcsel/cells.hpp"
#include "vlcsel/channel.hpp"
#include "vlcsel/dimming.hpp"
#include "vlcsel/precoding.hpp"
#include "vlcsel/scenario.hpp"
#include "vlcsel/selector.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace vlcsel
{

enum class Scheme
{
    TaspHd,
    TaspHdUp, // TASP-HD with the uniformity constraint removed
    Ad,
    Dd
};

std::string scheme_name(Scheme scheme);
Scheme parse_scheme(std::string_view name);

enum class InitMode
{
    HalfBudget, // ZF with uniform q at half the row budget
    Orthonormal // W0^T W0 = I per cell
};

struct RunOptions
{
    InitMode init = InitMode::HalfBudget;
};

struct CellAllocation
{
    std::vector<std::size_t> users;
    std::vector<std::size_t> leds;
    AllocationState allocation;
};

struct RunResult
{
    Scheme scheme = Scheme::TaspHd;
    double eta = 1.0;
    double duty = 1.0; // fraction of time carrying data (DD)
    DimmingConfig dimming;
    std::vector<double> rate_trace;     // monotone, one entry per outer iteration
    std::vector<double> raw_rate_trace; // before enforcement
    SelectionState selection;
    CellPartition partition;
    std::vector<CellAllocation> cells;
    std::vector<CellLink> links;
    std::vector<double> noise;
    double sum_rate = 0.0; // FR-1
    double mbe = 0.0;      // FR-1
    double cv = 0.0;
    double lux_min = 0.0;
    double lux_max = 0.0;
    bool converged = false;
    int iterations = 0;

    std::vector<double> led_weights() const; // illumination weight per LED
};

RunResult run_tasp_hd(const Scenario &scenario, const RunOptions &options = {});
RunResult run_ad(const Scenario &scenario);
RunResult run_dd(const Scenario &scenario);
RunResult run_scheme(Scheme scheme, const Scenario &scenario);

/// MBE of the result under FR-n. n must be 1 or the number of cells.
double evaluate_fr(const RunResult &result, const Scenario &scenario, int reuse);

std::string run_result_json(const RunResult &result, int indent = 2);

} // namespace vlcsel
