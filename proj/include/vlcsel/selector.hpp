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

#include "vlcsel/channel.hpp"
#include "vlcsel/illumination.hpp"
#include "vlcsel/scenario.hpp"

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vlcsel
{

/// Data of the relaxed selection subproblem. The precoder is fixed: column i
/// of w holds user i's beam over all LEDs (zero outside its cell).
struct SelectionProblem
{
    Eigen::MatrixXd gains;     // N_R x N_T
    Eigen::MatrixXd w;         // N_T x N_R
    std::vector<int> user_group; // users in the same group do not interfere (one cell each)
    Eigen::MatrixXd shot_mask; // N_R x N_T, 1 where LED j feeds the shot noise of user i
    double num_coef = 0.0;     // 2 (gamma zeta)^2 / (pi e)
    double int_coef = 0.0;     // (gamma zeta)^2 / 3
    double noise_floor = 0.0;  // background + thermal, A^2
    double shot_coef = 0.0;    // shot-noise variance per unit sum(h a), A^2
    const IlluminanceField *field = nullptr;
    double uniformity_threshold = 0.0; // infinity disables the CV constraint
};

/// Builds the problem from a scenario: cell membership and noise constants.
/// led_cell[j] is the cell of LED j (-1 when in none).
SelectionProblem make_selection_problem(const Scenario &scenario, const ChannelMatrix &channel,
                                        const Eigen::MatrixXd &w, std::span<const int> user_cell,
                                        std::span<const int> led_cell, double bias_current,
                                        const IlluminanceField *field);

/// Continuous-extension sum-rate R(a). Fills grad when given.
double relaxed_rate(const SelectionProblem &problem, std::span<const double> a, Eigen::VectorXd *grad = nullptr);

/// R(a) - lambda sum(a - a^2).
double penalized_objective(const SelectionProblem &problem, std::span<const double> a, double lambda,
                           Eigen::VectorXd *grad = nullptr);

/// Euclidean projection onto {0 <= a <= 1, sum a = n}.
Eigen::VectorXd project_capped_simplex(const Eigen::VectorXd &v, double n);

struct SelectionTraceRow
{
    int iteration = 0;
    int start = 0; // 0 = uniform start, then restarts
    int stage = 0; // penalty stage; the objective is nondecreasing within a stage
    double lambda = 0.0;
    double objective = 0.0;
    double penalty = 0.0;
    double cv = 0.0;
};

struct SelectionState
{
    Eigen::VectorXd a;       // rounded, exactly n_t ones
    Eigen::VectorXd relaxed; // relaxed point the winner was rounded from
    std::size_t n_t = 0;
    double penalty_lambda = 0.0;
    double rate = 0.0; // R(a) under the fixed precoder
    double cv = 0.0;
    bool feasible = true;  // CV(RMSE) <= U_th
    int winning_start = 0;
    std::string diagnostic;
    std::vector<double> objective_trace;
    std::vector<SelectionTraceRow> trace;

    std::vector<std::size_t> active() const;
};

/// Returns 0 for a usable selection, otherwise a positive defect count.
using SelectionCheck = std::function<int(std::span<const double> a)>;

/// Users without any LOS gain to an active LED.
SelectionCheck coverage_check(const Eigen::MatrixXd &gains);

/// Top-n_t rounding (ties to the lowest index), then swaps that reduce the
/// defect count: excluded LEDs in index order, sacrificing the smallest a.
Eigen::VectorXd round_and_repair(std::span<const double> a, std::size_t n_t, const SelectionCheck &check);

struct SelectionOptions
{
    std::optional<Eigen::VectorXd> previous; // extra binary candidate
    SelectionCheck check;                    // defaults to coverage_check
    std::uint64_t seed = 1;
};

SelectionState solve_selection(const SelectionProblem &problem, std::size_t n_t, const SolverSettings &settings,
                               const SelectionOptions &options = {});

std::string selection_trace_csv(const SelectionState &state);

} // namespace vlcsel
