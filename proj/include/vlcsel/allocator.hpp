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

#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace vlcsel
{

/// Row values ||[P diag(q) P^T]_(j,:)||_1 of the strengthened amplitude
/// constraint and its bound Delta_I^2 / N_cR.
struct RowConstraint
{
    Eigen::VectorXd rows;
    double bound = 0.0;

    double max_violation() const;
    bool satisfied(double tol = 1e-8) const { return max_violation() <= tol; }
};

RowConstraint strengthen_constraint(const Eigen::MatrixXd &pinv, std::span<const double> q, double headroom,
                                    std::size_t num_users);

/// m_i = 2 (gamma zeta)^2 / (pi e (delta_i (gamma zeta)^2 / 3 + sigma_i^2)).
Eigen::VectorXd sinr_coefficients(const Scenario &scenario, std::span<const double> delta,
                                  std::span<const double> noise);

/// Largest q_i compatible with the diagonal of the row constraint alone.
Eigen::VectorXd power_caps(const Eigen::MatrixXd &pinv, double bound);

/// D_i = sum_jl W_jl P_ji P_li - lambda_i.
Eigen::VectorXd kkt_denominators(const Eigen::MatrixXd &row_weights, std::span<const double> lambda,
                                 const Eigen::MatrixXd &pinv);

/// q*_i = 1 / (2 ln2 D_i) - 1/m_i clamped to [0, cap_i]; cap_i when D_i <= 0.
/// row_weights is N_cT x N_cT; with every entry of row j equal to mu_j this is
/// the single-multiplier form.
Eigen::VectorXd kkt_q(const Eigen::MatrixXd &row_weights, std::span<const double> lambda,
                      std::span<const double> m, const Eigen::MatrixXd &pinv, std::span<const double> caps);

/// Single-multiplier form: W_jl = mu_j.
Eigen::VectorXd kkt_q(std::span<const double> mu, std::span<const double> lambda, std::span<const double> m,
                      const Eigen::MatrixXd &pinv, std::span<const double> caps);

inline double subgradient_step(double a, int t) { return a / std::sqrt(static_cast<double>(t)); }

/// Euclidean projection of (W_j, mu_j) onto {|W_jl| <= mu_j}.
void project_row_weights(Eigen::Ref<Eigen::VectorXd> weights, double &mu);

/// sum_i 0.5 log2(1 + m_i q_i)
double allocation_rate(std::span<const double> m, std::span<const double> q);

struct AllocationProblem
{
    Eigen::MatrixXd pinv; // N_cT x N_cR pseudo-inverse of the effective channel
    Eigen::VectorXd m;    // per-user SINR coefficient
    double headroom = 0.0;
};

struct AllocatorTraceRow
{
    int t = 0;
    double rate = 0.0;      // feasible-scaled iterate
    double best_rate = 0.0; // best-so-far
    double dual = 0.0;      // dual bound at this iterate
    double max_violation = 0.0;
    double mu_norm = 0.0;
    double lambda_norm = 0.0;
};

struct AllocationState
{
    Eigen::VectorXd q;
    Eigen::VectorXd mu;          // row multipliers
    Eigen::MatrixXd row_weights; // per-entry multipliers, |W_jl| <= mu_j
    Eigen::VectorXd lambda;      // multipliers of q >= 0
    Eigen::VectorXd m;
    double bound = 0.0;
    double rate = 0.0;
    double dual_bound = 0.0; // smallest dual value seen
    double slack_residual = 0.0;
    double nonneg_residual = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<AllocatorTraceRow> trace;
};

AllocationState run_algorithm1(const AllocationProblem &problem, const SolverSettings &settings);

std::string allocator_trace_csv(const AllocationState &state);

} // namespace vlcsel
