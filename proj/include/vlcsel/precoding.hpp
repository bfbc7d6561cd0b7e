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
#include "vlcsel/scenario.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace vlcsel
{

/// Relative singular-value cutoff of the pseudo-inverse.
inline constexpr double kPinvCutoff = 1e-10;

/// Moore-Penrose pseudo-inverse via SVD. Throws SingularChannel when h does
/// not have full row rank at the cutoff.
Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd &h, double rcond = kPinvCutoff);

struct Precoder
{
    Eigen::MatrixXd w;      // N_cT x N_cR
    Eigen::MatrixXd pinv;   // pseudo-inverse of the effective channel
    Eigen::VectorXd sqrt_q; // equivalent per-user gains
};

/// W = (H diag(a))^+ diag(sqrt(q)). Fractional activations are accepted.
Precoder zf_precoder(const Eigen::MatrixXd &h_cell, std::span<const double> activation, std::span<const double> q);

/// One cell as seen by the rate computation.
struct CellLink
{
    std::vector<std::size_t> users; // global user ids, column order of w
    std::vector<std::size_t> leds;  // global LED ids, row order of w
    Eigen::VectorXd activation;     // per LED of the cell
    Eigen::MatrixXd w;              // leds x users
    int frequency_group = 0;
};

/// Cells sharing a frequency group interfere; FR-1 puts every cell in group 0.
std::vector<int> frequency_groups(std::size_t num_cells, int reuse);

struct SinrTerms
{
    double desired = 0.0;      // (H_c,i A_c W_c,:i)^2
    double interference = 0.0; // sum over other co-channel cells of (H_c',i A_c' W_c',:j)^2
    double noise = 0.0;        // sigma^2
    double sinr = 0.0;
};

/// Per-user terms indexed by global user id. noise[u] is the variance of
/// user u. Intra-cell terms are not included (removed by ZF).
std::vector<SinrTerms> sinr_terms(const ChannelMatrix &channel, std::span<const CellLink> cells,
                                  std::span<const double> noise, const Scenario &scenario);

std::vector<double> sinr(const ChannelMatrix &channel, std::span<const CellLink> cells,
                         std::span<const double> noise, const Scenario &scenario);

/// 2 (gamma zeta)^2 / (pi e): the SINR numerator per unit desired amplitude^2.
double sinr_numerator_coefficient(const Scenario &scenario);
/// (gamma zeta)^2 / 3: weight of inter-cell amplitude^2 (uniform PAM variance).
double interference_coefficient(const Scenario &scenario);

/// 1/2 sum log2(1 + xi). Throws DomainError on a negative SINR.
double sum_rate(std::span<const double> xi);

/// Mean bandwidth efficiency of an n-fold frequency reuse: rate / n.
double fr_mbe(double rate, int reuse);

/// Noise variance of each user given the active LEDs of its own cell biased at
/// bias_current (every active LED when include_intercell_dc is set).
std::vector<double> user_noise(const ChannelMatrix &channel, std::span<const CellLink> cells,
                               const Scenario &scenario, double bias_current);

struct RateReport
{
    std::vector<double> sinr;
    std::vector<double> rate; // per user, bit/s/Hz
    double sum_rate = 0.0;
};

RateReport rate_report(const ChannelMatrix &channel, std::span<const CellLink> cells,
                       std::span<const double> noise, const Scenario &scenario);

} // namespace vlcsel
