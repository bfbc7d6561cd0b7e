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

namespace vlcsel
{

/// Two-step hybrid dimming: a coarse LED count, then a DC bias that hits the
/// target exactly.
struct DimmingConfig
{
    double target = 1.0;      // eta
    std::size_t active = 0;   // n_t
    std::size_t total = 0;    // N_T
    double bias = 0.0;        // I_B, A
    double headroom = 0.0;    // Delta I = min(I_B - I_l, I_h - I_B), A
    double midpoint = 0.0;    // I_0 = (I_l + I_h) / 2, A
    double current_low = 0.0;
    double current_high = 0.0;
};

/// n_t = floor(eta N_T), I_B = eta N_T (I_0 - I_l) / n_t + I_l. Throws
/// Infeasible when n_t is zero or I_B would exceed I_h, DomainError for an
/// eta outside (0, 1] or an empty current range.
DimmingConfig plan_dimming(double eta, std::size_t total_leds, double current_low, double current_high);

/// eta = n_t (I_B - I_l) / (N_T (I_0 - I_l)).
double dimming_level(std::size_t active, double bias, std::size_t total_leds, double current_low,
                     double current_high);

/// Headroom for an arbitrary bias inside the range.
double headroom(double bias, double current_low, double current_high);

} // namespace vlcsel
