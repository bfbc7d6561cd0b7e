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

#include "vlcsel/dimming.hpp"
#include "vlcsel/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vlcsel
{

double headroom(double bias, double current_low, double current_high)
{
    return std::min(bias - current_low, current_high - bias);
}

DimmingConfig plan_dimming(double eta, std::size_t total_leds, double current_low, double current_high)
{
    if (!(eta > 0.0 && eta <= 1.0))
        throw DomainError("dimming target must lie in (0, 1]");
    if (!(current_low < current_high))
        throw DomainError("current range is empty");

    // The relative nudge keeps products such as 0.29 * 100 from flooring to 28.
    const double product = eta * static_cast<double>(total_leds);
    const auto active = static_cast<std::size_t>(std::floor(product * (1.0 + 1e-12)));
    if (active == 0)
        throw Infeasible("dimming target " + std::to_string(eta) + " activates no LED out of " +
                         std::to_string(total_leds));

    DimmingConfig d;
    d.target = eta;
    d.total = total_leds;
    d.active = std::min(active, total_leds);
    d.current_low = current_low;
    d.current_high = current_high;
    d.midpoint = 0.5 * (current_low + current_high);
    d.bias = product * (d.midpoint - current_low) / static_cast<double>(d.active) + current_low;
    if (d.bias > current_high)
        throw Infeasible("DC bias " + std::to_string(d.bias) + " A exceeds the upper current bound");
    d.headroom = headroom(d.bias, current_low, current_high);
    return d;
}

double dimming_level(std::size_t active, double bias, std::size_t total_leds, double current_low,
                     double current_high)
{
    const double mid = 0.5 * (current_low + current_high);
    return static_cast<double>(active) * (bias - current_low) /
           (static_cast<double>(total_leds) * (mid - current_low));
}

} // namespace vlcsel
