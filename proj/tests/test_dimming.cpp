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

#include "support.hpp"

#include "vlcsel/dimming.hpp"
#include "vlcsel/error.hpp"

#include <doctest.h>

using namespace vlcsel;

TEST_CASE("plan examples")
{
    auto d = plan_dimming(1.0, 64, 0.0, 2.0);
    CHECK(d.active == 64);
    CHECK(d.bias == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(d.headroom == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(d.midpoint == 1.0);

    d = plan_dimming(0.7, 36, 0.0, 2.0);
    CHECK(d.active == 25);
    CHECK(d.bias == doctest::Approx(1.008).epsilon(1e-12));
    CHECK(d.headroom == doctest::Approx(0.992).epsilon(1e-12));

    d = plan_dimming(0.3, 36, 0.0, 2.0);
    CHECK(d.active == 10);
    CHECK(d.bias == doctest::Approx(1.08).epsilon(1e-12));
    CHECK(d.headroom == doctest::Approx(0.92).epsilon(1e-12));
}

TEST_CASE("dimming level examples")
{
    const auto d = plan_dimming(0.7, 36, 0.0, 2.0);
    CHECK(std::abs(dimming_level(d.active, d.bias, 36, 0.0, 2.0) - 0.7) <= 1e-12);
    CHECK(dimming_level(64, 1.0, 64, 0.0, 2.0) == 1.0);
    CHECK(dimming_level(32, 1.0, 64, 0.0, 2.0) == 0.5);
}

TEST_CASE("round trip over a grid of levels")
{
    for (std::size_t n : {4u, 9u, 36u, 64u, 100u})
        for (double lo : {0.0, 0.2})
            for (int k = 1; k <= 100; ++k)
            {
                const double eta = k / 100.0;
                if (static_cast<std::size_t>(eta * static_cast<double>(n)) == 0)
                    continue;
                const auto d = plan_dimming(eta, n, lo, 2.0);
                CHECK(std::abs(dimming_level(d.active, d.bias, n, lo, 2.0) - eta) <= 1e-12);
                CHECK(d.bias > lo);
                CHECK(d.bias <= 2.0);
                CHECK(d.headroom >= 0.0);
                CHECK(d.headroom == doctest::Approx(std::min(d.bias - lo, 2.0 - d.bias)));
            }
}

TEST_CASE("errors")
{
    CHECK_THROWS_AS(plan_dimming(0.01, 36, 0.0, 2.0), Infeasible);
    CHECK_THROWS_AS(plan_dimming(0.0, 36, 0.0, 2.0), DomainError);
    CHECK_THROWS_AS(plan_dimming(1.1, 36, 0.0, 2.0), DomainError);
    CHECK_THROWS_AS(plan_dimming(0.5, 36, 2.0, 0.0), DomainError);
    // eta N_T / n_t < 2, so I_B never passes I_h: the worst case stays inside.
    const auto d = plan_dimming(0.99, 4, 0.5, 1.3);
    CHECK(d.bias <= 1.3);
}

TEST_CASE("emitted signals stay inside the current range")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> sym(-1.0, 1.0);
    for (double eta : {0.3, 0.55, 0.7, 1.0})
    {
        const auto d = plan_dimming(eta, 64, 0.0, 2.0);
        // A row with ||w||_1 = headroom, split over 5 users.
        const std::vector<double> w{0.3 * d.headroom, -0.2 * d.headroom, 0.1 * d.headroom, 0.25 * d.headroom,
                                    -0.15 * d.headroom};
        for (int k = 0; k < 20000; ++k)
        {
            double x = d.bias;
            for (double wi : w)
                x += wi * sym(rng);
            CHECK_UNARY(x >= 0.0 && x <= 2.0);
        }
    }
}
