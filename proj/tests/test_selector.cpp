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

#include "vlcsel/channel.hpp"
#include "vlcsel/dimming.hpp"
#include "vlcsel/error.hpp"
#include "vlcsel/illumination.hpp"
#include "vlcsel/precoding.hpp"
#include "vlcsel/selector.hpp"

#include <doctest.h>

#include <memory>

#include <map>

using namespace vlcsel;
using vlcsel::test::oracle_cv;
using vlcsel::test::rel_err;

namespace
{

std::span<const double> sp(const Eigen::VectorXd &v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

// Eight LEDs in a 4 x 2 block, two random users, full-channel ZF precoder.
struct Tiny
{
    Scenario s;
    ChannelMatrix ch;
    std::shared_ptr<IlluminanceField> field; // stable address for pb.field
    SelectionProblem pb;
};

Tiny tiny(std::uint64_t seed, double threshold = std::numeric_limits<double>::infinity())
{
    Tiny t;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 4; ++c)
            t.s.led_positions.push_back({-1.5 + c * 1.0, -0.5 + r * 1.0, 2.5});
    t.s.room.length = 4.0;
    t.s.room.width = 3.0;
    t.s.uniformity_threshold = threshold;
    t.s.grid_spacing = 0.25;
    t.s = with_random_users(t.s, 2, seed);
    t.ch = build_channel(t.s);
    t.field = std::make_shared<IlluminanceField>(build_field(t.s));
    const Eigen::MatrixXd pinv = pseudo_inverse(t.ch.gains);
    Eigen::MatrixXd w = pinv;
    w *= 0.4 / w.cwiseAbs().rowwise().sum().maxCoeff();
    const std::vector<int> user_cell{0, 1}, led_cell{0, 0, 1, 1, 0, 0, 1, 1};
    t.pb = make_selection_problem(t.s, t.ch, w, user_cell, led_cell, 0.5, t.field.get());
    return t;
}

// Rate of a binary or relaxed activation, written out from the SINR model.
double oracle_rate(const SelectionProblem &p, const Eigen::VectorXd &a)
{
    const Eigen::Index nr = p.gains.rows();
    double r = 0.0;
    for (Eigen::Index i = 0; i < nr; ++i)
    {
        auto amp = [&](Eigen::Index k) {
            double s = 0.0;
            for (Eigen::Index j = 0; j < a.size(); ++j)
                s += p.gains(i, j) * a(j) * p.w(j, k);
            return s;
        };
        double inter = 0.0, shot = 0.0;
        for (Eigen::Index k = 0; k < nr; ++k)
            if (p.user_group[static_cast<std::size_t>(k)] != p.user_group[static_cast<std::size_t>(i)])
                inter += amp(k) * amp(k);
        for (Eigen::Index j = 0; j < a.size(); ++j)
            shot += p.shot_mask(i, j) * p.gains(i, j) * a(j);
        const double sinr = p.num_coef * amp(i) * amp(i) / (p.int_coef * inter + p.noise_floor + p.shot_coef * shot);
        r += 0.5 * std::log2(1.0 + sinr);
    }
    return r;
}

struct Best
{
    double rate = -1.0;
    double min_cv = std::numeric_limits<double>::infinity();
};

// Exhaustive search over all C(N_T, n_t) binary selections.
Best exhaustive(const SelectionProblem &p, std::size_t n_t, double cv_cap)
{
    const auto n = static_cast<int>(p.gains.cols());
    Best b;
    for (int mask = 0; mask < (1 << n); ++mask)
    {
        if (static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(mask))) != n_t)
            continue;
        Eigen::VectorXd a(n);
        for (int j = 0; j < n; ++j)
            a(j) = (mask >> j) & 1;
        std::vector<double> lux(static_cast<std::size_t>(p.field->lux.rows()));
        const Eigen::VectorXd tot = p.field->lux * a;
        for (std::size_t k = 0; k < lux.size(); ++k)
            lux[k] = tot(static_cast<Eigen::Index>(k));
        const double cv = oracle_cv(lux);
        b.min_cv = std::min(b.min_cv, cv);
        if (cv <= cv_cap)
            b.rate = std::max(b.rate, oracle_rate(p, a));
    }
    return b;
}

} // namespace

TEST_CASE("penalty examples")
{
    const auto t = tiny(1);
    Eigen::VectorXd a(8);
    a << 1, 0, 1, 1, 0, 0, 1, 0;
    const double r = relaxed_rate(t.pb, sp(a));
    CHECK(penalized_objective(t.pb, sp(a), 1e5) == r);
    CHECK(rel_err(r, oracle_rate(t.pb, a)) < 1e-12);

    a(1) = 0.5;
    const double ra = relaxed_rate(t.pb, sp(a));
    CHECK(penalized_objective(t.pb, sp(a), 1e5) == doctest::Approx(ra - 2.5e4).epsilon(1e-14));
    CHECK(rel_err(ra, oracle_rate(t.pb, a)) < 1e-12);

    // The penalty dominates as lambda grows.
    double prev = penalized_objective(t.pb, sp(a), 1.0);
    for (double lam : {1e2, 1e4, 1e6})
    {
        const double v = penalized_objective(t.pb, sp(a), lam);
        CHECK(v < prev);
        prev = v;
    }
    CHECK(prev < -1e5);
}

TEST_CASE("gradients match central differences")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.1, 0.9);
    for (std::uint64_t seed = 1; seed <= 4; ++seed)
    {
        const auto t = tiny(seed);
        for (int k = 0; k < 5; ++k)
        {
            Eigen::VectorXd a(8);
            for (int j = 0; j < 8; ++j)
                a(j) = u(rng);
            Eigen::VectorXd g, gp;
            relaxed_rate(t.pb, sp(a), &g);
            penalized_objective(t.pb, sp(a), 3.0, &gp);
            for (int j = 0; j < 8; ++j)
            {
                Eigen::VectorXd hi = a, lo = a;
                hi(j) += 1e-6;
                lo(j) -= 1e-6;
                const double fd = (relaxed_rate(t.pb, sp(hi)) - relaxed_rate(t.pb, sp(lo))) / 2e-6;
                CHECK(std::abs(g(j) - fd) <= 1e-4 * std::max(1.0, std::abs(fd)));
                const double fdp =
                    (penalized_objective(t.pb, sp(hi), 3.0) - penalized_objective(t.pb, sp(lo), 3.0)) / 2e-6;
                CHECK(std::abs(gp(j) - fdp) <= 1e-4 * std::max(1.0, std::abs(fdp)));
            }
        }
    }
}

TEST_CASE("capped simplex projection")
{
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-2.0, 3.0);
    for (int k = 0; k < 200; ++k)
    {
        Eigen::VectorXd v(7);
        for (int j = 0; j < 7; ++j)
            v(j) = u(rng);
        const double n = 1 + k % 6;
        const Eigen::VectorXd p = project_capped_simplex(v, n);
        CHECK(p.sum() == doctest::Approx(n).epsilon(1e-12));
        CHECK(p.minCoeff() >= 0.0);
        CHECK(p.maxCoeff() <= 1.0);
        // Optimality: p = clip(v - tau, 0, 1) for one shift tau.
        double tau = std::numeric_limits<double>::quiet_NaN();
        for (int j = 0; j < 7; ++j)
            if (p(j) > 1e-12 && p(j) < 1 - 1e-12)
                tau = v(j) - p(j);
        if (std::isnan(tau))
            continue; // vertex solution; box and sum already checked
        for (int j = 0; j < 7; ++j)
            CHECK(std::abs(std::clamp(v(j) - tau, 0.0, 1.0) - p(j)) < 1e-9);
    }
    Eigen::VectorXd inside(4);
    inside << 0.5, 0.5, 0.25, 0.75;
    CHECK((project_capped_simplex(inside, 2.0) - inside).norm() < 1e-14);
}

TEST_CASE("round and repair examples")
{
    const auto all_ok = [](std::span<const double>) { return 0; };
    const std::vector<double> a{0.99, 0.98, 0.01, 0.02};
    CHECK(round_and_repair(a, 2, all_ok) == Eigen::Vector4d(1, 1, 0, 0));
    const std::vector<double> bin{0, 1, 1, 0};
    CHECK(round_and_repair(bin, 2, all_ok) == Eigen::Vector4d(0, 1, 1, 0));
    const std::vector<double> tie{0.9, 0.5, 0.5, 0.5};
    CHECK(round_and_repair(tie, 2, all_ok) == Eigen::Vector4d(1, 1, 0, 0));

    // User 0 only sees LED 3.
    Eigen::MatrixXd gains(2, 4);
    gains << 0, 0, 0, 1, 1, 1, 0, 0;
    const auto check = coverage_check(gains);
    const auto fixed = round_and_repair(a, 2, check);
    CHECK(fixed.sum() == 2.0);
    CHECK(fixed(3) == 1.0);
    CHECK(fixed(0) == 1.0); // keeps the larger entry, drops LED 1
    CHECK(check(sp(fixed)) == 0);

    Eigen::MatrixXd dark = Eigen::MatrixXd::Zero(1, 4);
    CHECK_THROWS_AS(round_and_repair(a, 2, coverage_check(dark)), Infeasible);
    CHECK_THROWS_AS(round_and_repair(a, 5, all_ok), DomainError);
}

TEST_CASE("selection reaches the exhaustive optimum on tiny instances")
{
    for (std::uint64_t seed = 1; seed <= 10; ++seed)
    {
        const auto t = tiny(seed);
        const auto st = solve_selection(t.pb, 4, SolverSettings{});
        const auto best = exhaustive(t.pb, 4, std::numeric_limits<double>::infinity());
        INFO("seed " << seed);
        CHECK(st.a.sum() == 4.0);
        CHECK(((st.a.array() == 0.0) || (st.a.array() == 1.0)).all());
        CHECK(st.relaxed.minCoeff() >= 0.0);
        CHECK(st.relaxed.maxCoeff() <= 1.0);
        CHECK(penalized_objective(t.pb, sp(st.a), st.penalty_lambda) == relaxed_rate(t.pb, sp(st.a)));
        CHECK(rel_err(st.rate, oracle_rate(t.pb, st.a)) < 1e-12);
        CHECK(st.rate >= 0.99 * best.rate);
        CHECK(st.feasible);
        CHECK(st.active().size() == 4);
    }
}

TEST_CASE("CV threshold is respected or reported")
{
    for (std::uint64_t seed = 1; seed <= 4; ++seed)
    {
        auto t = tiny(seed);
        const auto free_best = exhaustive(t.pb, 4, std::numeric_limits<double>::infinity());

        // Below every selection's CV: must be reported.
        t.pb.uniformity_threshold = 0.9 * free_best.min_cv;
        auto st = solve_selection(t.pb, 4, SolverSettings{});
        CHECK_FALSE(st.feasible);
        CHECK_FALSE(st.diagnostic.empty());
        CHECK(st.a.sum() == 4.0);

        // Just above the minimum: a feasible answer must honor the cap.
        t.pb.uniformity_threshold = 1.05 * free_best.min_cv;
        st = solve_selection(t.pb, 4, SolverSettings{});
        std::vector<double> lux(static_cast<std::size_t>(t.field->lux.rows()));
        const Eigen::VectorXd tot = t.field->lux * st.a;
        for (std::size_t k = 0; k < lux.size(); ++k)
            lux[k] = tot(static_cast<Eigen::Index>(k));
        if (st.feasible)
            CHECK(oracle_cv(lux) <= t.pb.uniformity_threshold * (1 + 1e-12));
        else
            CHECK_FALSE(st.diagnostic.empty());
        CHECK(rel_err(st.cv, oracle_cv(lux)) < 1e-10);
    }
}

TEST_CASE("all LEDs required gives the all-ones selection")
{
    const auto t = tiny(2);
    const auto st = solve_selection(t.pb, 8, SolverSettings{});
    CHECK(st.a == Eigen::VectorXd::Ones(8));
    CHECK(st.feasible);
    CHECK(rel_err(st.rate, oracle_rate(t.pb, st.a)) < 1e-12);
    CHECK_THROWS_AS(solve_selection(t.pb, 0, SolverSettings{}), DomainError);
    CHECK_THROWS_AS(solve_selection(t.pb, 9, SolverSettings{}), DomainError);
}

TEST_CASE("objective is nondecreasing within each stage and the trace exports")
{
    const auto t = tiny(5);
    const auto st = solve_selection(t.pb, 4, SolverSettings{});
    REQUIRE(!st.trace.empty());
    std::map<std::pair<int, int>, double> last;
    for (const auto &row : st.trace)
    {
        const auto key = std::make_pair(row.start, row.stage);
        if (auto it = last.find(key); it != last.end())
            CHECK(row.objective >= it->second - 1e-9 * std::max(1.0, std::abs(it->second)));
        last[key] = row.objective;
        CHECK(row.penalty >= 0.0);
    }
    const auto csv = selection_trace_csv(st);
    CHECK(csv.rfind("iteration,start,stage,lambda,objective,penalty,cv\n", 0) == 0);
    CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) == st.trace.size() + 1);
}

TEST_CASE("seeded solves are deterministic")
{
    const auto t = tiny(7);
    const auto a = solve_selection(t.pb, 3, SolverSettings{});
    const auto b = solve_selection(t.pb, 3, SolverSettings{});
    CHECK(a.a == b.a);
    CHECK(a.rate == b.rate);
    CHECK(a.trace.size() == b.trace.size());
}
