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

// Acceptance runner. Usage: acceptance [criterion ...]
// Criteria are 1..10 plus 7a (ordering) and 7b (gap band); no argument runs all.
// Prints one PASS/FAIL line per criterion and exits nonzero if any fails.

#include "support.hpp"

#include "vlcsel/allocator.hpp"
#include "vlcsel/cells.hpp"
#include "vlcsel/channel.hpp"
#include "vlcsel/dimming.hpp"
#include "vlcsel/error.hpp"
#include "vlcsel/illumination.hpp"
#include "vlcsel/orchestrator.hpp"
#include "vlcsel/precoding.hpp"
#include "vlcsel/selector.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <sstream>

using namespace vlcsel;
using namespace vlcsel::test;

namespace
{

struct Verdict
{
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::span<const double> sp(const Eigen::VectorXd &v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

// 1. CV(RMSE) of the all-on room at both array sizes.
Verdict cv_baselines()
{
    const std::pair<std::size_t, double> cases[] = {{36, 0.2939}, {64, 0.3037}};
    Verdict v{true, ""};
    for (auto [n, want] : cases)
    {
        const auto t0 = std::chrono::steady_clock::now();
        const auto s = room(n, 1, 1, 1.0);
        const auto field = build_field(s);
        const double cv = cv_rmse(field, std::vector<double>(n, 1.0)).cv;
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool ok = std::abs(cv - want) <= 0.02 && secs < 5.0 && field.num_points() == 729;
        v.pass = v.pass && ok;
        v.detail += fmt("N_T=%zu cv=%.4f (target %.4f, %.2fs) ", n, cv, want, secs);
    }
    return v;
}

// 2. Dimming level of the planned configuration reproduces the target.
Verdict dimming_identity()
{
    double worst = 0.0;
    for (std::size_t n : {36u, 64u})
        for (int k = 30; k <= 100; ++k)
        {
            const double eta = k / 100.0;
            const auto d = plan_dimming(eta, n, 0.0, 2.0);
            worst = std::max(worst, std::abs(dimming_level(d.active, d.bias, n, 0.0, 2.0) - eta));
        }
    return {worst <= 1e-12, fmt("max |eta' - eta| = %.3g over 142 plans", worst)};
}

// 3. ZF diagonalizes every cell; allocated precoders never clip.
Verdict zf_correctness()
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> uq(0.1, 2.0);
    double worst = 0.0;
    int instances = 0;
    for (std::uint64_t seed = 1; instances < 200; ++seed)
    {
        const auto s = room(seed % 2 ? 36 : 64, 4 + seed % 13, seed);
        const auto ch = build_channel(s);
        const auto part = form_cells(ch, cluster_users(s.user_positions, s.distance_threshold));
        for (std::size_t c = 0; c < part.num_cells() && instances < 200; ++c)
        {
            const Eigen::MatrixXd h = ch.block(part.user_clusters[c], part.led_sets[c]);
            std::vector<double> q(static_cast<std::size_t>(h.rows()));
            for (auto &x : q)
                x = uq(rng);
            Eigen::MatrixXd hw;
            try
            {
                hw = h * zf_precoder(h, std::vector<double>(static_cast<std::size_t>(h.cols()), 1.0), q).w;
            }
            catch (const SingularChannel &)
            {
                continue; // rank-deficient cells are excluded by construction elsewhere
            }
            Eigen::MatrixXd off = hw;
            off.diagonal().setZero();
            worst = std::max(worst, off.cwiseAbs().maxCoeff() / hw.diagonal().cwiseAbs().maxCoeff());
            ++instances;
        }
    }

    // Clipping: 10 allocated runs, 1e6 four-level PAM symbol vectors each.
    std::uniform_int_distribution<int> level(0, 3);
    const double pam[4] = {-1.0, -1.0 / 3.0, 1.0 / 3.0, 1.0};
    std::size_t clipped = 0, samples = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed)
    {
        const auto s = room(36, 6, seed, 0.3 + 0.07 * static_cast<double>(seed));
        const auto r = seed % 2 ? run_ad(s) : run_dd(s);
        Eigen::MatrixXd w = Eigen::MatrixXd::Zero(36, 6);
        for (const auto &l : r.links)
            for (std::size_t j = 0; j < l.leds.size(); ++j)
                for (std::size_t k = 0; k < l.users.size(); ++k)
                    w(static_cast<Eigen::Index>(l.leds[j]), static_cast<Eigen::Index>(l.users[k])) =
                        l.activation(static_cast<Eigen::Index>(j)) *
                        l.w(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
        Eigen::VectorXd sym(6);
        for (int n = 0; n < 1'000'000; ++n)
        {
            for (int k = 0; k < 6; ++k)
                sym(k) = pam[level(rng)];
            const Eigen::VectorXd x = (w * sym).array() + r.dimming.bias;
            clipped += x.minCoeff() < s.current_low - 1e-12 || x.maxCoeff() > s.current_high + 1e-12;
            ++samples;
        }
    }
    return {worst <= 1e-9 && clipped == 0,
            fmt("max off-diagonal ratio %.3g over %d cells; %zu of %zu PAM samples clipped", worst, instances,
                clipped, samples)};
}

// 4. Penalized selection against exhaustive search.
struct TinySel
{
    Scenario s;
    ChannelMatrix ch;
    std::shared_ptr<IlluminanceField> field; // stable address for pb.field
    SelectionProblem pb;
    std::size_t n_t = 0;
};

std::optional<TinySel> tiny_selection(std::mt19937_64 &rng)
{
    std::uniform_int_distribution<int> nleds(6, 10), nusers(2, 3);
    std::uniform_real_distribution<double> ux(-1.8, 1.8), uy(-1.3, 1.3), ug(0.0, 1.0);
    TinySel t;
    t.s.room = {4.0, 3.0, 3.0};
    t.s.grid_spacing = 0.25;
    t.s.uniformity_threshold = std::numeric_limits<double>::infinity();
    const int nt = nleds(rng), nr = nusers(rng);
    for (int j = 0; j < nt; ++j)
        t.s.led_positions.push_back({ux(rng), uy(rng), 2.5});
    for (int i = 0; i < nr; ++i)
        t.s.user_positions.push_back({ux(rng), uy(rng), 0.75});
    t.ch = build_channel(t.s);
    Eigen::MatrixXd w;
    try
    {
        w = pseudo_inverse(t.ch.gains);
    }
    catch (const SingularChannel &)
    {
        return std::nullopt;
    }
    w *= 0.4 / w.cwiseAbs().rowwise().sum().maxCoeff();
    t.field = std::make_shared<IlluminanceField>(build_field(t.s));
    std::vector<int> user_cell(static_cast<std::size_t>(nr));
    const bool shared = ug(rng) < 0.5;
    for (int i = 0; i < nr; ++i)
        user_cell[static_cast<std::size_t>(i)] = shared ? 0 : i;
    std::vector<int> led_cell(static_cast<std::size_t>(nt));
    for (int j = 0; j < nt; ++j)
    {
        Eigen::Index best = 0;
        t.ch.gains.col(j).maxCoeff(&best);
        led_cell[static_cast<std::size_t>(j)] = user_cell[static_cast<std::size_t>(best)];
    }
    t.pb = make_selection_problem(t.s, t.ch, w, user_cell, led_cell, 0.5 + ug(rng), t.field.get());
    t.n_t = static_cast<std::size_t>(std::uniform_int_distribution<int>(nr, nt - 1)(rng));
    return t;
}

Verdict selection_oracle()
{
    std::mt19937_64 rng(4);
    int n = 0, ok = 0;
    double worst = 1e9;
    while (n < 50)
    {
        auto t = tiny_selection(rng);
        if (!t)
            continue;
        const auto check = coverage_check(t->pb.gains);
        const auto nt = static_cast<int>(t->pb.gains.cols());
        double best = -1.0;
        for (int mask = 0; mask < (1 << nt); ++mask)
        {
            if (static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(mask))) != t->n_t)
                continue;
            Eigen::VectorXd a(nt);
            for (int j = 0; j < nt; ++j)
                a(j) = (mask >> j) & 1;
            if (check(sp(a)) == 0)
                best = std::max(best, relaxed_rate(t->pb, sp(a)));
        }
        if (best < 0.0)
            continue; // no covering selection exists
        ++n;
        SolverSettings cfg;
        cfg.rng_seed = static_cast<std::uint64_t>(n);
        const auto st = solve_selection(t->pb, t->n_t, cfg);
        const double ratio = best > 0.0 ? st.rate / best : 1.0;
        worst = std::min(worst, ratio);
        ok += ratio >= 0.99 && st.a.sum() == static_cast<double>(t->n_t);
    }
    return {ok == 50, fmt("%d/50 instances at >= 99%% of the exhaustive optimum, worst ratio %.5f", ok, worst)};
}

// 5. Allocator against the grid oracle, with weak duality along the trace.
Verdict allocator_oracle()
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> ncell(1, 2), nuser(1, 3), extra(0, 4);
    std::uniform_real_distribution<double> g(0.05, 1.0), um(0.5, 30.0), uh(0.3, 1.5);
    int ok = 0;
    double worst_rel = 0.0, worst_dual = 0.0;
    for (int inst = 0; inst < 50; ++inst)
    {
        double got = 0.0, opt = 0.0;
        bool duality = true;
        const double headroom = uh(rng);
        for (int c = ncell(rng); c > 0; --c)
        {
            const int nr = nuser(rng), nt = nr + 1 + extra(rng);
            Eigen::MatrixXd h(nr, nt);
            for (int i = 0; i < nr; ++i)
                for (int j = 0; j < nt; ++j)
                    h(i, j) = g(rng);
            AllocationProblem pb;
            pb.pinv = pseudo_inverse(h);
            pb.m.resize(nr);
            for (int i = 0; i < nr; ++i)
                pb.m(i) = um(rng);
            pb.headroom = headroom;
            const auto st = run_algorithm1(pb, SolverSettings{});
            const double o = oracle_allocation(pb.pinv, pb.m, headroom * headroom / nr);
            got += st.rate;
            opt += o;
            for (const auto &row : st.trace)
            {
                worst_dual = std::max(worst_dual, std::max(row.best_rate, o) - row.dual);
                duality = duality && row.dual >= row.best_rate - 1e-6 && row.dual >= o - 1e-6;
            }
            duality = duality && oracle_row_feasible(pb.pinv, st.q, headroom * headroom / nr, 1e-8);
        }
        const double rel = std::abs(got - opt) / opt;
        worst_rel = std::max(worst_rel, rel);
        ok += rel <= 1e-3 && duality;
    }
    return {ok == 50, fmt("%d/50 within 1e-3 of the grid optimum and dual-bounded; worst rel %.3g, worst dual deficit %.3g",
                          ok, worst_rel, worst_dual)};
}

// 6. Outer loop: monotone trace and termination on the reference room.
Verdict monotone_runs()
{
    int ok = 0, converged = 0, worst_iter = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
    {
        const auto s = room(64, 16, seed, 0.7);
        const auto r = run_tasp_hd(s);
        bool mono = !r.rate_trace.empty();
        for (std::size_t t = 1; t < r.rate_trace.size(); ++t)
            mono = mono && r.rate_trace[t] >= r.rate_trace[t - 1];
        ok += mono && r.iterations <= s.solver.max_outer_iters;
        converged += r.converged;
        worst_iter = std::max(worst_iter, r.iterations);
    }
    return {ok == 20, fmt("%d/20 monotone and within the cap (%d/20 met the stopping rule, max %d outer iterations)",
                          ok, converged, worst_iter)};
}

// 7. Scheme ordering at 70% over 20 placements.
struct Averages
{
    double tasp = 0.0, ad = 0.0, dd = 0.0;
};

const Averages &scheme_averages()
{
    static const Averages avg = [] {
        Averages a;
        for (std::uint64_t seed = 1; seed <= 20; ++seed)
        {
            const auto s = room(64, 16, seed, 0.7);
            a.tasp += run_tasp_hd(s).mbe / 20.0;
            a.ad += run_ad(s).mbe / 20.0;
            a.dd += run_dd(s).mbe / 20.0;
        }
        return a;
    }();
    return avg;
}

Verdict scheme_ordering()
{
    const auto &a = scheme_averages();
    return {a.tasp > a.ad && a.ad > a.dd,
            fmt("mean MBE tasp-hd %.3f > ad %.3f > dd %.3f bit/s/Hz", a.tasp, a.ad, a.dd)};
}

Verdict scheme_gap_band()
{
    const auto &a = scheme_averages();
    const double g_ad = a.tasp - a.ad, g_dd = a.tasp - a.dd;
    const bool ok = g_ad >= 0.5 * 4.8 && g_ad <= 2.0 * 4.8 && g_dd >= 0.5 * 7.13 && g_dd <= 2.0 * 7.13;
    return {ok, fmt("gap to ad %.3f (band [2.40, 9.60]), gap to dd %.3f (band [3.565, 14.26])", g_ad, g_dd)};
}

// 8. Full brightness: the three schemes coincide.
Verdict full_brightness()
{
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
        for (std::size_t n : {36u, 64u})
        {
            const auto s = room(n, n == 36 ? 12 : 16, seed, 1.0);
            const double t = run_tasp_hd(s).sum_rate, a = run_ad(s).sum_rate, d = run_dd(s).sum_rate;
            worst = std::max({worst, rel_err(t, a), rel_err(t, d)});
        }
    return {worst <= 1e-6, fmt("max relative spread %.3g over 10 instances", worst)};
}

// 9. Analytic selection gradient against central differences.
Verdict gradient_check()
{
    const auto s = room(64, 16, 9, 0.7);
    const auto ch = build_channel(s);
    const auto part = form_cells(ch, cluster_users(s.user_positions, s.distance_threshold));
    const auto dim = plan_dimming(0.7, 64, 0.0, 2.0);
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(64, 16);
    for (std::size_t c = 0; c < part.num_cells(); ++c)
    {
        const auto &users = part.user_clusters[c];
        const auto &leds = part.led_sets[c];
        const Eigen::MatrixXd p = pseudo_inverse(ch.block(users, leds));
        const double scale = dim.headroom / p.cwiseAbs().rowwise().sum().maxCoeff();
        for (std::size_t k = 0; k < users.size(); ++k)
            for (std::size_t j = 0; j < leds.size(); ++j)
                w(static_cast<Eigen::Index>(leds[j]), static_cast<Eigen::Index>(users[k])) =
                    scale * p(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
    }
    const auto field = build_field(s);
    const auto pb = make_selection_problem(s, ch, w, part.user_cell, part.led_cell, dim.bias, &field);

    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k)
    {
        Eigen::VectorXd a(64);
        for (int j = 0; j < 64; ++j)
            a(j) = u(rng);
        Eigen::VectorXd g;
        penalized_objective(pb, sp(a), 10.0, &g);
        Eigen::VectorXd fd(64);
        for (int j = 0; j < 64; ++j)
        {
            Eigen::VectorXd hi = a, lo = a;
            hi(j) += 1e-6;
            lo(j) -= 1e-6;
            fd(j) = (penalized_objective(pb, sp(hi), 10.0) - penalized_objective(pb, sp(lo), 10.0)) / 2e-6;
        }
        worst = std::max(worst, (g - fd).cwiseAbs().maxCoeff() / fd.cwiseAbs().maxCoeff());
    }
    return {worst <= 1e-4, fmt("max relative gradient error %.3g over 20 points", worst)};
}

// 10. Frequency-reuse bookkeeping.
Verdict fr_arithmetic()
{
    bool exact = true;
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> u(0.0, 50.0);
    for (int k = 0; k < 1000; ++k)
    {
        const double r = u(rng);
        for (int n = 1; n <= 4; ++n)
            exact = exact && fr_mbe(r, n) == r / n;
    }

    std::size_t terms = 0, nonzero = 0;
    int multi = 0;
    bool eval_ok = true;
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
    {
        const auto s = room(64, 16, seed, 0.7);
        const auto r = run_ad(s);
        const auto nc = r.links.size();
        if (nc < 2)
            continue;
        ++multi;
        auto links = r.links;
        const auto groups = frequency_groups(nc, static_cast<int>(nc));
        for (std::size_t c = 0; c < nc; ++c)
            links[c].frequency_group = groups[c];
        const auto ch = build_channel(s);
        std::vector<double> xi;
        for (const auto &t : sinr_terms(ch, links, r.noise, s))
        {
            ++terms;
            nonzero += t.interference != 0.0;
            xi.push_back(t.sinr);
        }
        eval_ok = eval_ok && evaluate_fr(r, s, static_cast<int>(nc)) == sum_rate(xi) / static_cast<double>(nc) &&
                  evaluate_fr(r, s, 1) == r.mbe;
    }
    return {exact && nonzero == 0 && eval_ok && multi > 0,
            fmt("R/n exact: %s; %zu nonzero inter-cell terms of %zu over %d multi-cell rooms; evaluate_fr consistent: %s",
                exact ? "yes" : "no", nonzero, terms, multi, eval_ok ? "yes" : "no")};
}

} // namespace

int main(int argc, char **argv)
{
    const std::map<std::string, std::pair<std::string, std::function<Verdict()>>> all{
        {"1", {"CV(RMSE) baselines", cv_baselines}},
        {"2", {"dimming identity", dimming_identity}},
        {"3", {"zero-forcing and clipping", zf_correctness}},
        {"4", {"selection vs exhaustive optimum", selection_oracle}},
        {"5", {"allocator vs grid optimum", allocator_oracle}},
        {"6", {"monotone outer loop", monotone_runs}},
        {"7a", {"scheme ordering", scheme_ordering}},
        {"7b", {"scheme gap band", scheme_gap_band}},
        {"8", {"full-brightness equality", full_brightness}},
        {"9", {"gradient check", gradient_check}},
        {"10", {"frequency-reuse arithmetic", fr_arithmetic}},
    };
    std::vector<std::string> want;
    for (int i = 1; i < argc; ++i)
    {
        const std::string a = argv[i];
        if (a == "7")
        {
            want.push_back("7a");
            want.push_back("7b");
        }
        else
            want.push_back(a);
    }
    if (want.empty())
        for (const char *k : {"1", "2", "3", "4", "5", "6", "7a", "7b", "8", "9", "10"})
            want.push_back(k);

    int failed = 0;
    for (const auto &k : want)
    {
        const auto it = all.find(k);
        if (it == all.end())
        {
            std::printf("criterion %s: FAIL unknown criterion\n", k.c_str());
            ++failed;
            continue;
        }
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try
        {
            v = it->second.second();
        }
        catch (const std::exception &e)
        {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %-3s %-28s %s  %s [%.1fs]\n", k.c_str(), it->second.first.c_str(),
                    v.pass ? "PASS" : "FAIL", v.detail.c_str(), secs);
        std::fflush(stdout);
        failed += !v.pass;
    }
    return failed ? 1 : 0;
}
