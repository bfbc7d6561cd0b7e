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

#include "vlcsel/orchestrator.hpp"
#include "vlcsel/error.hpp"
#include "vlcsel/illumination.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace vlcsel
{

std::string scheme_name(Scheme scheme)
{
    switch (scheme)
    {
    case Scheme::TaspHd:
        return "tasp-hd";
    case Scheme::TaspHdUp:
        return "tasp-hd-up";
    case Scheme::Ad:
        return "ad";
    case Scheme::Dd:
        return "dd";
    }
    return "unknown";
}

Scheme parse_scheme(std::string_view name)
{
    for (Scheme s : {Scheme::TaspHd, Scheme::TaspHdUp, Scheme::Ad, Scheme::Dd})
        if (scheme_name(s) == name)
            return s;
    throw ParseError("unknown scheme '" + std::string(name) + "'");
}

namespace
{

struct Context
{
    const Scenario &s;
    ChannelMatrix channel;
    IlluminanceField field;
    UserClusters clusters;

    explicit Context(const Scenario &scn)
        : s(scn), channel(build_channel(scn)), field(build_field(scn)),
          clusters(cluster_users(scn.user_positions, scn.distance_threshold))
    {
    }
};

struct Pass
{
    CellPartition partition;
    std::vector<CellLink> links;
    std::vector<double> noise;
    std::vector<CellAllocation> cells;
    std::vector<double> q; // per user
    double rate = 0.0;
};

std::vector<CellLink> zf_links(const Context &ctx, const CellPartition &part, const std::vector<double> &q_user)
{
    std::vector<CellLink> links(part.num_cells());
    for (std::size_t c = 0; c < part.num_cells(); ++c)
    {
        auto &l = links[c];
        l.users = part.user_clusters[c];
        l.leds = part.led_sets[c];
        l.activation = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(l.leds.size()));
        std::vector<double> q;
        for (auto u : l.users)
            q.push_back(q_user[u]);
        const std::vector<double> ones(l.leds.size(), 1.0);
        l.w = zf_precoder(ctx.channel.block(l.users, l.leds), ones, q).w;
    }
    return links;
}

// Uniform q per cell that uses half of the row budget.
std::vector<double> initial_q(const Context &ctx, const CellPartition &part, double headroom)
{
    std::vector<double> q(ctx.channel.num_users(), 0.0);
    for (std::size_t c = 0; c < part.num_cells(); ++c)
    {
        const auto &users = part.user_clusters[c];
        const Eigen::MatrixXd pinv = pseudo_inverse(ctx.channel.block(users, part.led_sets[c]));
        const std::vector<double> ones(users.size(), 1.0);
        const RowConstraint rc = strengthen_constraint(pinv, ones, headroom, users.size());
        const double v = 0.5 * rc.bound / rc.rows.maxCoeff();
        for (auto u : users)
            q[u] = v;
    }
    return q;
}

// N_T x N_R precoder over all LEDs used by the selection subproblem.
Eigen::MatrixXd full_precoder(const Context &ctx, const CellPartition &part, const std::vector<double> &q_user,
                              InitMode mode)
{
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(ctx.channel.num_leds()),
                                              static_cast<Eigen::Index>(ctx.channel.num_users()));
    for (std::size_t c = 0; c < part.num_cells(); ++c)
    {
        const auto &users = part.user_clusters[c];
        const auto &leds = part.led_sets[c];
        const Eigen::MatrixXd h = ctx.channel.block(users, leds);
        Eigen::MatrixXd wc;
        if (mode == InitMode::Orthonormal)
        {
            Eigen::HouseholderQR<Eigen::MatrixXd> qr(h.transpose());
            wc = qr.householderQ() * Eigen::MatrixXd::Identity(h.cols(), h.rows());
        }
        else
        {
            std::vector<double> q;
            for (auto u : users)
                q.push_back(q_user[u]);
            const std::vector<double> ones(leds.size(), 1.0);
            wc = zf_precoder(h, ones, q).w;
        }
        for (std::size_t k = 0; k < users.size(); ++k)
            for (std::size_t j = 0; j < leds.size(); ++j)
                w(static_cast<Eigen::Index>(leds[j]), static_cast<Eigen::Index>(users[k])) =
                    wc(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
    }
    return w;
}

// Allocation on a fixed partition. Inter-cell interference is frozen at the
// previous powers.
Pass allocate(const Context &ctx, CellPartition part, double bias, double headroom, const std::vector<double> &q_prev)
{
    Pass p;
    const auto prev_links = zf_links(ctx, part, q_prev);
    p.noise = user_noise(ctx.channel, prev_links, ctx.s, bias);
    const auto terms = sinr_terms(ctx.channel, prev_links, p.noise, ctx.s);
    p.q.assign(ctx.channel.num_users(), 0.0);
    p.links = prev_links;
    for (std::size_t c = 0; c < part.num_cells(); ++c)
    {
        CellAllocation ca;
        ca.users = part.user_clusters[c];
        ca.leds = part.led_sets[c];
        std::vector<double> delta, noise;
        for (auto u : ca.users)
        {
            delta.push_back(terms[u].interference);
            noise.push_back(p.noise[u]);
        }
        AllocationProblem pb;
        pb.pinv = pseudo_inverse(ctx.channel.block(ca.users, ca.leds));
        pb.m = sinr_coefficients(ctx.s, delta, noise);
        pb.headroom = headroom;
        ca.allocation = run_algorithm1(pb, ctx.s.solver);
        for (std::size_t k = 0; k < ca.users.size(); ++k)
            p.q[ca.users[k]] = ca.allocation.q(static_cast<Eigen::Index>(k));
        p.links[c].w = pb.pinv * ca.allocation.q.cwiseSqrt().asDiagonal();
        p.cells.push_back(std::move(ca));
    }
    p.rate = sum_rate(sinr(ctx.channel, p.links, p.noise, ctx.s));
    p.partition = std::move(part);
    return p;
}

// Defect count of a selection: users in cells that cannot be formed or whose
// effective channel is rank deficient.
SelectionCheck structural_check(const Context &ctx)
{
    return [&ctx](std::span<const double> a) {
        std::vector<std::size_t> active;
        for (std::size_t j = 0; j < a.size(); ++j)
            if (a[j] > 0.5)
                active.push_back(j);
        CellPartition part;
        try
        {
            part = update_cells(active, ctx.channel, ctx.clusters);
        }
        catch (const Infeasible &)
        {
            const int n = coverage_check(ctx.channel.gains)(a);
            return std::max(n, 1);
        }
        int bad = 0;
        for (std::size_t c = 0; c < part.num_cells(); ++c)
        {
            const auto &users = part.user_clusters[c];
            try
            {
                pseudo_inverse(ctx.channel.block(users, part.led_sets[c]));
            }
            catch (const SingularChannel &)
            {
                bad += static_cast<int>(users.size());
            }
        }
        return bad;
    };
}

void fill_metrics(const Context &ctx, RunResult &r)
{
    const auto w = r.led_weights();
    const Eigen::VectorXd totals = point_totals(ctx.field, w);
    const auto st = uniformity_of(totals);
    r.cv = st.cv;
    r.lux_min = totals.minCoeff();
    r.lux_max = totals.maxCoeff();
    r.mbe = fr_mbe(r.duty * r.sum_rate, 1);
}

void adopt(RunResult &r, Pass &&p)
{
    r.partition = std::move(p.partition);
    r.links = std::move(p.links);
    r.noise = std::move(p.noise);
    r.cells = std::move(p.cells);
    r.sum_rate = p.rate;
}

// Every LED on at one bias: AD, DD and TASP-HD at full dimming share this.
RunResult all_on(const Context &ctx, Scheme scheme, double eta, double bias, double duty)
{
    const Scenario &s = ctx.s;
    RunResult r;
    r.scheme = scheme;
    r.eta = eta;
    r.duty = duty;
    r.dimming.target = eta;
    r.dimming.total = s.num_leds();
    r.dimming.active = s.num_leds();
    r.dimming.bias = bias;
    r.dimming.current_low = s.current_low;
    r.dimming.current_high = s.current_high;
    r.dimming.midpoint = 0.5 * (s.current_low + s.current_high);
    r.dimming.headroom = headroom(bias, s.current_low, s.current_high);

    CellPartition part = form_cells(ctx.channel, ctx.clusters);
    const auto q0 = initial_q(ctx, part, r.dimming.headroom);
    Pass p = allocate(ctx, std::move(part), bias, r.dimming.headroom, q0);
    r.selection.a = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(s.num_leds()));
    r.selection.relaxed = r.selection.a;
    r.selection.n_t = s.num_leds();
    r.raw_rate_trace = {p.rate};
    r.rate_trace = {p.rate};
    adopt(r, std::move(p));
    r.iterations = 1;
    r.converged = true;
    fill_metrics(ctx, r);
    return r;
}

} // namespace

std::vector<double> RunResult::led_weights() const
{
    std::vector<double> w(static_cast<std::size_t>(selection.a.size()), 0.0);
    const double span = dimming.midpoint - dimming.current_low;
    const double level = span > 0.0 ? (dimming.bias - dimming.current_low) / span : 0.0;
    for (std::size_t j = 0; j < w.size(); ++j)
        if (selection.a(static_cast<Eigen::Index>(j)) > 0.5)
            w[j] = level * duty;
    return w;
}

RunResult run_tasp_hd(const Scenario &scenario, const RunOptions &options)
{
    const Context ctx(scenario);
    const Scenario &s = scenario;
    const DimmingConfig dim = plan_dimming(s.dimming_target, s.num_leds(), s.current_low, s.current_high);
    if (dim.active == dim.total)
    {
        RunResult r = all_on(ctx, Scheme::TaspHd, s.dimming_target, dim.bias, 1.0);
        r.dimming = dim;
        return r;
    }

    const CellPartition part0 = form_cells(ctx.channel, ctx.clusters);
    std::vector<double> q = initial_q(ctx, part0, dim.headroom);
    const auto check = structural_check(ctx);

    RunResult best;
    best.scheme = Scheme::TaspHd;
    best.eta = s.dimming_target;
    best.dimming = dim;
    bool have = false;
    std::vector<double> mono, raw;
    std::optional<Eigen::VectorXd> previous;
    bool converged = false;
    int t = 0;
    for (t = 1; t <= s.solver.max_outer_iters; ++t)
    {
        const InitMode mode = t == 1 ? options.init : InitMode::HalfBudget;
        const Eigen::MatrixXd w_full = full_precoder(ctx, part0, q, mode);
        const SelectionProblem prob =
            make_selection_problem(s, ctx.channel, w_full, part0.user_cell, part0.led_cell, dim.bias, &ctx.field);
        SelectionOptions so;
        so.previous = previous;
        so.check = check;
        so.seed = s.solver.rng_seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(t);
        SelectionState sel = solve_selection(prob, dim.active, s.solver, so);
        if (!sel.feasible)
            throw Infeasible("selection failed at outer iteration " + std::to_string(t) + ": " + sel.diagnostic);
        previous = sel.a;

        CellPartition part = update_cells(sel.active(), ctx.channel, ctx.clusters);
        Pass p = allocate(ctx, std::move(part), dim.bias, dim.headroom, q);
        q = p.q;
        raw.push_back(p.rate);
        const double prev = mono.empty() ? -std::numeric_limits<double>::infinity() : mono.back();
        if (!have || p.rate > prev)
        {
            best.selection = std::move(sel);
            adopt(best, std::move(p));
            have = true;
        }
        mono.push_back(std::max(prev, raw.back()));
        if (mono.size() >= 2)
        {
            const double d = mono.back() - mono[mono.size() - 2];
            if (d * d <= s.solver.eps3)
            {
                converged = true;
                break;
            }
        }
    }
    best.rate_trace = mono;
    best.raw_rate_trace = raw;
    best.iterations = static_cast<int>(mono.size());
    best.converged = converged;
    fill_metrics(ctx, best);
    return best;
}

RunResult run_ad(const Scenario &s)
{
    const Context ctx(s);
    if (!(s.dimming_target > 0.0 && s.dimming_target <= 1.0))
        throw DomainError("dimming target must be in (0, 1]");
    const double mid = 0.5 * (s.current_low + s.current_high);
    const double bias = s.dimming_target * (mid - s.current_low) + s.current_low;
    return all_on(ctx, Scheme::Ad, s.dimming_target, bias, 1.0);
}

RunResult run_dd(const Scenario &s)
{
    const Context ctx(s);
    if (!(s.dimming_target > 0.0 && s.dimming_target <= 1.0))
        throw DomainError("dimming target must be in (0, 1]");
    const double mid = 0.5 * (s.current_low + s.current_high);
    return all_on(ctx, Scheme::Dd, s.dimming_target, mid, s.dimming_target);
}

RunResult run_scheme(Scheme scheme, const Scenario &s)
{
    switch (scheme)
    {
    case Scheme::TaspHd:
        return run_tasp_hd(s);
    case Scheme::TaspHdUp: {
        Scenario open = s;
        open.uniformity_threshold = std::numeric_limits<double>::infinity();
        RunResult r = run_tasp_hd(open);
        // The constrained optimum is feasible here too; keep it as a second start.
        try
        {
            RunResult c = run_tasp_hd(s);
            if (c.sum_rate > r.sum_rate)
                r = std::move(c);
        }
        catch (const Infeasible &)
        {
        }
        r.scheme = Scheme::TaspHdUp;
        return r;
    }
    case Scheme::Ad:
        return run_ad(s);
    case Scheme::Dd:
        return run_dd(s);
    }
    throw DomainError("unknown scheme");
}

double evaluate_fr(const RunResult &r, const Scenario &s, int reuse)
{
    if (reuse < 1)
        throw DomainError("reuse factor must be >= 1");
    const auto nc = r.links.size();
    if (reuse != 1 && static_cast<std::size_t>(reuse) != nc)
        throw DomainError("FR-" + std::to_string(reuse) + " needs " + std::to_string(reuse) + " cells, the partition has " +
                          std::to_string(nc));
    std::vector<CellLink> links = r.links;
    const auto groups = frequency_groups(nc, reuse);
    for (std::size_t c = 0; c < nc; ++c)
        links[c].frequency_group = groups[c];
    const ChannelMatrix ch = build_channel(s);
    const double rate = sum_rate(sinr(ch, links, r.noise, s));
    return fr_mbe(r.duty * rate, reuse);
}

std::string run_result_json(const RunResult &r, int indent)
{
    using nlohmann::json;
    json cells = json::array();
    for (const auto &c : r.cells)
    {
        json q = json::array();
        for (Eigen::Index i = 0; i < c.allocation.q.size(); ++i)
            q.push_back(c.allocation.q(i));
        cells.push_back({{"users", c.users},
                         {"leds", c.leds},
                         {"q", q},
                         {"allocator_rate", c.allocation.rate},
                         {"dual_bound", c.allocation.dual_bound},
                         {"allocator_iterations", c.allocation.iterations},
                         {"allocator_converged", c.allocation.converged}});
    }
    json doc = {{"scheme", scheme_name(r.scheme)},
                {"eta", r.eta},
                {"duty", r.duty},
                {"active_leds", r.selection.active()},
                {"n_t", r.dimming.active},
                {"bias_current", r.dimming.bias},
                {"headroom", r.dimming.headroom},
                {"sum_rate", r.sum_rate},
                {"mbe_fr1", r.mbe},
                {"cv_rmse", r.cv},
                {"lux_min", r.lux_min},
                {"lux_max", r.lux_max},
                {"rate_trace", r.rate_trace},
                {"raw_rate_trace", r.raw_rate_trace},
                {"iterations", r.iterations},
                {"converged", r.converged},
                {"cells", cells}};
    return doc.dump(indent);
}

} // namespace vlcsel
