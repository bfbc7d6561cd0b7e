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

#include "vlcsel/selector.hpp"
#include "vlcsel/error.hpp"
#include "vlcsel/precoding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

namespace vlcsel
{

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::Map<const Eigen::VectorXd> as_vec(std::span<const double> v)
{
    return {v.data(), static_cast<Eigen::Index>(v.size())};
}

std::span<const double> as_span(const Eigen::VectorXd &v)
{
    return {v.data(), static_cast<std::size_t>(v.size())};
}

// G = H diag(a) W and the shot-noise sums, kept so single swaps are cheap.
struct RateParts
{
    Eigen::MatrixXd g;     // N_R x N_R
    Eigen::VectorXd shots; // sum_j mask_ij h_ij a_j
};

RateParts rate_parts(const SelectionProblem &p, const Eigen::VectorXd &a)
{
    RateParts rp;
    const Eigen::MatrixXd ha = p.gains * a.asDiagonal();
    rp.g = ha * p.w;
    rp.shots = (ha.array() * p.shot_mask.array()).rowwise().sum();
    return rp;
}

double rate_of(const SelectionProblem &p, const RateParts &rp)
{
    const Eigen::Index nr = rp.g.rows();
    double r = 0.0;
    for (Eigen::Index i = 0; i < nr; ++i)
    {
        double inter = 0.0;
        for (Eigen::Index k = 0; k < nr; ++k)
            if (p.user_group[static_cast<std::size_t>(k)] != p.user_group[static_cast<std::size_t>(i)])
                inter += rp.g(i, k) * rp.g(i, k);
        const double d = p.int_coef * inter + p.noise_floor + p.shot_coef * rp.shots(i);
        r += 0.5 * std::log2(1.0 + p.num_coef * rp.g(i, i) * rp.g(i, i) / d);
    }
    return r;
}

// Parts after switching LED off_j out and on_k in.
void swap_parts(const SelectionProblem &p, const RateParts &base, Eigen::Index off_j, Eigen::Index on_k, RateParts &out)
{
    out.g = base.g - p.gains.col(off_j) * p.w.row(off_j) + p.gains.col(on_k) * p.w.row(on_k);
    out.shots = base.shots - (p.gains.col(off_j).array() * p.shot_mask.col(off_j).array()).matrix() +
                (p.gains.col(on_k).array() * p.shot_mask.col(on_k).array()).matrix();
}

Eigen::VectorXd top_n(const Eigen::VectorXd &a, std::size_t n)
{
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(a.size()));
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index x, Eigen::Index y) { return a(x) > a(y); });
    Eigen::VectorXd out = Eigen::VectorXd::Zero(a.size());
    for (std::size_t k = 0; k < n; ++k)
        out(idx[k]) = 1.0;
    return out;
}

bool has_cv_constraint(const SelectionProblem &p)
{
    return p.field != nullptr && std::isfinite(p.uniformity_threshold);
}

double cv_of(const SelectionProblem &p, const Eigen::VectorXd &a)
{
    if (p.field == nullptr)
        return 0.0;
    return cv_rmse(*p.field, as_span(a)).cv;
}

struct Candidate
{
    Eigen::VectorXd a;
    Eigen::VectorXd relaxed;
    double rate = -kInf;
    double cv = kInf;
    bool feasible = false;
    int start = 0;
};

bool better(const Candidate &x, const Candidate &y)
{
    if (x.feasible != y.feasible)
        return x.feasible;
    if (!x.feasible)
        return x.cv < y.cv;
    return x.rate > y.rate;
}

class Solver
{
  public:
    Solver(const SelectionProblem &p, std::size_t n, const SolverSettings &cfg, const SelectionOptions &opt)
        : p_(p), n_(n), nt_(p.gains.cols()), cfg_(cfg), check_(opt.check ? opt.check : coverage_check(p.gains)),
          rng_(opt.seed)
    {
    }

    SelectionState run(const std::optional<Eigen::VectorXd> &previous)
    {
        const Eigen::VectorXd uniform = Eigen::VectorXd::Constant(nt_, static_cast<double>(n_) / nt_);
        r0_ = std::max(std::abs(relaxed_rate(p_, as_span(uniform))), 1e-9);
        lambda_final_ = cfg_.adaptive_penalty ? 1e3 * r0_ : cfg_.penalty_lambda;

        Candidate best;
        bool have = false;
        auto offer = [&](Candidate c) {
            if (!have || better(c, best))
            {
                best = std::move(c);
                have = true;
            }
        };

        offer(from_start(uniform, 0));
        if (previous && previous->size() == nt_ && std::abs(previous->sum() - static_cast<double>(n_)) < 0.5)
        {
            Candidate c = finish(*previous, *previous, -1);
            offer(std::move(c));
        }
        const std::size_t kick = std::min<std::size_t>({3, n_, static_cast<std::size_t>(nt_) - n_});
        for (int r = 1; kick > 0 && r <= cfg_.selection_restarts; ++r)
        {
            Eigen::VectorXd v = best.a;
            std::vector<Eigen::Index> on, off;
            for (Eigen::Index j = 0; j < nt_; ++j)
                (v(j) > 0.5 ? on : off).push_back(j);
            std::shuffle(on.begin(), on.end(), rng_);
            std::shuffle(off.begin(), off.end(), rng_);
            for (std::size_t k = 0; k < kick; ++k)
            {
                v(on[k]) = 0.0;
                v(off[k]) = 1.0;
            }
            offer(from_start(0.5 * v + 0.5 * uniform, r));
            // The kicked point itself, polished without the relaxation.
            if (check_(as_span(v)) == 0)
                offer(finish(v, v, r));
        }

        SelectionState st;
        st.a = best.a;
        st.relaxed = best.relaxed;
        st.n_t = n_;
        st.penalty_lambda = lambda_final_;
        st.rate = best.rate;
        st.cv = best.cv;
        st.feasible = best.feasible;
        st.winning_start = best.start;
        st.trace = std::move(trace_);
        for (const auto &row : st.trace)
            if (row.start == best.start)
                st.objective_trace.push_back(row.objective);
        if (!st.feasible)
        {
            std::ostringstream os;
            os << "no selection with CV(RMSE) <= " << p_.uniformity_threshold << "; best candidate has CV "
               << best.cv;
            st.diagnostic = os.str();
        }
        return st;
    }

  private:
    struct Eval
    {
        double f = -kInf;
        Eigen::VectorXd g;
        double cv = 0.0;
        double penalty = 0.0;
        bool ok = false;
    };

    // Phase 0 minimizes CV; later phases maximize the penalized rate with a
    // log barrier on the CV constraint.
    Eval evaluate(const Eigen::VectorXd &a, int phase, double lambda, double tau)
    {
        Eval e;
        e.penalty = (a.array() - a.array().square()).sum();
        const bool cv_on = has_cv_constraint(p_);
        if (phase == 0)
        {
            e.cv = cv_of(p_, a);
            e.f = -e.cv;
            e.g = -cv_gradient(*p_.field, as_span(a));
            e.ok = true;
            return e;
        }
        e.f = penalized_objective(p_, as_span(a), lambda, &e.g);
        if (p_.field)
            e.cv = cv_of(p_, a);
        if (cv_on)
        {
            const double slack = p_.uniformity_threshold - e.cv;
            if (!(slack > 0.0))
                return e;
            e.f += tau * std::log(slack);
            e.g -= tau / slack * cv_gradient(*p_.field, as_span(a));
        }
        e.ok = true;
        return e;
    }

    // Projected gradient ascent with Armijo backtracking. Returns false when
    // phase 0 could not reach the CV target.
    bool ascend(Eigen::VectorXd &a, int start, int stage, int phase, double lambda, double tau)
    {
        Eval e = evaluate(a, phase, lambda, tau);
        if (!e.ok)
            return false;
        const double target = p_.uniformity_threshold * (1.0 - 1e-3);
        if (phase == 0 && e.cv < target)
            return true;
        double step = 0.5 / std::max(e.g.cwiseAbs().maxCoeff(), 1e-300);
        for (int it = 0; it < kMaxIters; ++it)
        {
            bool accepted = false;
            for (int bt = 0; bt < 60; ++bt)
            {
                const Eigen::VectorXd an = project_capped_simplex(a + step * e.g, static_cast<double>(n_));
                const Eigen::VectorXd d = an - a;
                if (d.cwiseAbs().maxCoeff() < 1e-12)
                    break;
                Eval en = evaluate(an, phase, lambda, tau);
                if (en.ok && en.f >= e.f + 1e-4 * e.g.dot(d))
                {
                    const double gain = en.f - e.f;
                    a = an;
                    e = std::move(en);
                    accepted = true;
                    log(start, stage, lambda, e, phase);
                    step *= 2.0;
                    if (gain <= 1e-12 * std::max(1.0, std::abs(e.f)))
                        it = kMaxIters;
                    break;
                }
                step *= 0.5;
            }
            if (!accepted)
                break;
            if (phase == 0 && e.cv < target)
                return true;
        }
        return phase != 0 || e.cv < target;
    }

    void log(int start, int stage, double lambda, const Eval &e, int phase)
    {
        SelectionTraceRow row;
        row.iteration = static_cast<int>(trace_.size());
        row.start = start;
        row.stage = phase == 0 ? -1 : stage;
        row.lambda = phase == 0 ? 0.0 : lambda;
        row.objective = e.f;
        row.penalty = e.penalty;
        row.cv = e.cv;
        trace_.push_back(row);
    }

    Candidate from_start(const Eigen::VectorXd &start_point, int start)
    {
        Eigen::VectorXd a = project_capped_simplex(start_point, static_cast<double>(n_));
        if (has_cv_constraint(p_) && cv_of(p_, a) >= p_.uniformity_threshold * (1.0 - 1e-3))
        {
            if (!ascend(a, start, -1, 0, 0.0, 0.0))
                return finish(a, top_n(a, n_), start);
        }
        std::vector<double> lambdas;
        for (double f : {1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3})
            if (f * r0_ < lambda_final_)
                lambdas.push_back(f * r0_);
        lambdas.push_back(lambda_final_);
        for (std::size_t k = 0; k < lambdas.size(); ++k)
        {
            const bool last = k + 1 == lambdas.size();
            const double tau = last ? cfg_.eps1 : std::max(cfg_.eps1, 1e-2 * r0_ * std::pow(0.1, k));
            ascend(a, start, static_cast<int>(k), 1, lambdas[k], tau);
        }
        return finish(a, top_n(a, n_), start);
    }

    Candidate finish(const Eigen::VectorXd &relaxed, const Eigen::VectorXd &rounded, int start)
    {
        Candidate c;
        c.relaxed = relaxed;
        c.start = start;
        c.a = round_and_repair(as_span(rounded), n_, check_);
        if (has_cv_constraint(p_))
            repair_cv(c.a);
        polish(c.a);
        c.rate = relaxed_rate(p_, as_span(c.a));
        c.cv = cv_of(p_, c.a);
        c.feasible = !has_cv_constraint(p_) || c.cv <= p_.uniformity_threshold;
        return c;
    }

    // Greedy CV-reducing swaps until the threshold holds or no swap helps.
    void repair_cv(Eigen::VectorXd &a)
    {
        const auto &lux = p_.field->lux;
        Eigen::VectorXd totals = lux * a;
        double cv = uniformity_of(totals).cv;
        while (cv > p_.uniformity_threshold)
        {
            double best_cv = cv;
            Eigen::Index bj = -1, bk = -1;
            for (Eigen::Index j = 0; j < nt_; ++j)
            {
                if (a(j) < 0.5)
                    continue;
                for (Eigen::Index k = 0; k < nt_; ++k)
                {
                    if (a(k) > 0.5)
                        continue;
                    const double v = uniformity_of(totals - lux.col(j) + lux.col(k)).cv;
                    if (v < best_cv - 1e-15)
                    {
                        Eigen::VectorXd trial = a;
                        trial(j) = 0.0;
                        trial(k) = 1.0;
                        if (check_(as_span(trial)) != 0)
                            continue;
                        best_cv = v;
                        bj = j;
                        bk = k;
                    }
                }
            }
            if (bj < 0)
                return;
            a(bj) = 0.0;
            a(bk) = 1.0;
            totals += lux.col(bk) - lux.col(bj);
            cv = best_cv;
        }
    }

    // 1-swap ascent on R that keeps the CV constraint and the structural check.
    void polish(Eigen::VectorXd &a)
    {
        const bool cv_on = has_cv_constraint(p_);
        if (cv_on && cv_of(p_, a) > p_.uniformity_threshold)
            return;
        RateParts base = rate_parts(p_, a), trial;
        double rate = rate_of(p_, base);
        Eigen::VectorXd totals;
        if (cv_on)
            totals = p_.field->lux * a;
        struct Move
        {
            double rate;
            Eigen::Index j, k;
        };
        std::vector<Move> moves;
        for (int pass = 0; pass < 4 * nt_; ++pass)
        {
            moves.clear();
            for (Eigen::Index j = 0; j < nt_; ++j)
            {
                if (a(j) < 0.5)
                    continue;
                for (Eigen::Index k = 0; k < nt_; ++k)
                {
                    if (a(k) > 0.5)
                        continue;
                    swap_parts(p_, base, j, k, trial);
                    const double r = rate_of(p_, trial);
                    if (r > rate * (1.0 + 1e-12) + 1e-15)
                        moves.push_back({r, j, k});
                }
            }
            std::stable_sort(moves.begin(), moves.end(), [](const Move &x, const Move &y) { return x.rate > y.rate; });
            bool moved = false;
            for (const auto &mv : moves)
            {
                if (cv_on &&
                    uniformity_of(totals - p_.field->lux.col(mv.j) + p_.field->lux.col(mv.k)).cv >
                        p_.uniformity_threshold)
                    continue;
                Eigen::VectorXd cand = a;
                cand(mv.j) = 0.0;
                cand(mv.k) = 1.0;
                if (check_(as_span(cand)) != 0)
                    continue;
                a = cand;
                if (cv_on)
                    totals += p_.field->lux.col(mv.k) - p_.field->lux.col(mv.j);
                base = rate_parts(p_, a);
                rate = rate_of(p_, base);
                moved = true;
                break;
            }
            if (!moved)
                return;
        }
    }

    static constexpr int kMaxIters = 300;
    const SelectionProblem &p_;
    std::size_t n_;
    Eigen::Index nt_;
    const SolverSettings &cfg_;
    SelectionCheck check_;
    std::mt19937_64 rng_;
    double r0_ = 1.0;
    double lambda_final_ = 1e5;
    std::vector<SelectionTraceRow> trace_;
};

} // namespace

SelectionProblem make_selection_problem(const Scenario &s, const ChannelMatrix &ch, const Eigen::MatrixXd &w,
                                        std::span<const int> user_cell, std::span<const int> led_cell,
                                        double bias_current, const IlluminanceField *field)
{
    const auto nr = static_cast<Eigen::Index>(ch.num_users());
    const auto nt = static_cast<Eigen::Index>(ch.num_leds());
    if (w.rows() != nt || w.cols() != nr || static_cast<Eigen::Index>(user_cell.size()) != nr ||
        static_cast<Eigen::Index>(led_cell.size()) != nt)
        throw DomainError("make_selection_problem: dimension mismatch");
    SelectionProblem p;
    p.gains = ch.gains;
    p.w = w;
    p.user_group.assign(user_cell.begin(), user_cell.end());
    p.shot_mask = Eigen::MatrixXd::Zero(nr, nt);
    for (Eigen::Index i = 0; i < nr; ++i)
        for (Eigen::Index j = 0; j < nt; ++j)
            if (s.include_intercell_dc || (led_cell[static_cast<std::size_t>(j)] >= 0 &&
                                           led_cell[static_cast<std::size_t>(j)] == user_cell[static_cast<std::size_t>(i)]))
                p.shot_mask(i, j) = 1.0;
    p.num_coef = sinr_numerator_coefficient(s);
    p.int_coef = interference_coefficient(s);
    const double unit = 1.0;
    const NoiseTerms base = noise_terms({}, s, bias_current);
    p.noise_floor = base.background + base.thermal;
    p.shot_coef = noise_terms({&unit, 1}, s, bias_current).shot;
    p.field = field;
    p.uniformity_threshold = s.uniformity_threshold;
    return p;
}

double relaxed_rate(const SelectionProblem &p, std::span<const double> a_in, Eigen::VectorXd *grad)
{
    const Eigen::Index nr = p.gains.rows();
    const Eigen::Index nt = p.gains.cols();
    if (static_cast<Eigen::Index>(a_in.size()) != nt)
        throw DomainError("relaxed_rate: activation length does not match the LED count");
    const Eigen::VectorXd a = as_vec(a_in);
    const RateParts rp = rate_parts(p, a);

    Eigen::VectorXd u(nr), v(nr);
    Eigen::MatrixXd z = Eigen::MatrixXd::Zero(nr, nr);
    double r = 0.0;
    for (Eigen::Index i = 0; i < nr; ++i)
    {
        double inter = 0.0;
        for (Eigen::Index k = 0; k < nr; ++k)
            if (p.user_group[static_cast<std::size_t>(k)] != p.user_group[static_cast<std::size_t>(i)])
                inter += rp.g(i, k) * rp.g(i, k);
        const double d = p.int_coef * inter + p.noise_floor + p.shot_coef * rp.shots(i);
        const double s = rp.g(i, i) * rp.g(i, i);
        const double xi = p.num_coef * s / d;
        r += 0.5 * std::log2(1.0 + xi);
        const double c = 0.5 / (std::numbers::ln2 * (1.0 + xi));
        u(i) = c * p.num_coef * 2.0 * rp.g(i, i) / d;
        v(i) = c * p.num_coef * s / (d * d);
        for (Eigen::Index k = 0; k < nr; ++k)
            if (p.user_group[static_cast<std::size_t>(k)] != p.user_group[static_cast<std::size_t>(i)])
                z(i, k) = 2.0 * p.int_coef * v(i) * rp.g(i, k);
    }
    if (grad)
    {
        // d xi_i / d a_j through the desired term, the interference and the shot noise
        const Eigen::MatrixXd wz = p.w * z.transpose(); // N_T x N_R
        grad->resize(nt);
        for (Eigen::Index j = 0; j < nt; ++j)
        {
            double acc = 0.0;
            for (Eigen::Index i = 0; i < nr; ++i)
            {
                const double h = p.gains(i, j);
                acc += u(i) * h * p.w(j, i) - h * wz(j, i) - v(i) * p.shot_coef * p.shot_mask(i, j) * h;
            }
            (*grad)(j) = acc;
        }
    }
    return r;
}

double penalized_objective(const SelectionProblem &p, std::span<const double> a, double lambda, Eigen::VectorXd *grad)
{
    const double r = relaxed_rate(p, a, grad);
    const auto av = as_vec(a);
    if (grad)
        *grad -= lambda * (1.0 - 2.0 * av.array()).matrix();
    return r - lambda * (av.array() - av.array().square()).sum();
}

Eigen::VectorXd project_capped_simplex(const Eigen::VectorXd &v, double n)
{
    const auto size = static_cast<double>(v.size());
    if (n < 0.0 || n > size)
        throw DomainError("project_capped_simplex: target outside [0, size]");
    if (v.size() == 0)
        return v;
    double lo = v.minCoeff() - 1.0, hi = v.maxCoeff();
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it)
    {
        const double tau = 0.5 * (lo + hi);
        const double s = (v.array() - tau).max(0.0).min(1.0).sum();
        (s > n ? lo : hi) = tau;
    }
    Eigen::VectorXd out = (v.array() - 0.5 * (lo + hi)).max(0.0).min(1.0);
    // remove the bisection residue on the free coordinates
    const double excess = out.sum() - n;
    int free = 0;
    for (Eigen::Index j = 0; j < out.size(); ++j)
        free += out(j) > 0.0 && out(j) < 1.0;
    if (free > 0 && excess != 0.0)
        for (Eigen::Index j = 0; j < out.size(); ++j)
            if (out(j) > 0.0 && out(j) < 1.0)
                out(j) = std::clamp(out(j) - excess / free, 0.0, 1.0);
    return out;
}

std::vector<std::size_t> SelectionState::active() const
{
    std::vector<std::size_t> out;
    for (Eigen::Index j = 0; j < a.size(); ++j)
        if (a(j) > 0.5)
            out.push_back(static_cast<std::size_t>(j));
    return out;
}

SelectionCheck coverage_check(const Eigen::MatrixXd &gains)
{
    return [gains](std::span<const double> a) {
        int missing = 0;
        for (Eigen::Index i = 0; i < gains.rows(); ++i)
        {
            bool seen = false;
            for (Eigen::Index j = 0; j < gains.cols() && !seen; ++j)
                seen = a[static_cast<std::size_t>(j)] > 0.5 && gains(i, j) > 0.0;
            missing += !seen;
        }
        return missing;
    };
}

Eigen::VectorXd round_and_repair(std::span<const double> a_in, std::size_t n_t, const SelectionCheck &check)
{
    const Eigen::VectorXd a = as_vec(a_in);
    if (n_t > static_cast<std::size_t>(a.size()))
        throw DomainError("round_and_repair: n_t exceeds the LED count");
    Eigen::VectorXd sel = top_n(a, n_t);
    int defects = check(as_span(sel));
    while (defects > 0)
    {
        std::vector<Eigen::Index> on;
        for (Eigen::Index j = 0; j < a.size(); ++j)
            if (sel(j) > 0.5)
                on.push_back(j);
        std::stable_sort(on.begin(), on.end(), [&](Eigen::Index x, Eigen::Index y) { return a(x) < a(y); });
        bool fixed = false;
        for (Eigen::Index k = 0; k < a.size() && !fixed; ++k)
        {
            if (sel(k) > 0.5)
                continue;
            for (Eigen::Index j : on)
            {
                Eigen::VectorXd trial = sel;
                trial(j) = 0.0;
                trial(k) = 1.0;
                const int d = check(as_span(trial));
                if (d < defects)
                {
                    sel = trial;
                    defects = d;
                    fixed = true;
                    break;
                }
            }
        }
        if (!fixed)
            throw Infeasible("no LED swap restores a usable selection");
    }
    return sel;
}

SelectionState solve_selection(const SelectionProblem &p, std::size_t n_t, const SolverSettings &settings,
                               const SelectionOptions &options)
{
    const auto nt = static_cast<std::size_t>(p.gains.cols());
    if (n_t == 0 || n_t > nt)
        throw DomainError("solve_selection: n_t must be in [1, N_T]");
    if (p.w.rows() != p.gains.cols() || p.w.cols() != p.gains.rows() ||
        p.user_group.size() != static_cast<std::size_t>(p.gains.rows()))
        throw DomainError("solve_selection: inconsistent problem dimensions");
    if (n_t == nt)
    {
        SelectionState st;
        st.a = Eigen::VectorXd::Ones(p.gains.cols());
        st.relaxed = st.a;
        st.n_t = n_t;
        st.penalty_lambda = settings.penalty_lambda;
        st.rate = relaxed_rate(p, as_span(st.a));
        st.cv = cv_of(p, st.a);
        st.feasible = !has_cv_constraint(p) || st.cv <= p.uniformity_threshold;
        if (!st.feasible)
            st.diagnostic = "all LEDs active and CV(RMSE) above the threshold";
        return st;
    }
    Solver solver(p, n_t, settings, options);
    return solver.run(options.previous);
}

std::string selection_trace_csv(const SelectionState &state)
{
    std::ostringstream os;
    os.precision(17);
    os << "iteration,start,stage,lambda,objective,penalty,cv\n";
    for (const auto &r : state.trace)
        os << r.iteration << ',' << r.start << ',' << r.stage << ',' << r.lambda << ',' << r.objective << ','
           << r.penalty << ',' << r.cv << '\n';
    return os.str();
}

} // namespace vlcsel
