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

#include "vlcsel/allocator.hpp"
#include "vlcsel/error.hpp"
#include "vlcsel/precoding.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

namespace vlcsel
{

namespace
{

Eigen::Map<const Eigen::VectorXd> as_vec(std::span<const double> v)
{
    return {v.data(), static_cast<Eigen::Index>(v.size())};
}

Eigen::VectorXd row_abs_sums(const Eigen::MatrixXd &pinv, const Eigen::VectorXd &q)
{
    const Eigen::MatrixXd m = pinv * q.asDiagonal() * pinv.transpose();
    return m.cwiseAbs().rowwise().sum();
}

constexpr double kTwoLn2 = 2.0 * std::numbers::ln2;

} // namespace

double RowConstraint::max_violation() const
{
    if (rows.size() == 0)
        return 0.0;
    return std::max(0.0, rows.maxCoeff() - bound);
}

RowConstraint strengthen_constraint(const Eigen::MatrixXd &pinv, std::span<const double> q, double headroom,
                                    std::size_t num_users)
{
    if (static_cast<Eigen::Index>(q.size()) != pinv.cols())
        throw DomainError("strengthen_constraint: q length does not match the user count");
    if (num_users == 0)
        throw DomainError("strengthen_constraint: no users");
    RowConstraint rc;
    rc.rows = row_abs_sums(pinv, as_vec(q));
    rc.bound = headroom * headroom / static_cast<double>(num_users);
    return rc;
}

Eigen::VectorXd sinr_coefficients(const Scenario &s, std::span<const double> delta, std::span<const double> noise)
{
    if (delta.size() != noise.size())
        throw DomainError("sinr_coefficients: length mismatch");
    const double num = sinr_numerator_coefficient(s);
    const double beta = interference_coefficient(s);
    Eigen::VectorXd m(static_cast<Eigen::Index>(delta.size()));
    for (std::size_t i = 0; i < delta.size(); ++i)
        m(static_cast<Eigen::Index>(i)) = num / (beta * delta[i] + noise[i]);
    return m;
}

Eigen::VectorXd power_caps(const Eigen::MatrixXd &pinv, double bound)
{
    Eigen::VectorXd caps(pinv.cols());
    for (Eigen::Index i = 0; i < pinv.cols(); ++i)
    {
        const double d = pinv.col(i).cwiseAbs2().maxCoeff();
        caps(i) = d > 0.0 ? bound / d : std::numeric_limits<double>::infinity();
    }
    return caps;
}

Eigen::VectorXd kkt_denominators(const Eigen::MatrixXd &w, std::span<const double> lambda, const Eigen::MatrixXd &pinv)
{
    if (w.rows() != pinv.rows() || w.cols() != pinv.rows() ||
        static_cast<Eigen::Index>(lambda.size()) != pinv.cols())
        throw DomainError("kkt_denominators: dimension mismatch");
    // (P^T W P)_ii
    const Eigen::MatrixXd wp = w * pinv;
    Eigen::VectorXd d = (pinv.array() * wp.array()).colwise().sum().transpose();
    return d - as_vec(lambda);
}

Eigen::VectorXd kkt_q(const Eigen::MatrixXd &w, std::span<const double> lambda, std::span<const double> m,
                      const Eigen::MatrixXd &pinv, std::span<const double> caps)
{
    if (static_cast<Eigen::Index>(m.size()) != pinv.cols() || caps.size() != m.size())
        throw DomainError("kkt_q: dimension mismatch");
    const Eigen::VectorXd d = kkt_denominators(w, lambda, pinv);
    Eigen::VectorXd q(d.size());
    for (Eigen::Index i = 0; i < d.size(); ++i)
    {
        const auto ii = static_cast<std::size_t>(i);
        if (!(d(i) > 0.0))
        {
            q(i) = caps[ii];
            continue;
        }
        const double inv_m = m[ii] > 0.0 ? 1.0 / m[ii] : std::numeric_limits<double>::infinity();
        q(i) = std::clamp(1.0 / (kTwoLn2 * d(i)) - inv_m, 0.0, caps[ii]);
    }
    return q;
}

Eigen::VectorXd kkt_q(std::span<const double> mu, std::span<const double> lambda, std::span<const double> m,
                      const Eigen::MatrixXd &pinv, std::span<const double> caps)
{
    if (static_cast<Eigen::Index>(mu.size()) != pinv.rows())
        throw DomainError("kkt_q: mu length does not match the LED count");
    const Eigen::MatrixXd w = as_vec(mu).replicate(1, pinv.rows());
    return kkt_q(w, lambda, m, pinv, caps);
}

void project_row_weights(Eigen::Ref<Eigen::VectorXd> w, double &mu)
{
    const double amax = w.size() ? w.cwiseAbs().maxCoeff() : 0.0;
    if (amax <= mu)
    {
        mu = std::max(mu, 0.0);
        return;
    }
    std::vector<double> a(static_cast<std::size_t>(w.size()));
    for (Eigen::Index l = 0; l < w.size(); ++l)
        a[static_cast<std::size_t>(l)] = std::abs(w(l));
    std::sort(a.begin(), a.end(), std::greater<>());
    double cs = 0.0, t = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
    {
        cs += a[k];
        const double tk = (mu + cs) / static_cast<double>(k + 2);
        const double next = k + 1 < a.size() ? a[k + 1] : 0.0;
        if (tk >= next)
        {
            t = std::max(tk, 0.0);
            break;
        }
    }
    w = w.cwiseMax(-t).cwiseMin(t);
    mu = t;
}

double allocation_rate(std::span<const double> m, std::span<const double> q)
{
    if (m.size() != q.size())
        throw DomainError("allocation_rate: length mismatch");
    double r = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i)
        r += 0.5 * std::log2(1.0 + m[i] * q[i]);
    return r;
}

AllocationState run_algorithm1(const AllocationProblem &pb, const SolverSettings &cfg)
{
    const Eigen::Index nt = pb.pinv.rows();
    const Eigen::Index nr = pb.pinv.cols();
    if (pb.m.size() != nr)
        throw DomainError("run_algorithm1: m length does not match the user count");
    if (pb.headroom < 0.0)
        throw DomainError("run_algorithm1: negative headroom");

    AllocationState st;
    st.m = pb.m;
    st.q = Eigen::VectorXd::Zero(nr);
    st.mu = Eigen::VectorXd::Zero(nt);
    st.row_weights = Eigen::MatrixXd::Zero(nt, nt);
    st.lambda = Eigen::VectorXd::Zero(nr);
    if (nr == 0)
    {
        st.converged = true;
        return st;
    }
    st.bound = pb.headroom * pb.headroom / static_cast<double>(nr);
    const double g_ones = row_abs_sums(pb.pinv, Eigen::VectorXd::Ones(nr)).maxCoeff();
    if (st.bound == 0.0 || !(g_ones > 0.0))
    {
        st.converged = true;
        return st;
    }

    // Normalized units: uniform q = 1 saturates the tightest row, rhs = 1.
    const double scale = st.bound / g_ones;
    const Eigen::MatrixXd pn = pb.pinv / std::sqrt(g_ones);
    const Eigen::VectorXd mt = pb.m * scale;
    double kappa = 0.0;
    for (Eigen::Index i = 0; i < nr; ++i)
        kappa += mt(i) / (kTwoLn2 * (1.0 + mt(i)));
    kappa /= static_cast<double>(nr);
    if (!(kappa > 0.0))
        kappa = 1.0;
    const Eigen::VectorXd caps = power_caps(pn, 1.0);
    const std::span<const double> mt_s(mt.data(), static_cast<std::size_t>(nr));
    const std::span<const double> caps_s(caps.data(), static_cast<std::size_t>(nr));

    Eigen::VectorXd mu = Eigen::VectorXd::Constant(nt, 0.1);
    Eigen::MatrixXd w = Eigen::MatrixXd::Constant(nt, nt, 0.1);
    Eigen::VectorXd lam = Eigen::VectorXd::Constant(nr, 0.1);

    Eigen::VectorXd best_q = Eigen::VectorXd::Zero(nr);
    double best = -1.0;
    double min_dual = std::numeric_limits<double>::infinity();
    double prev_rate = std::numeric_limits<double>::quiet_NaN();
    Eigen::VectorXd window_sum = Eigen::VectorXd::Zero(nr);
    int window_count = 0;

    auto consider = [&](const Eigen::VectorXd &q) -> double {
        const double v = row_abs_sums(pn, q).maxCoeff();
        const Eigen::VectorXd qf = v > 0.0 ? Eigen::VectorXd(q / v) : q;
        const double r = allocation_rate(mt_s, {qf.data(), static_cast<std::size_t>(nr)});
        if (r > best)
        {
            best = r;
            best_q = qf;
        }
        return r;
    };

    const int cap_iters = std::max(1, cfg.max_inner_iters);
    int t = 1;
    for (; t <= cap_iters; ++t)
    {
        const Eigen::MatrixXd kw = kappa * w;
        const Eigen::VectorXd klam = kappa * lam;
        const Eigen::VectorXd qs =
            kkt_q(kw, {klam.data(), static_cast<std::size_t>(nr)}, mt_s, pn, caps_s);
        const Eigen::MatrixXd mm = pn * qs.asDiagonal() * pn.transpose();
        const Eigen::VectorXd g = mm.cwiseAbs().rowwise().sum();

        const double f = allocation_rate(mt_s, {qs.data(), static_cast<std::size_t>(nr)});
        const double dual = f - kappa * ((w.array() * mm.array()).sum() - mu.sum()) + kappa * lam.dot(qs);
        min_dual = std::min(min_dual, dual);

        const double rate = consider(qs);
        if ((t & (t - 1)) == 0)
        {
            window_sum.setZero();
            window_count = 0;
        }
        window_sum += qs;
        ++window_count;
        consider(window_sum / window_count);

        AllocatorTraceRow row;
        row.t = t;
        row.rate = rate;
        row.best_rate = best;
        row.dual = dual;
        row.max_violation = st.bound * std::max(0.0, g.maxCoeff() - 1.0);
        row.mu_norm = kappa / st.bound * mu.norm();
        row.lambda_norm = kappa / scale * lam.norm();
        st.trace.push_back(row);

        const double theta = subgradient_step(cfg.stepsize_a, t);
        w += theta * mm;
        mu.array() -= theta;
        for (Eigen::Index j = 0; j < nt; ++j)
        {
            Eigen::VectorXd r = w.row(j).transpose();
            project_row_weights(r, mu(j));
            w.row(j) = r.transpose();
        }
        lam = (lam - theta * qs).cwiseMax(0.0);

        const bool small_change = t > 1 && (rate - prev_rate) * (rate - prev_rate) <= cfg.eps2;
        const bool small_gap = min_dual - best <= cfg.gap_tol * std::max(best, 1e-12);
        prev_rate = rate;
        if (small_change && small_gap)
        {
            st.converged = true;
            break;
        }
    }
    st.iterations = std::min(t, cap_iters);

    st.q = best_q * scale;
    RowConstraint rc = strengthen_constraint(pb.pinv, {st.q.data(), static_cast<std::size_t>(nr)}, pb.headroom,
                                             static_cast<std::size_t>(nr));
    if (rc.rows.maxCoeff() > rc.bound)
    {
        st.q *= rc.bound / rc.rows.maxCoeff();
        rc.rows *= rc.bound / rc.rows.maxCoeff();
    }
    st.rate = allocation_rate({pb.m.data(), static_cast<std::size_t>(nr)}, {st.q.data(), static_cast<std::size_t>(nr)});
    st.dual_bound = min_dual;
    st.mu = kappa / st.bound * mu;
    st.row_weights = kappa / st.bound * w;
    st.lambda = kappa / scale * lam;
    st.slack_residual = (st.mu.array() * (rc.bound - rc.rows.array()).abs()).maxCoeff();
    st.nonneg_residual = (st.lambda.array() * st.q.array()).maxCoeff();
    return st;
}

std::string allocator_trace_csv(const AllocationState &state)
{
    std::ostringstream os;
    os.precision(17);
    os << "t,rate,best_rate,dual,max_violation,mu_norm,lambda_norm\n";
    for (const auto &r : state.trace)
        os << r.t << ',' << r.rate << ',' << r.best_rate << ',' << r.dual << ',' << r.max_violation << ','
           << r.mu_norm << ',' << r.lambda_norm << '\n';
    return os.str();
}

} // namespace vlcsel
