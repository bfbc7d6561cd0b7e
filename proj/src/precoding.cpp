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

#include "vlcsel/precoding.hpp"
#include "vlcsel/error.hpp"

#include <cmath>
#include <numbers>

namespace vlcsel
{

Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd &h, double rcond)
{
    if (h.rows() == 0 || h.cols() < h.rows())
        throw SingularChannel("channel has more users than LEDs");
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto &sv = svd.singularValues();
    const double cutoff = rcond * sv(0);
    if (!(sv(0) > 0.0) || sv(sv.size() - 1) <= cutoff)
        throw SingularChannel("effective channel is rank deficient");
    const Eigen::VectorXd inv = sv.cwiseInverse();
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

Precoder zf_precoder(const Eigen::MatrixXd &h_cell, std::span<const double> activation, std::span<const double> q)
{
    if (static_cast<Eigen::Index>(activation.size()) != h_cell.cols() ||
        static_cast<Eigen::Index>(q.size()) != h_cell.rows())
        throw DomainError("zf_precoder: dimension mismatch");
    const Eigen::Map<const Eigen::VectorXd> a(activation.data(), h_cell.cols());
    Precoder p;
    p.pinv = pseudo_inverse(h_cell * a.asDiagonal());
    p.sqrt_q.resize(h_cell.rows());
    for (Eigen::Index i = 0; i < h_cell.rows(); ++i)
    {
        if (q[static_cast<std::size_t>(i)] < 0.0)
            throw DomainError("zf_precoder: negative power");
        p.sqrt_q(i) = std::sqrt(q[static_cast<std::size_t>(i)]);
    }
    p.w = p.pinv * p.sqrt_q.asDiagonal();
    return p;
}

std::vector<int> frequency_groups(std::size_t num_cells, int reuse)
{
    if (reuse < 1)
        throw DomainError("reuse factor must be >= 1");
    std::vector<int> g(num_cells);
    for (std::size_t c = 0; c < num_cells; ++c)
        g[c] = static_cast<int>(c % static_cast<std::size_t>(reuse));
    return g;
}

double sinr_numerator_coefficient(const Scenario &s)
{
    const double gz = s.responsivity * s.eo_coefficient;
    return 2.0 * gz * gz / (std::numbers::pi * std::numbers::e);
}

double interference_coefficient(const Scenario &s)
{
    const double gz = s.responsivity * s.eo_coefficient;
    return gz * gz / 3.0;
}

namespace
{

// Row of H restricted to a cell's LEDs, scaled by the activation.
double projected_amplitude(const ChannelMatrix &ch, std::size_t user, const CellLink &cell, Eigen::Index column)
{
    double acc = 0.0;
    for (std::size_t j = 0; j < cell.leds.size(); ++j)
    {
        const auto jj = static_cast<Eigen::Index>(j);
        acc += ch.gains(static_cast<Eigen::Index>(user), static_cast<Eigen::Index>(cell.leds[j])) *
               cell.activation(jj) * cell.w(jj, column);
    }
    return acc;
}

} // namespace

std::vector<SinrTerms> sinr_terms(const ChannelMatrix &ch, std::span<const CellLink> cells,
                                  std::span<const double> noise, const Scenario &s)
{
    if (noise.size() != ch.num_users())
        throw DomainError("sinr: noise vector length does not match the user count");
    const double num_coef = sinr_numerator_coefficient(s);
    const double int_coef = interference_coefficient(s);

    std::vector<SinrTerms> out(ch.num_users());
    for (std::size_t c = 0; c < cells.size(); ++c)
    {
        const auto &cell = cells[c];
        for (std::size_t k = 0; k < cell.users.size(); ++k)
        {
            const auto u = cell.users[k];
            SinrTerms t;
            const double amp = projected_amplitude(ch, u, cell, static_cast<Eigen::Index>(k));
            t.desired = amp * amp;
            for (std::size_t c2 = 0; c2 < cells.size(); ++c2)
            {
                if (c2 == c || cells[c2].frequency_group != cell.frequency_group)
                    continue;
                for (Eigen::Index col = 0; col < cells[c2].w.cols(); ++col)
                {
                    const double x = projected_amplitude(ch, u, cells[c2], col);
                    t.interference += x * x;
                }
            }
            t.noise = noise[u];
            const double denom = int_coef * t.interference + t.noise;
            t.sinr = t.desired == 0.0 ? 0.0 : num_coef * t.desired / denom;
            out[u] = t;
        }
    }
    return out;
}

std::vector<double> sinr(const ChannelMatrix &ch, std::span<const CellLink> cells, std::span<const double> noise,
                         const Scenario &s)
{
    const auto terms = sinr_terms(ch, cells, noise, s);
    std::vector<double> xi(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i)
        xi[i] = terms[i].sinr;
    return xi;
}

double sum_rate(std::span<const double> xi)
{
    double r = 0.0;
    for (double x : xi)
    {
        if (x < 0.0 || std::isnan(x))
            throw DomainError("SINR must be non-negative");
        r += 0.5 * std::log2(1.0 + x);
    }
    return r;
}

double fr_mbe(double rate, int reuse)
{
    if (reuse < 1)
        throw DomainError("reuse factor must be >= 1");
    return rate / static_cast<double>(reuse);
}

std::vector<double> user_noise(const ChannelMatrix &ch, std::span<const CellLink> cells, const Scenario &s,
                               double bias_current)
{
    std::vector<double> out(ch.num_users(), 0.0);
    std::vector<double> row;
    for (const auto &cell : cells)
    {
        for (auto u : cell.users)
        {
            row.clear();
            const auto uu = static_cast<Eigen::Index>(u);
            if (s.include_intercell_dc)
            {
                for (const auto &other : cells)
                    for (std::size_t j = 0; j < other.leds.size(); ++j)
                        row.push_back(ch.gains(uu, static_cast<Eigen::Index>(other.leds[j])) *
                                      other.activation(static_cast<Eigen::Index>(j)));
            }
            else
            {
                for (std::size_t j = 0; j < cell.leds.size(); ++j)
                    row.push_back(ch.gains(uu, static_cast<Eigen::Index>(cell.leds[j])) *
                                  cell.activation(static_cast<Eigen::Index>(j)));
            }
            out[u] = noise_variance(row, s, bias_current);
        }
    }
    return out;
}

RateReport rate_report(const ChannelMatrix &ch, std::span<const CellLink> cells, std::span<const double> noise,
                       const Scenario &s)
{
    RateReport r;
    r.sinr = sinr(ch, cells, noise, s);
    r.rate.resize(r.sinr.size());
    for (std::size_t i = 0; i < r.sinr.size(); ++i)
        r.rate[i] = 0.5 * std::log2(1.0 + r.sinr[i]);
    r.sum_rate = sum_rate(r.sinr);
    return r;
}

} // namespace vlcsel
