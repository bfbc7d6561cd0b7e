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

#include "vlcsel/illumination.hpp"
#include "vlcsel/channel.hpp"
#include "vlcsel/error.hpp"

#include <cmath>

namespace vlcsel
{

IlluminanceField build_field(const Scenario &s)
{
    IlluminanceField f;
    f.grid_spacing = s.grid_spacing;
    // Small relative slack so that an exact multiple does not gain a point.
    f.nx = static_cast<std::size_t>(std::ceil(s.room.length / s.grid_spacing * (1.0 - 1e-12)));
    f.ny = static_cast<std::size_t>(std::ceil(s.room.width / s.grid_spacing * (1.0 - 1e-12)));
    f.origin_x = -0.5 * static_cast<double>(f.nx - 1) * s.grid_spacing;
    f.origin_y = -0.5 * static_cast<double>(f.ny - 1) * s.grid_spacing;

    f.points.reserve(f.nx * f.ny);
    for (std::size_t r = 0; r < f.ny; ++r)
        for (std::size_t c = 0; c < f.nx; ++c)
            f.points.push_back({f.origin_x + static_cast<double>(c) * s.grid_spacing,
                                f.origin_y + static_cast<double>(r) * s.grid_spacing});

    f.lux.resize(static_cast<Eigen::Index>(f.points.size()), static_cast<Eigen::Index>(s.num_leds()));
    for (Eigen::Index k = 0; k < f.lux.rows(); ++k)
    {
        const auto &pt = f.points[static_cast<std::size_t>(k)];
        const Point3 sample{pt.x, pt.y, s.receiver_plane_height};
        for (Eigen::Index j = 0; j < f.lux.cols(); ++j)
            f.lux(k, j) = illuminance(s.led_positions[static_cast<std::size_t>(j)], sample, s);
    }
    return f;
}

Eigen::VectorXd point_totals(const IlluminanceField &field, std::span<const double> weights)
{
    if (static_cast<Eigen::Index>(weights.size()) != field.lux.cols())
        throw DomainError("weight vector length does not match the LED count");
    const Eigen::Map<const Eigen::VectorXd> w(weights.data(), static_cast<Eigen::Index>(weights.size()));
    return field.lux * w;
}

UniformityStats uniformity_of(const Eigen::VectorXd &totals)
{
    UniformityStats st;
    const double k = static_cast<double>(totals.size());
    st.mean = totals.sum() / k;
    if (!(st.mean > 0.0))
        throw DomainError("mean illuminance is zero; CV(RMSE) undefined");
    st.rmse = std::sqrt((totals.array() - st.mean).square().sum() / k);
    st.cv = st.rmse / st.mean;
    return st;
}

UniformityStats cv_rmse(const IlluminanceField &field, std::span<const double> weights)
{
    return uniformity_of(point_totals(field, weights));
}

Eigen::VectorXd cv_gradient(const IlluminanceField &field, std::span<const double> weights)
{
    const Eigen::VectorXd totals = point_totals(field, weights);
    const auto st = uniformity_of(totals);
    const double k = static_cast<double>(totals.size());
    const Eigen::VectorXd col_mean = field.lux.colwise().sum().transpose() / k;
    if (st.rmse == 0.0)
        return Eigen::VectorXd::Zero(field.lux.cols());
    const Eigen::VectorXd centered = totals.array() - st.mean;
    // d rmse / dw_j = mean_k((T_k - mean) E_kj) / rmse
    const Eigen::VectorXd d_rmse = field.lux.transpose() * centered / (k * st.rmse);
    return (d_rmse * st.mean - st.rmse * col_mean) / (st.mean * st.mean);
}

} // namespace vlcsel
