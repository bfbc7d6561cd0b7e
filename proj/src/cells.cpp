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

#include "vlcsel/cells.hpp"
#include "vlcsel/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace vlcsel
{

UserClusters cluster_users(std::span<const Point3> users, double d0)
{
    UserClusters out;
    std::vector<bool> assigned(users.size(), false);
    for (std::size_t seed = 0; seed < users.size(); ++seed)
    {
        if (assigned[seed])
            continue;
        std::vector<std::size_t> members{seed};
        assigned[seed] = true;
        Point2 centroid{users[seed].x, users[seed].y};

        bool grew = true;
        while (grew)
        {
            grew = false;
            for (std::size_t u = 0; u < users.size(); ++u)
            {
                if (assigned[u])
                    continue;
                if (std::hypot(users[u].x - centroid.x, users[u].y - centroid.y) < d0)
                {
                    members.push_back(u);
                    assigned[u] = true;
                    double sx = 0.0, sy = 0.0;
                    for (auto m : members)
                    {
                        sx += users[m].x;
                        sy += users[m].y;
                    }
                    centroid = {sx / static_cast<double>(members.size()), sy / static_cast<double>(members.size())};
                    grew = true;
                    break;
                }
            }
        }
        std::sort(members.begin(), members.end());
        out.members.push_back(std::move(members));
        out.centroids.push_back(centroid);
    }
    return out;
}

AssociationMatrix make_association_matrix(const Eigen::MatrixXd &gains, std::span<const std::size_t> candidate_leds)
{
    AssociationMatrix a;
    for (auto j : candidate_leds)
        if (gains.col(static_cast<Eigen::Index>(j)).maxCoeff() > 0.0)
            a.led_ids.push_back(j);
    std::sort(a.led_ids.begin(), a.led_ids.end());
    a.m.resize(gains.rows(), static_cast<Eigen::Index>(a.led_ids.size()));
    for (std::size_t c = 0; c < a.led_ids.size(); ++c)
        a.m.col(static_cast<Eigen::Index>(c)) = gains.col(static_cast<Eigen::Index>(a.led_ids[c]));
    return a;
}

CellPartition associate_leds(const AssociationMatrix &assoc, const UserClusters &clusters)
{
    Eigen::MatrixXd m = assoc.m;
    const Eigen::Index n_users = m.rows();
    const Eigen::Index n_cols = m.cols();

    CellPartition p;
    p.user_clusters = clusters.members;
    p.centroids = clusters.centroids;
    p.led_sets.resize(clusters.size());
    p.user_cell.assign(static_cast<std::size_t>(n_users), -1);
    for (std::size_t c = 0; c < clusters.size(); ++c)
        for (auto u : clusters.members[c])
            p.user_cell.at(u) = static_cast<int>(c);
    for (std::size_t u = 0; u < p.user_cell.size(); ++u)
        if (p.user_cell[u] < 0)
            throw Error("user " + std::to_string(u) + " belongs to no cluster");

    std::size_t max_led = 0;
    for (auto id : assoc.led_ids)
        max_led = std::max(max_led, id + 1);
    p.led_cell.assign(max_led, -1);

    auto assign = [&](Eigen::Index col, Eigen::Index user) {
        const auto led = assoc.led_ids[static_cast<std::size_t>(col)];
        const int cell = p.user_cell[static_cast<std::size_t>(user)];
        p.led_cell[led] = cell;
        p.led_sets[static_cast<std::size_t>(cell)].push_back(led);
        m.col(col).setZero();
    };

    // One LED to one user.
    for (Eigen::Index i = 0; i < n_users; ++i)
    {
        Eigen::Index best = -1;
        double best_gain = 0.0;
        for (Eigen::Index j = 0; j < n_cols; ++j)
            if (m(i, j) > best_gain)
            {
                best_gain = m(i, j);
                best = j;
            }
        if (best < 0)
            throw Infeasible("user " + std::to_string(i) + " has no remaining line-of-sight LED");
        p.anchors.push_back({static_cast<std::size_t>(i), assoc.led_ids[static_cast<std::size_t>(best)]});
        assign(best, i);
    }

    // Remaining LEDs follow their strongest user.
    for (Eigen::Index j = 0; j < n_cols; ++j)
    {
        Eigen::Index best = -1;
        double best_gain = 0.0;
        for (Eigen::Index i = 0; i < n_users; ++i)
            if (m(i, j) > best_gain)
            {
                best_gain = m(i, j);
                best = i;
            }
        if (best >= 0)
            assign(j, best);
    }

    for (auto &set : p.led_sets)
        std::sort(set.begin(), set.end());
    return p;
}

CellPartition form_cells(const ChannelMatrix &channel, const UserClusters &clusters)
{
    std::vector<std::size_t> all(channel.num_leds());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return update_cells(all, channel, clusters);
}

CellPartition update_cells(std::span<const std::size_t> active_leds, const ChannelMatrix &channel,
                           const UserClusters &clusters)
{
    auto p = associate_leds(make_association_matrix(channel.gains, active_leds), clusters);
    p.led_cell.resize(channel.num_leds(), -1);
    return p;
}

std::string partition_table_csv(const CellPartition &p)
{
    std::ostringstream out;
    out << "kind,index,cell\n";
    for (std::size_t u = 0; u < p.user_cell.size(); ++u)
        out << "user," << u << ',' << p.user_cell[u] << '\n';
    for (std::size_t j = 0; j < p.led_cell.size(); ++j)
        out << "led," << j << ',' << p.led_cell[j] << '\n';
    return out.str();
}

} // namespace vlcsel
