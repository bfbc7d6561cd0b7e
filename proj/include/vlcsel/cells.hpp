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

#pragma once

#include "vlcsel/channel.hpp"
#include "vlcsel/scenario.hpp"

#include <Eigen/Dense>

#include <span>
#include <string>
#include <vector>

namespace vlcsel
{

struct UserClusters
{
    std::vector<std::vector<std::size_t>> members;
    std::vector<Point2> centroids;
    std::size_t size() const { return members.size(); }
};

/// Greedy sequential clustering: each cluster is seeded with the first
/// unassigned user; the first unassigned user closer than d0 to the running
/// centroid is absorbed and the centroid recomputed, until no user qualifies.
UserClusters cluster_users(std::span<const Point3> users, double d0);

/// Gain matrix restricted to the candidate LEDs that see at least one user.
struct AssociationMatrix
{
    Eigen::MatrixXd m;                 // users x n_los
    std::vector<std::size_t> led_ids;  // column -> global LED index
    std::size_t n_los() const { return led_ids.size(); }
};

AssociationMatrix make_association_matrix(const Eigen::MatrixXd &gains, std::span<const std::size_t> candidate_leds);

struct AssociationPair
{
    std::size_t user;
    std::size_t led;
};

struct CellPartition
{
    std::vector<std::vector<std::size_t>> user_clusters; // ascending user ids per cell
    std::vector<std::vector<std::size_t>> led_sets;      // ascending LED ids per cell
    std::vector<Point2> centroids;
    std::vector<int> user_cell; // cell of each user
    std::vector<int> led_cell;  // cell of each LED, -1 when unassigned
    std::vector<AssociationPair> anchors; // one-to-one pairs of the first phase

    std::size_t num_cells() const { return user_clusters.size(); }
};

/// Two-phase association. Phase one walks users in ascending order and gives
/// each its strongest remaining LED; phase two hands every remaining LOS LED
/// to the cell of its strongest user. Ties go to the lowest index. Throws
/// Infeasible when a user has no remaining LOS LED in phase one.
CellPartition associate_leds(const AssociationMatrix &assoc, const UserClusters &clusters);

/// associate_leds over every LED of the channel.
CellPartition form_cells(const ChannelMatrix &channel, const UserClusters &clusters);

/// Re-association restricted to the active LEDs; user clusters are kept.
CellPartition update_cells(std::span<const std::size_t> active_leds, const ChannelMatrix &channel,
                           const UserClusters &clusters);

/// "kind,index,cell" rows (kind is user or led) for plotting cell maps.
std::string partition_table_csv(const CellPartition &partition);

} // namespace vlcsel
