// Copyright 2026 The Powersys Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <span>

#include <Eigen/Dense>

#include "powersys/power_graph.hpp"

/// Adjacency builders for the graph shapes that recur in analyses: chains, one-way cycles,
/// unions (complete mutual subgraphs) and one node dominating several others. Builders write
/// into a caller-owned matrix so shapes can be layered before validation.
namespace powersys::shapes {

/// Edges i -> i+1 with the given weight.
Eigen::MatrixXd chain(Index n, double weight);

/// Edges i -> (i+1) mod n with the given weight.
Eigen::MatrixXd one_way_cycle(Index n, double weight);

/// Two nodes pointing at each other with `weight`; any remaining nodes stay isolated.
Eigen::MatrixXd mutual_pair(Index n, Index a, Index b, double weight);

/// Every ordered pair of distinct members gets an edge of `weight`.
void add_union(Eigen::MatrixXd& adjacency, std::span<const Index> members, double weight);

/// `dominant` -> each subject with `weight`.
void add_domination(Eigen::MatrixXd& adjacency, Index dominant, std::span<const Index> subjects,
                    double weight);

/// Weight w such that the two-node mutual system with edges w both ways has the given
/// mutualism. Mutual colonization is w / (1 + w), so w = m / (2 - m). Requires 0 <= m < 1.
double mutual_weight_for_mutualism(double mutualism);

}  // namespace powersys::shapes
