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

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "powersys/power_graph.hpp"

namespace powersys {

/// A participant. An empty strategy list makes the player passive: it never chooses, but its
/// payoff still enters everyone else's compound utility.
struct Player {
  std::string name;
  std::vector<std::string> strategies;

  bool passive() const { return strategies.empty(); }
};

/// One strategy index per active player, in active-player order.
using Profile = std::vector<std::size_t>;

/// Finite normal-form game with a dense payoff table. Row r of the table holds the payoff of
/// every player (passive ones included) at the profile whose mixed-radix index is r; the first
/// active player is the most significant digit.
class NormalFormGame {
 public:
  /// Throws InvalidParamsError when no player is active, names repeat or the table is not
  /// profile_count() x players().size().
  NormalFormGame(std::vector<Player> players, Eigen::MatrixXd payoffs);

  /// Game with an all-zero table, to be filled through set_payoffs.
  explicit NormalFormGame(std::vector<Player> players);

  const std::vector<Player>& players() const { return players_; }
  std::size_t player_count() const { return players_.size(); }
  /// Indices (into players()) of the players that choose.
  const std::vector<std::size_t>& active() const { return active_; }
  /// Position of `player` among active players; throws std::out_of_range if passive or unknown.
  std::size_t active_slot(std::size_t player) const;
  std::size_t player_index(const std::string& name) const;

  std::size_t profile_count() const { return static_cast<std::size_t>(payoffs_.rows()); }
  std::size_t flat_index(const Profile& profile) const;
  Profile profile_at(std::size_t flat) const;

  const Eigen::MatrixXd& payoff_table() const { return payoffs_; }
  Eigen::VectorXd payoffs(const Profile& profile) const {
    return payoffs_.row(static_cast<Index>(flat_index(profile))).transpose();
  }
  double payoff(const Profile& profile, std::size_t player) const {
    return payoffs_(static_cast<Index>(flat_index(profile)), static_cast<Index>(player));
  }
  void set_payoffs(const Profile& profile, const Eigen::VectorXd& values);

  /// Strategy labels of a profile, active players only.
  std::vector<std::string> describe(const Profile& profile) const;

 private:
  std::vector<Player> players_;
  std::vector<std::size_t> active_;
  std::vector<std::size_t> radix_;
  Eigen::MatrixXd payoffs_;
};

enum class CompoundMode { additive, multiplicative };

const char* to_string(CompoundMode mode);

/// Replaces every payoff u_i by the compound utility built from column i of `c`:
/// sum_k c_ki u_k (additive) or prod_k u_k^c_ki (multiplicative). Players map to nodes by
/// position. Throws DimensionMismatchError, or NonPositivePayoffError in multiplicative mode.
NormalFormGame compound_payoffs(const NormalFormGame& game, const ColonizationMatrix<double>& c,
                                CompoundMode mode = CompoundMode::additive);

/// Every profile at which no active player gains strictly by deviating alone. Ties keep the
/// profile. Sorted by flat index.
std::vector<Profile> pure_nash(const NormalFormGame& game);

/// Strategies of `player` maximizing its payoff when the other active players play as in
/// `profile` (the player's own entry is ignored). Sorted, never empty.
std::vector<std::size_t> best_response(const NormalFormGame& game, std::size_t player,
                                       const Profile& profile);

struct Elimination {
  std::size_t player;
  std::string strategy;
  std::string dominator;
  int round;
};

struct DominanceResult {
  NormalFormGame reduced;
  std::vector<Elimination> trace;
};

/// Removes strictly dominated strategies round by round until none is left. Within a round all
/// dominated strategies go at once; the recorded dominator is the
/// first strategy alive at the start of the round that beats it.
DominanceResult iterated_strict_dominance(const NormalFormGame& game);

}  // namespace powersys
