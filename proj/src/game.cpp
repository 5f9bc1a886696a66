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

#include "powersys/game.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace powersys {

namespace {

std::size_t product_of(const std::vector<std::size_t>& radix) {
  std::size_t total = 1;
  for (auto r : radix) total *= r;
  return total;
}

/// Calls fn(profile) for each profile of the cartesian product of `choices`.
template <typename Fn>
void for_each_profile(const std::vector<std::vector<std::size_t>>& choices, Fn&& fn) {
  for (const auto& c : choices) {
    if (c.empty()) return;
  }
  std::vector<std::size_t> digit(choices.size(), 0);
  Profile profile(choices.size());
  while (true) {
    for (std::size_t s = 0; s < choices.size(); ++s) profile[s] = choices[s][digit[s]];
    if (!fn(profile)) return;
    std::size_t s = choices.size();
    while (s > 0) {
      --s;
      if (++digit[s] < choices[s].size()) break;
      digit[s] = 0;
      if (s == 0) return;
    }
    if (choices.empty()) return;
  }
}

}  // namespace

NormalFormGame::NormalFormGame(std::vector<Player> players) : players_(std::move(players)) {
  std::set<std::string> names;
  for (std::size_t i = 0; i < players_.size(); ++i) {
    if (!names.insert(players_[i].name).second) {
      throw InvalidParamsError("duplicate player name '" + players_[i].name + "'");
    }
    std::set<std::string> labels(players_[i].strategies.begin(), players_[i].strategies.end());
    if (labels.size() != players_[i].strategies.size()) {
      throw InvalidParamsError("duplicate strategy label for player '" + players_[i].name + "'");
    }
    if (!players_[i].passive()) {
      active_.push_back(i);
      radix_.push_back(players_[i].strategies.size());
    }
  }
  if (active_.empty()) throw InvalidParamsError("a game needs at least one active player");
  payoffs_ = Eigen::MatrixXd::Zero(static_cast<Index>(product_of(radix_)),
                                   static_cast<Index>(players_.size()));
}

NormalFormGame::NormalFormGame(std::vector<Player> players, Eigen::MatrixXd payoffs)
    : NormalFormGame(std::move(players)) {
  if (payoffs.rows() != payoffs_.rows() || payoffs.cols() != payoffs_.cols()) {
    throw InvalidParamsError("payoff table is " + std::to_string(payoffs.rows()) + "x" +
                             std::to_string(payoffs.cols()) + ", expected " +
                             std::to_string(payoffs_.rows()) + "x" +
                             std::to_string(payoffs_.cols()));
  }
  payoffs_ = std::move(payoffs);
}

std::size_t NormalFormGame::active_slot(std::size_t player) const {
  const auto it = std::find(active_.begin(), active_.end(), player);
  if (it == active_.end()) {
    throw std::out_of_range("player " + std::to_string(player) + " is not an active player");
  }
  return static_cast<std::size_t>(it - active_.begin());
}

std::size_t NormalFormGame::player_index(const std::string& name) const {
  for (std::size_t i = 0; i < players_.size(); ++i) {
    if (players_[i].name == name) return i;
  }
  throw std::out_of_range("unknown player '" + name + "'");
}

std::size_t NormalFormGame::flat_index(const Profile& profile) const {
  if (profile.size() != radix_.size()) {
    throw std::out_of_range("profile has " + std::to_string(profile.size()) + " entries, expected " +
                            std::to_string(radix_.size()));
  }
  std::size_t flat = 0;
  for (std::size_t s = 0; s < radix_.size(); ++s) {
    if (profile[s] >= radix_[s]) throw std::out_of_range("strategy index out of range");
    flat = flat * radix_[s] + profile[s];
  }
  return flat;
}

Profile NormalFormGame::profile_at(std::size_t flat) const {
  if (flat >= profile_count()) throw std::out_of_range("profile index out of range");
  Profile profile(radix_.size());
  for (std::size_t s = radix_.size(); s > 0; --s) {
    profile[s - 1] = flat % radix_[s - 1];
    flat /= radix_[s - 1];
  }
  return profile;
}

void NormalFormGame::set_payoffs(const Profile& profile, const Eigen::VectorXd& values) {
  if (values.size() != payoffs_.cols()) {
    throw InvalidParamsError("payoff vector has " + std::to_string(values.size()) +
                             " entries, expected " + std::to_string(payoffs_.cols()));
  }
  payoffs_.row(static_cast<Index>(flat_index(profile))) = values.transpose();
}

std::vector<std::string> NormalFormGame::describe(const Profile& profile) const {
  std::vector<std::string> out;
  for (std::size_t s = 0; s < active_.size(); ++s) {
    out.push_back(players_[active_[s]].strategies.at(profile.at(s)));
  }
  return out;
}

const char* to_string(CompoundMode mode) {
  return mode == CompoundMode::additive ? "additive" : "multiplicative";
}

NormalFormGame compound_payoffs(const NormalFormGame& game, const ColonizationMatrix<double>& c,
                                CompoundMode mode) {
  if (static_cast<std::size_t>(c.size()) != game.player_count()) {
    throw DimensionMismatchError("colonization matrix has " + std::to_string(c.size()) +
                                 " nodes but the game has " +
                                 std::to_string(game.player_count()) + " players");
  }
  const Eigen::MatrixXd& u = game.payoff_table();
  // Row r of the table is the inertial payoff vector at profile r, so U = u C.
  if (mode == CompoundMode::additive) return NormalFormGame(game.players(), u * c.values());

  for (Index r = 0; r < u.rows(); ++r) {
    for (Index k = 0; k < u.cols(); ++k) {
      if (!(u(r, k) > 0.0)) {
        throw NonPositivePayoffError("multiplicative compounding needs positive payoffs; player '" +
                                     game.players()[static_cast<std::size_t>(k)].name +
                                     "' has " + std::to_string(u(r, k)));
      }
    }
  }
  Eigen::MatrixXd compound = (u.array().log().matrix() * c.values()).array().exp().matrix();
  return NormalFormGame(game.players(), std::move(compound));
}

std::vector<std::size_t> best_response(const NormalFormGame& game, std::size_t player,
                                       const Profile& profile) {
  if (player >= game.player_count()) {
    throw std::out_of_range("player index " + std::to_string(player) + " out of range");
  }
  const std::size_t slot = game.active_slot(player);
  const std::size_t choices = game.players()[player].strategies.size();
  Profile probe = profile;
  std::vector<std::size_t> best;
  double best_value = 0.0;
  for (std::size_t s = 0; s < choices; ++s) {
    probe.at(slot) = s;
    const double v = game.payoff(probe, player);
    if (best.empty() || v > best_value) {
      best.assign(1, s);
      best_value = v;
    } else if (v == best_value) {
      best.push_back(s);
    }
  }
  return best;
}

std::vector<Profile> pure_nash(const NormalFormGame& game) {
  std::vector<Profile> out;
  const auto& active = game.active();
  for (std::size_t flat = 0; flat < game.profile_count(); ++flat) {
    const Profile profile = game.profile_at(flat);
    bool stable = true;
    for (std::size_t slot = 0; slot < active.size() && stable; ++slot) {
      const std::size_t player = active[slot];
      const double current = game.payoff(profile, player);
      Profile probe = profile;
      for (std::size_t s = 0; s < game.players()[player].strategies.size(); ++s) {
        if (s == profile[slot]) continue;
        probe[slot] = s;
        if (game.payoff(probe, player) > current) {
          stable = false;
          break;
        }
      }
    }
    if (stable) out.push_back(profile);
  }
  return out;
}

DominanceResult iterated_strict_dominance(const NormalFormGame& game) {
  const auto& active = game.active();
  std::vector<std::vector<std::size_t>> alive(active.size());
  for (std::size_t slot = 0; slot < active.size(); ++slot) {
    for (std::size_t s = 0; s < game.players()[active[slot]].strategies.size(); ++s) {
      alive[slot].push_back(s);
    }
  }

  // True when `a` beats `b` for the player in `slot` against every surviving opponent profile.
  auto strictly_dominates = [&](std::size_t slot, std::size_t a, std::size_t b) {
    auto others = alive;
    others[slot] = {a};
    const std::size_t player = active[slot];
    bool dominates = true;
    for_each_profile(others, [&](const Profile& p) {
      Profile q = p;
      q[slot] = b;
      if (!(game.payoff(p, player) > game.payoff(q, player))) {
        dominates = false;
        return false;
      }
      return true;
    });
    return dominates;
  };

  std::vector<Elimination> trace;
  for (int round = 1;; ++round) {
    std::vector<std::vector<std::size_t>> removed(active.size());
    for (std::size_t slot = 0; slot < active.size(); ++slot) {
      for (std::size_t b : alive[slot]) {
        for (std::size_t a : alive[slot]) {
          if (a != b && strictly_dominates(slot, a, b)) {
            const auto& labels = game.players()[active[slot]].strategies;
            trace.push_back({active[slot], labels[b], labels[a], round});
            removed[slot].push_back(b);
            break;
          }
        }
      }
    }
    bool changed = false;
    for (std::size_t slot = 0; slot < active.size(); ++slot) {
      for (std::size_t b : removed[slot]) {
        alive[slot].erase(std::find(alive[slot].begin(), alive[slot].end(), b));
        changed = true;
      }
    }
    if (!changed) break;
  }

  std::vector<Player> players = game.players();
  for (std::size_t slot = 0; slot < active.size(); ++slot) {
    auto& strategies = players[active[slot]].strategies;
    std::vector<std::string> kept;
    for (std::size_t s : alive[slot]) kept.push_back(strategies[s]);
    strategies = std::move(kept);
  }
  NormalFormGame reduced(std::move(players));
  for (std::size_t flat = 0; flat < reduced.profile_count(); ++flat) {
    const Profile local = reduced.profile_at(flat);
    Profile original(local.size());
    for (std::size_t slot = 0; slot < local.size(); ++slot) original[slot] = alive[slot][local[slot]];
    reduced.set_payoffs(local, game.payoffs(original));
  }
  return {std::move(reduced), std::move(trace)};
}

}  // namespace powersys
