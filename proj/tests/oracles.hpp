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

// Reference computations used only by the tests. None of them goes through the library's
// colonize/decolonize/pure_nash code paths.

#include <algorithm>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "powersys/game.hpp"

namespace powersys::testing {

/// Random admissible adjacency: each off-diagonal edge present with probability `density`,
/// each column rescaled to a total in-weight drawn from [0.05, max_mass].
inline Eigen::MatrixXd random_adjacency(std::mt19937& rng, Eigen::Index n, double density = 0.4,
                                        double max_mass = 0.85) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> mass(0.05, max_mass);
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i != j && unit(rng) < density) f(i, j) = 0.05 + unit(rng);
    }
    const double total = f.col(j).sum();
    if (total > 0.0) f.col(j) *= mass(rng) / total;
  }
  return f;
}

/// Random acyclic adjacency: edges only go forward in a random node order.
inline Eigen::MatrixXd random_dag(std::mt19937& rng, Eigen::Index n, double density = 0.5) {
  Eigen::MatrixXd f = random_adjacency(rng, n, density);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Eigen::Index> rank(static_cast<std::size_t>(n));
  for (Eigen::Index r = 0; r < n; ++r) rank[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])] = r;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (rank[static_cast<std::size_t>(i)] >= rank[static_cast<std::size_t>(j)]) f(i, j) = 0.0;
    }
  }
  return f;
}

/// Solves the n^2 unknowns c_ij directly from the two defining rules:
///   sum_k c_kj = 1                          for every j
///   c_ij - sum_{k != j} f_kj c_ik = 0       for every i != j
inline Eigen::MatrixXd colonization_by_linear_system(const Eigen::MatrixXd& f) {
  const Eigen::Index n = f.rows();
  auto var = [n](Eigen::Index i, Eigen::Index j) { return i * n + j; };
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n * n, n * n);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n * n);
  Eigen::Index row = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) a(row, var(k, j)) = 1.0;
    b(row++) = 1.0;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      a(row, var(i, j)) += 1.0;
      for (Eigen::Index k = 0; k < n; ++k) {
        if (k != j) a(row, var(i, k)) -= f(k, j);
      }
      ++row;
    }
  }
  const Eigen::VectorXd x = a.fullPivLu().solve(b);
  Eigen::MatrixXd c(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) c(i, j) = x(var(i, j));
  }
  return c;
}

/// diag(1 - s) * sum_{t < terms} F^t.
inline Eigen::MatrixXd colonization_by_neumann(const Eigen::MatrixXd& f, int terms = 200) {
  const Eigen::Index n = f.rows();
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
  for (int t = 0; t < terms; ++t) {
    sum += power;
    power = power * f;
  }
  const Eigen::VectorXd scale = Eigen::VectorXd::Ones(n) - f.colwise().sum().transpose();
  return scale.asDiagonal() * sum;
}

/// Adjacency from a colonization matrix through the full inverse:
/// F = I - C^-1 diag(1 / diag(C^-1)).
inline Eigen::MatrixXd adjacency_by_inverse(const Eigen::MatrixXd& c) {
  const Eigen::MatrixXd inv = c.inverse();
  const Eigen::VectorXd scale = inv.diagonal().cwiseInverse();
  return Eigen::MatrixXd::Identity(c.rows(), c.cols()) - inv * scale.asDiagonal();
}

/// Random game with `players` active players and up to `max_strategies` strategies each;
/// payoffs are small integers so ties occur.
inline NormalFormGame random_game(std::mt19937& rng, std::size_t players,
                                  std::size_t max_strategies) {
  std::uniform_int_distribution<std::size_t> count(1, max_strategies);
  std::uniform_int_distribution<int> payoff(-3, 3);
  std::vector<Player> ps;
  for (std::size_t p = 0; p < players; ++p) {
    Player player{"P" + std::to_string(p), {}};
    const std::size_t k = count(rng);
    for (std::size_t s = 0; s < k; ++s) player.strategies.push_back("s" + std::to_string(s));
    ps.push_back(std::move(player));
  }
  NormalFormGame game(ps);
  Eigen::MatrixXd table(static_cast<Eigen::Index>(game.profile_count()),
                        static_cast<Eigen::Index>(players));
  for (Eigen::Index r = 0; r < table.rows(); ++r) {
    for (Eigen::Index c = 0; c < table.cols(); ++c) table(r, c) = payoff(rng);
  }
  return NormalFormGame(std::move(ps), std::move(table));
}

/// Profiles (as nested loops over every player's strategies) where no unilateral deviation
/// pays strictly more. Written independently of NormalFormGame's profile enumeration.
inline std::vector<Profile> brute_force_nash(const NormalFormGame& game) {
  const auto& active = game.active();
  std::vector<std::size_t> sizes;
  for (auto p : active) sizes.push_back(game.players()[p].strategies.size());
  std::vector<Profile> all(1);
  for (auto size : sizes) {
    std::vector<Profile> next;
    for (const auto& prefix : all) {
      for (std::size_t s = 0; s < size; ++s) {
        Profile p = prefix;
        p.push_back(s);
        next.push_back(std::move(p));
      }
    }
    all = std::move(next);
  }
  std::vector<Profile> out;
  for (const auto& profile : all) {
    bool ok = true;
    for (std::size_t slot = 0; slot < active.size(); ++slot) {
      for (std::size_t s = 0; s < sizes[slot]; ++s) {
        Profile dev = profile;
        dev[slot] = s;
        if (game.payoff(dev, active[slot]) > game.payoff(profile, active[slot])) ok = false;
      }
    }
    if (ok) out.push_back(profile);
  }
  return out;
}

}  // namespace powersys::testing
