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
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "powersys/game.hpp"
#include "powersys/power_graph.hpp"

namespace powersys {

// ---------------------------------------------------------------------------------------------
// Prisoner's Dilemma

/// Symmetric dilemma: (C,C) pays p each, (C,D) pays q to the cooperator and r to the defector,
/// (D,D) pays s each. Requires q < s < p < r.
struct PDParams {
  double p;
  double q;
  double r;
  double s;

  /// Throws OrderingViolatedError.
  void validate() const;
};

inline constexpr std::size_t kCooperates = 0;
inline constexpr std::size_t kDefects = 1;

enum class PdCell { cc, cd, dc, dd };

const char* to_string(PdCell cell);
Profile to_profile(PdCell cell);

/// Two players "Player 1", "Player 2" with strategies {Cooperates, Defects}.
NormalFormGame build_pd(const PDParams& params);

/// Feasibility reading used for the mutualism threshold.
inline constexpr const char* kPdFeasibilityRule = "s < (r+q)/2 < p";

struct MutualismThreshold {
  /// 2 * max((r-p)/(r-q), (s-q)/(r-q)).
  double threshold;
  /// True when the threshold is below the two-node ceiling of one, i.e. s < (r+q)/2 < p.
  bool feasible;
  /// Mutualism of the symmetric two-node system used for the internal check (feasible only).
  std::optional<double> probe_mutualism;
  /// Whether (C,C) came out as the unique pure equilibrium at probe_mutualism.
  std::optional<bool> verified;
};

MutualismThreshold pd_mutualism_threshold(const PDParams& params);

/// Colonization matrix of the symmetric two-node mutual system with the given mutualism.
ColonizationMatrix<double> mutual_pair_colonization(double mutualism);

struct HierarchyShift {
  PdCell target;
  /// Player that ends up cooperating, colonized by the other one.
  std::size_t dominated;
  std::size_t dominant;
  /// Smallest colonization of the dominant player in the dominated one that makes `target` a
  /// pure equilibrium (upper end of the final bisection bracket).
  double colonization;
};

/// Bisection over a single one-way colonization. `target` must be PdCell::cd or PdCell::dc.
HierarchyShift pd_hierarchy_shift(const PDParams& params, PdCell target, double tolerance = 1e-6);

/// Two-node colonization where `dominant` colonizes `dominated` by `c` and nothing flows back.
ColonizationMatrix<double> one_way_colonization(std::size_t dominant, std::size_t dominated,
                                                double c);

// ---------------------------------------------------------------------------------------------
// Ecology Dilemma

/// n inhabitants; planting costs the planter tree_cost and pays tree_revenue to everyone.
struct EcologyParams {
  std::size_t n;
  double tree_cost;
  double tree_revenue;

  /// Throws InvalidParamsError unless n >= 2 and 0 < tree_revenue < tree_cost.
  void validate() const;
};

inline constexpr std::size_t kPlant = 0;
inline constexpr std::size_t kAbstain = 1;

/// Players "1".."n" with strategies {plant, abstain}; u_i = revenue * trees - cost * [i plants].
NormalFormGame build_ecology(const EcologyParams& params);

struct EcologyThresholds {
  /// Colonized share 1 - c_ii above which an inhabitant plants: (cost - revenue) / cost.
  double epsilon_threshold;
  /// System cooperation just above which a single subjected inhabitant plants.
  double min_hier_cooperation;
  /// Twice the above: cooperation a mutual pair needs before both plant.
  double min_mutual_cooperation;
  /// A mutual pair can plant at all only when 2 * revenue > cost.
  bool mutual_pair_feasible;
};

EcologyThresholds ecology_thresholds(const EcologyParams& params);

enum class CrossCheck { agrees, disagrees, skipped };

const char* to_string(CrossCheck check);

struct EcologyReport {
  double epsilon_threshold;
  std::vector<double> colonized_share;
  std::vector<bool> plants;
  std::size_t trees;
  Eigen::VectorXd inertial;
  Eigen::VectorXd compound;
  /// Pure equilibria of the compound game (empty when skipped).
  std::vector<Profile> nash;
  CrossCheck nash_check;
};

/// Largest inhabitant count for which ecology_solve enumerates all 2^n profiles.
inline constexpr std::size_t kEcologyNashLimit = 12;

/// Dominant-strategy solution: inhabitant i plants iff 1 - c_ii > epsilon_threshold.
/// Cross-checked against pure_nash on the compound game when n <= kEcologyNashLimit.
EcologyReport ecology_solve(const EcologyParams& params, const PowerSystem<double>& system);

// ---------------------------------------------------------------------------------------------
// Landowner Game

/// Peasants sell hours to a single passive landowner at wage W = a - Q, Q = total hours.
/// Peasant utility (W - unit_cost) q_i; landowner utility Q.
struct LandownerParams {
  double a;
  double unit_cost;
  std::size_t landowner;
  std::vector<std::size_t> peasants;

  /// Throws InvalidParamsError unless a > unit_cost > 0 and the landowner is not a peasant.
  void validate() const;
};

/// Landowner at `landowner`, every other node of an n-node system a peasant. Validates.
LandownerParams landowner_params(double a, double unit_cost, std::size_t n,
                                 std::size_t landowner = 0);

struct LandownerOptions {
  double damping = 0.5;
  double tolerance = 1e-9;
  std::size_t max_iterations = 100000;
};

struct LandownerEquilibrium {
  /// Hours per node (zero at the landowner).
  Eigen::VectorXd hours;
  double total_hours;
  double wage;
  Eigen::VectorXd inertial;
  Eigen::VectorXd compound;
  std::size_t iterations;
  /// Largest first-order-condition violation (see landowner_residual).
  double residual;
};

struct LandownerReport {
  LandownerEquilibrium equilibrium;
  /// Same game with every node free, for comparison.
  LandownerEquilibrium free_reference;
  /// Total hours under a peasant monopoly, (a - unit_cost) / 2.
  double q_monopoly;
  /// Total hours under perfect competition, a - unit_cost.
  double q_competition;
};

/// Equilibrium hours by damped projected best-response iteration on the first-order conditions
/// c_ii (a - cost - Q - q_i) - sum_{k != i} c_ki q_k + c_Li = 0, q_i >= 0.
/// Throws DimensionMismatchError or NonConvergenceError.
LandownerReport landowner_solve(const LandownerParams& params, const PowerSystem<double>& system,
                                const LandownerOptions& options = {});

LandownerEquilibrium landowner_equilibrium(const LandownerParams& params,
                                           const ColonizationMatrix<double>& c,
                                           const LandownerOptions& options = {});

/// Derivative of peasant i's compound utility with respect to its own hours.
double landowner_marginal(const LandownerParams& params, const ColonizationMatrix<double>& c,
                          const Eigen::VectorXd& hours, std::size_t peasant);

/// Max over peasants of |marginal| where hours > 0 and max(marginal, 0) where hours are zero.
double landowner_residual(const LandownerParams& params, const ColonizationMatrix<double>& c,
                          const Eigen::VectorXd& hours);

/// Weight of landowner -> peasant edges that cancels a complete peasant union of
/// `union_weight`, so that the free equilibrium also solves the colonized game. Found by
/// bisection on the balance c_Li = q_free * sum_{k != i} c_ki. Throws InvalidParamsError when
/// no admissible weight balances the union.
double landowner_counterweight(const LandownerParams& params, std::size_t n, double union_weight);

}  // namespace powersys
