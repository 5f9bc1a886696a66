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

#include "powersys/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "powersys/shapes.hpp"

namespace powersys {

// ---------------------------------------------------------------------------------------------
// Prisoner's Dilemma

void PDParams::validate() const {
  if (!(q < s && s < p && p < r)) {
    std::ostringstream os;
    os << "prisoner's dilemma needs q < s < p < r, got p=" << p << " q=" << q << " r=" << r
       << " s=" << s;
    throw OrderingViolatedError(os.str());
  }
}

const char* to_string(PdCell cell) {
  switch (cell) {
    case PdCell::cc: return "CC";
    case PdCell::cd: return "CD";
    case PdCell::dc: return "DC";
    case PdCell::dd: return "DD";
  }
  return "?";
}

Profile to_profile(PdCell cell) {
  switch (cell) {
    case PdCell::cc: return {kCooperates, kCooperates};
    case PdCell::cd: return {kCooperates, kDefects};
    case PdCell::dc: return {kDefects, kCooperates};
    case PdCell::dd: return {kDefects, kDefects};
  }
  return {};
}

NormalFormGame build_pd(const PDParams& params) {
  params.validate();
  const std::vector<std::string> moves{"Cooperates", "Defects"};
  NormalFormGame game({{"Player 1", moves}, {"Player 2", moves}});
  game.set_payoffs(to_profile(PdCell::cc), Eigen::Vector2d(params.p, params.p));
  game.set_payoffs(to_profile(PdCell::cd), Eigen::Vector2d(params.q, params.r));
  game.set_payoffs(to_profile(PdCell::dc), Eigen::Vector2d(params.r, params.q));
  game.set_payoffs(to_profile(PdCell::dd), Eigen::Vector2d(params.s, params.s));
  return game;
}

ColonizationMatrix<double> mutual_pair_colonization(double mutualism) {
  const double w = shapes::mutual_weight_for_mutualism(mutualism);
  return colonize(PowerSystem<double>(shapes::mutual_pair(2, 0, 1, w)));
}

ColonizationMatrix<double> one_way_colonization(std::size_t dominant, std::size_t dominated,
                                                double c) {
  if (dominant > 1 || dominated > 1 || dominant == dominated) {
    throw InvalidParamsError("one-way colonization needs the two distinct nodes 0 and 1");
  }
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(2, 2);
  f(static_cast<Index>(dominant), static_cast<Index>(dominated)) = c;
  return colonize(PowerSystem<double>(std::move(f)));
}

MutualismThreshold pd_mutualism_threshold(const PDParams& params) {
  params.validate();
  const auto [p, q, r, s] = params;
  const double span = r - q;
  MutualismThreshold out{};
  out.threshold = 2.0 * std::max((r - p) / span, (s - q) / span);
  const double mid = 0.5 * (r + q);
  out.feasible = s < mid && mid < p;
  if (out.feasible) {
    const double probe = 0.5 * (out.threshold + 1.0);
    const auto game = compound_payoffs(build_pd(params), mutual_pair_colonization(probe));
    const auto eq = pure_nash(game);
    out.probe_mutualism = probe;
    out.verified = eq.size() == 1 && eq.front() == to_profile(PdCell::cc);
  }
  return out;
}

HierarchyShift pd_hierarchy_shift(const PDParams& params, PdCell target, double tolerance) {
  params.validate();
  if (target != PdCell::cd && target != PdCell::dc) {
    throw InvalidParamsError("hierarchy shift targets CD or DC");
  }
  HierarchyShift out{target, target == PdCell::cd ? 0u : 1u, target == PdCell::cd ? 1u : 0u, 0.0};
  const NormalFormGame base = build_pd(params);
  const Profile goal = to_profile(target);
  auto reached = [&](double c) {
    const auto eq =
        pure_nash(compound_payoffs(base, one_way_colonization(out.dominant, out.dominated, c)));
    return std::find(eq.begin(), eq.end(), goal) != eq.end();
  };

  double lo = 0.0;
  double hi = 1.0 - 1e-12;
  if (reached(lo)) return out;
  if (!reached(hi)) {
    throw NonConvergenceError(std::string("no one-way colonization reaches ") + to_string(target),
                              hi);
  }
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    (reached(mid) ? hi : lo) = mid;
  }
  out.colonization = hi;
  return out;
}

// ---------------------------------------------------------------------------------------------
// Ecology Dilemma

void EcologyParams::validate() const {
  if (n < 2) throw InvalidParamsError("ecology needs at least two inhabitants");
  if (!(tree_revenue > 0.0 && tree_revenue < tree_cost)) {
    throw InvalidParamsError("ecology needs 0 < tree_revenue < tree_cost");
  }
}

NormalFormGame build_ecology(const EcologyParams& params) {
  params.validate();
  std::vector<Player> players;
  for (std::size_t i = 0; i < params.n; ++i) {
    players.push_back({std::to_string(i + 1), {"plant", "abstain"}});
  }
  NormalFormGame game(std::move(players));
  for (std::size_t flat = 0; flat < game.profile_count(); ++flat) {
    const Profile profile = game.profile_at(flat);
    const auto trees = static_cast<double>(std::count(profile.begin(), profile.end(), kPlant));
    Eigen::VectorXd u(static_cast<Index>(params.n));
    for (std::size_t i = 0; i < params.n; ++i) {
      u(static_cast<Index>(i)) =
          params.tree_revenue * trees - (profile[i] == kPlant ? params.tree_cost : 0.0);
    }
    game.set_payoffs(profile, u);
  }
  return game;
}

EcologyThresholds ecology_thresholds(const EcologyParams& params) {
  params.validate();
  EcologyThresholds out{};
  out.epsilon_threshold = (params.tree_cost - params.tree_revenue) / params.tree_cost;
  out.min_hier_cooperation = out.epsilon_threshold / static_cast<double>(params.n - 1);
  out.min_mutual_cooperation = 2.0 * out.min_hier_cooperation;
  out.mutual_pair_feasible = 2.0 * params.tree_revenue > params.tree_cost;
  return out;
}

const char* to_string(CrossCheck check) {
  switch (check) {
    case CrossCheck::agrees: return "agrees";
    case CrossCheck::disagrees: return "disagrees";
    case CrossCheck::skipped: return "skipped";
  }
  return "?";
}

EcologyReport ecology_solve(const EcologyParams& params, const PowerSystem<double>& system) {
  params.validate();
  if (static_cast<std::size_t>(system.size()) != params.n) {
    throw DimensionMismatchError("ecology has " + std::to_string(params.n) +
                                 " inhabitants but the system has " +
                                 std::to_string(system.size()) + " nodes");
  }
  const auto c = colonize(system);
  const auto n = static_cast<Index>(params.n);

  EcologyReport out{};
  out.epsilon_threshold = ecology_thresholds(params).epsilon_threshold;
  Eigen::VectorXd planted = Eigen::VectorXd::Zero(n);
  bool tie = false;
  for (Index i = 0; i < n; ++i) {
    const double share = 1.0 - c(i, i);
    out.colonized_share.push_back(share);
    out.plants.push_back(share > out.epsilon_threshold);
    tie = tie || share == out.epsilon_threshold;
    if (out.plants.back()) planted(i) = 1.0;
  }
  out.trees = static_cast<std::size_t>(planted.sum());
  out.inertial = Eigen::VectorXd::Constant(n, params.tree_revenue * planted.sum()) -
                 params.tree_cost * planted;
  out.compound = c.values().transpose() * out.inertial;

  out.nash_check = CrossCheck::skipped;
  if (params.n <= kEcologyNashLimit) {
    out.nash = pure_nash(compound_payoffs(build_ecology(params), c));
    Profile chosen(params.n);
    for (std::size_t i = 0; i < params.n; ++i) chosen[i] = out.plants[i] ? kPlant : kAbstain;
    const bool present = std::find(out.nash.begin(), out.nash.end(), chosen) != out.nash.end();
    const bool unique = out.nash.size() == 1;
    out.nash_check = present && (unique || tie) ? CrossCheck::agrees : CrossCheck::disagrees;
  }
  return out;
}

// ---------------------------------------------------------------------------------------------
// Landowner Game

void LandownerParams::validate() const {
  if (!(a > unit_cost && unit_cost > 0.0)) {
    throw InvalidParamsError("landowner game needs a > unit_cost > 0");
  }
  if (peasants.empty()) throw InvalidParamsError("landowner game needs at least one peasant");
  if (std::find(peasants.begin(), peasants.end(), landowner) != peasants.end()) {
    throw InvalidParamsError("the landowner cannot also be a peasant");
  }
}

LandownerParams landowner_params(double a, double unit_cost, std::size_t n,
                                 std::size_t landowner) {
  LandownerParams params{a, unit_cost, landowner, {}};
  for (std::size_t i = 0; i < n; ++i) {
    if (i != landowner) params.peasants.push_back(i);
  }
  params.validate();
  return params;
}

namespace {

void check_cover(const LandownerParams& params, Index nodes) {
  std::vector<int> seen(static_cast<std::size_t>(nodes), 0);
  auto mark = [&](std::size_t i) {
    if (i >= seen.size()) {
      throw DimensionMismatchError("landowner game refers to node " + std::to_string(i) +
                                   " of a " + std::to_string(nodes) + "-node system");
    }
    ++seen[i];
  };
  mark(params.landowner);
  for (auto i : params.peasants) mark(i);
  if (std::any_of(seen.begin(), seen.end(), [](int k) { return k != 1; })) {
    throw DimensionMismatchError(
        "landowner game needs the landowner plus peasants to cover every node exactly once");
  }
}

Eigen::VectorXd inertial_utilities(const LandownerParams& params, const Eigen::VectorXd& hours) {
  const double total = hours.sum();
  const double wage = params.a - total;
  Eigen::VectorXd u = (wage - params.unit_cost) * hours;
  u(static_cast<Index>(params.landowner)) = total;
  return u;
}

}  // namespace

double landowner_marginal(const LandownerParams& params, const ColonizationMatrix<double>& c,
                          const Eigen::VectorXd& hours, std::size_t peasant) {
  const auto i = static_cast<Index>(peasant);
  const double total = hours.sum();
  double cross = 0.0;
  for (auto k : params.peasants) {
    if (k != peasant) cross += c(static_cast<Index>(k), i) * hours(static_cast<Index>(k));
  }
  return c(i, i) * (params.a - params.unit_cost - total - hours(i)) - cross +
         c(static_cast<Index>(params.landowner), i);
}

double landowner_residual(const LandownerParams& params, const ColonizationMatrix<double>& c,
                          const Eigen::VectorXd& hours) {
  double worst = 0.0;
  for (auto i : params.peasants) {
    const double g = landowner_marginal(params, c, hours, i);
    worst = std::max(worst, hours(static_cast<Index>(i)) > 0.0 ? std::abs(g) : std::max(g, 0.0));
  }
  return worst;
}

LandownerEquilibrium landowner_equilibrium(const LandownerParams& params,
                                           const ColonizationMatrix<double>& c,
                                           const LandownerOptions& options) {
  params.validate();
  check_cover(params, c.size());
  const Index n = c.size();
  const double margin = params.a - params.unit_cost;

  // Zero of the marginal in q_i with the other peasants' hours held fixed, before clipping.
  auto unclipped_reply = [&](const Eigen::VectorXd& hours, std::size_t p) {
    const auto i = static_cast<Index>(p);
    double cross = 0.0;
    for (auto k : params.peasants) {
      if (k != p) cross += c(static_cast<Index>(k), i) * hours(static_cast<Index>(k));
    }
    const double others = hours.sum() - hours(i);
    return (c(i, i) * (margin - others) - cross + c(static_cast<Index>(params.landowner), i)) /
           (2.0 * c(i, i));
  };

  Eigen::VectorXd hours = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd next = hours;
  std::size_t iter = 0;
  double step = 0.0;
  for (; iter < options.max_iterations; ++iter) {
    for (auto p : params.peasants) {
      const auto i = static_cast<Index>(p);
      const double reply = std::max(0.0, unclipped_reply(hours, p));
      next(i) = (1.0 - options.damping) * hours(i) + options.damping * reply;
    }
    step = (next - hours).lpNorm<Eigen::Infinity>();
    hours = next;
    if (!std::isfinite(step)) break;
    if (step < options.tolerance) break;
  }
  // Damping only approaches a clipped reply geometrically; put those peasants on the bound.
  if (step < options.tolerance) {
    for (auto p : params.peasants) {
      if (unclipped_reply(hours, p) <= 0.0) hours(static_cast<Index>(p)) = 0.0;
    }
  }
  const double residual = landowner_residual(params, c, hours);
  if (!(step < options.tolerance)) {
    throw NonConvergenceError("landowner best-response iteration did not converge (last step " +
                                  std::to_string(step) + ", residual " + std::to_string(residual) +
                                  ")",
                              residual);
  }

  LandownerEquilibrium out{};
  out.hours = hours;
  out.total_hours = hours.sum();
  out.wage = params.a - out.total_hours;
  out.inertial = inertial_utilities(params, hours);
  out.compound = c.values().transpose() * out.inertial;
  out.iterations = iter + 1;
  out.residual = residual;
  return out;
}

LandownerReport landowner_solve(const LandownerParams& params, const PowerSystem<double>& system,
                                const LandownerOptions& options) {
  params.validate();
  check_cover(params, system.size());
  LandownerReport out{};
  out.equilibrium = landowner_equilibrium(params, colonize(system), options);
  out.free_reference =
      landowner_equilibrium(params, colonize(PowerSystem<double>::free(system.size())), options);
  out.q_competition = params.a - params.unit_cost;
  out.q_monopoly = 0.5 * out.q_competition;
  return out;
}

double landowner_counterweight(const LandownerParams& params, std::size_t n, double union_weight) {
  params.validate();
  check_cover(params, static_cast<Index>(n));
  const auto m = static_cast<double>(params.peasants.size());
  if (params.peasants.size() < 2 || !(union_weight > 0.0) || !((m - 1.0) * union_weight < 1.0)) {
    throw InvalidParamsError("counterweight needs two or more peasants and a union weight in (0, " +
                             std::to_string(1.0 / (m - 1.0)) + ")");
  }
  const double q_free = (params.a - params.unit_cost) / (m + 1.0);
  const auto probe = static_cast<Index>(params.peasants.front());

  auto balance = [&](double weight) {
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(static_cast<Index>(n), static_cast<Index>(n));
    std::vector<Index> members(params.peasants.begin(), params.peasants.end());
    shapes::add_union(f, members, union_weight);
    shapes::add_domination(f, static_cast<Index>(params.landowner), members, weight);
    const auto c = colonize(PowerSystem<double>(std::move(f)));
    double union_share = 0.0;
    for (Index k : members) {
      if (k != probe) union_share += c(k, probe);
    }
    return c(static_cast<Index>(params.landowner), probe) - q_free * union_share;
  };

  double lo = 0.0;
  double hi = 1.0 - (m - 1.0) * union_weight - 1e-12;
  if (!(balance(hi) > 0.0)) {
    throw InvalidParamsError("no landowner weight balances a union of weight " +
                             std::to_string(union_weight));
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (balance(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace powersys
