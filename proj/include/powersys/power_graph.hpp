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

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "powersys/errors.hpp"

namespace powersys {

using Index = Eigen::Index;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Band used for column sums, zero tests and classification.
inline constexpr double kInvariantTolerance = 1e-9;
/// Band used when a matrix goes through colonize/decolonize and back.
inline constexpr double kRoundTripTolerance = 1e-8;

/// Labels "0", "1", ..., "n-1".
std::vector<std::string> default_labels(Index n);

/// Checks the adjacency axioms: square shape matching the label count, finite non-negative
/// weights, empty diagonal and every in-weight (column sum) strictly below one.
/// Returns every violation found; an empty result means the matrix is admissible.
template <typename Scalar>
std::vector<Violation> check_axioms(const MatrixX<Scalar>& adjacency, std::size_t label_count) {
  using Kind = Violation::Kind;
  std::vector<Violation> out;
  const Index n = adjacency.rows();
  if (n == 0 || adjacency.cols() != n || static_cast<std::size_t>(n) != label_count) {
    out.push_back({Kind::ShapeMismatch, static_cast<long>(adjacency.rows()),
                   static_cast<long>(adjacency.cols()), static_cast<double>(label_count)});
    return out;
  }
  for (Index j = 0; j < n; ++j) {
    Scalar column_mass(0);
    bool finite = true;
    for (Index i = 0; i < n; ++i) {
      const Scalar f = adjacency(i, j);
      if (!std::isfinite(static_cast<double>(f))) {
        out.push_back({Kind::NonFinite, static_cast<long>(i), static_cast<long>(j),
                       static_cast<double>(f)});
        finite = false;
        continue;
      }
      if (i == j && f != Scalar(0)) {
        out.push_back({Kind::SelfLoop, static_cast<long>(i), static_cast<long>(i),
                       static_cast<double>(f)});
      } else if (f < Scalar(0)) {
        out.push_back({Kind::NegativeWeight, static_cast<long>(i), static_cast<long>(j),
                       static_cast<double>(f)});
      }
      if (i != j) column_mass += f;
    }
    if (finite && column_mass >= Scalar(1)) {
      out.push_back({Kind::ColumnMassExceeded, -1, static_cast<long>(j),
                     static_cast<double>(column_mass)});
    }
  }
  return out;
}

/// A validated power system: node labels plus the weighted adjacency matrix.
/// Entry (i, j) is the direct power of node i over node j.
template <typename Scalar = double>
class PowerSystem {
 public:
  /// Throws ValidationError listing every broken axiom.
  PowerSystem(std::vector<std::string> labels, MatrixX<Scalar> adjacency)
      : labels_(std::move(labels)), adjacency_(std::move(adjacency)) {
    if (auto violations = check_axioms(adjacency_, labels_.size()); !violations.empty()) {
      throw ValidationError(std::move(violations));
    }
  }

  // Takes a const reference: a by-value parameter could be moved from before rows() is read.
  explicit PowerSystem(const MatrixX<Scalar>& adjacency)
      : PowerSystem(default_labels(adjacency.rows()), adjacency) {}

  /// n isolated nodes.
  static PowerSystem free(Index n) { return PowerSystem(MatrixX<Scalar>::Zero(n, n)); }

  Index size() const { return adjacency_.rows(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const MatrixX<Scalar>& adjacency() const { return adjacency_; }
  Scalar weight(Index from, Index to) const { return adjacency_(from, to); }

  /// Column sums of the adjacency matrix.
  VectorX<Scalar> in_weights() const { return adjacency_.colwise().sum().transpose(); }

  Index index_of(std::string_view label) const {
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw std::out_of_range("unknown node label '" + std::string(label) + "'");
    return static_cast<Index>(it - labels_.begin());
  }

 private:
  std::vector<std::string> labels_;
  MatrixX<Scalar> adjacency_;
};

template <typename Scalar>
PowerSystem<Scalar> validate_system(std::vector<std::string> labels, MatrixX<Scalar> adjacency) {
  return PowerSystem<Scalar>(std::move(labels), std::move(adjacency));
}

/// Column-stochastic matrix of ultimate influence shares. Entry (i, j) is the colonization of
/// node i in node j; column j is the spectrum of node j.
template <typename Scalar = double>
class ColonizationMatrix {
 public:
  /// Accepts any non-negative matrix with unit column sums and a positive diagonal.
  /// Throws ValidationError otherwise.
  explicit ColonizationMatrix(MatrixX<Scalar> values, double tolerance = kInvariantTolerance)
      : values_(std::move(values)) {
    using Kind = Violation::Kind;
    std::vector<Violation> out;
    const Index n = values_.rows();
    if (n == 0 || values_.cols() != n) {
      out.push_back({Kind::ShapeMismatch, static_cast<long>(values_.rows()),
                     static_cast<long>(values_.cols()), 0.0});
      throw ValidationError(std::move(out));
    }
    for (Index j = 0; j < n; ++j) {
      for (Index i = 0; i < n; ++i) {
        const double c = static_cast<double>(values_(i, j));
        if (!std::isfinite(c)) {
          out.push_back({Kind::NonFinite, static_cast<long>(i), static_cast<long>(j), c});
        } else if (c < 0.0) {
          out.push_back({Kind::NegativeColonization, static_cast<long>(i), static_cast<long>(j), c});
        }
      }
      if (!(values_(j, j) > Scalar(0))) {
        out.push_back({Kind::NonPositiveFreedom, static_cast<long>(j), static_cast<long>(j),
                       static_cast<double>(values_(j, j))});
      }
      const double sum = static_cast<double>(values_.col(j).sum());
      if (!(std::abs(sum - 1.0) <= tolerance)) {
        out.push_back({Kind::ColumnSumNotUnit, -1, static_cast<long>(j), sum});
      }
    }
    if (!out.empty()) throw ValidationError(std::move(out));
  }

  Index size() const { return values_.rows(); }
  const MatrixX<Scalar>& values() const { return values_; }
  Scalar operator()(Index colonizer, Index colonized) const { return values_(colonizer, colonized); }
  auto spectrum(Index node) const { return values_.col(node); }
  Scalar trace() const { return values_.trace(); }

 private:
  struct Trusted {};
  ColonizationMatrix(Trusted, MatrixX<Scalar> values) : values_(std::move(values)) {}

  template <typename S>
  friend ColonizationMatrix<S> colonize(const PowerSystem<S>& system);

  MatrixX<Scalar> values_;
};

namespace detail {

inline void check_index(Index i, Index n) {
  if (i < 0 || i >= n) {
    throw std::out_of_range("node index " + std::to_string(i) + " out of range [0, " +
                            std::to_string(n) + ")");
  }
}

/// Inverse of a nonsingular M-matrix (positive diagonal, non-positive off-diagonal) by LU
/// without pivoting. Off-diagonal updates combine terms of one sign, so structural zeros stay
/// exact zeros and the result is entrywise non-negative. Pivots can still lose digits when
/// the matrix is close to singular, i.e. when some column mass approaches one.
template <typename Scalar>
MatrixX<Scalar> m_matrix_inverse(MatrixX<Scalar> lu) {
  const Index n = lu.rows();
  for (Index k = 0; k < n; ++k) {
    for (Index i = k + 1; i < n; ++i) {
      if (lu(i, k) == Scalar(0)) continue;
      lu(i, k) /= lu(k, k);
      for (Index j = k + 1; j < n; ++j) lu(i, j) -= lu(i, k) * lu(k, j);
    }
  }
  MatrixX<Scalar> inv = MatrixX<Scalar>::Zero(n, n);
  for (Index col = 0; col < n; ++col) {
    VectorX<Scalar> y = VectorX<Scalar>::Zero(n);
    y(col) = Scalar(1);
    for (Index i = col + 1; i < n; ++i) {
      for (Index k = col; k < i; ++k) y(i) -= lu(i, k) * y(k);
    }
    for (Index i = n - 1; i >= 0; --i) {
      Scalar acc = y(i);
      for (Index k = i + 1; k < n; ++k) acc -= lu(i, k) * inv(k, col);
      inv(i, col) = acc / lu(i, i);
    }
  }
  // Map -0.0 to +0.0.
  return inv.unaryExpr([](Scalar x) { return x == Scalar(0) ? Scalar(0) : x; });
}

}  // namespace detail

/// Colonization matrix of a power system: C = diag(1 - s) (I - F)^-1, with s the in-weights.
/// Satisfies unit column sums and c_ij = sum_k c_ik f_kj for every j != i.
template <typename Scalar>
ColonizationMatrix<Scalar> colonize(const PowerSystem<Scalar>& system) {
  const Index n = system.size();
  const MatrixX<Scalar> resolvent =
      detail::m_matrix_inverse<Scalar>(MatrixX<Scalar>::Identity(n, n) - system.adjacency());
  const VectorX<Scalar> freedom_scale = VectorX<Scalar>::Ones(n) - system.in_weights();
  return ColonizationMatrix<Scalar>(typename ColonizationMatrix<Scalar>::Trusted{},
                                    freedom_scale.asDiagonal() * resolvent);
}

/// Recovers the zero-diagonal adjacency whose colonization matrix is `c`. Column j of F solves
/// sum_{k != j} c_ik f_kj = c_ij for all i != j. Throws NotInRangeError when a system is
/// singular or the recovered weights break an adjacency axiom.
template <typename Scalar>
PowerSystem<Scalar> decolonize(const ColonizationMatrix<Scalar>& c, std::vector<std::string> labels) {
  const Index n = c.size();
  if (static_cast<std::size_t>(n) != labels.size()) {
    throw DimensionMismatchError("decolonize: " + std::to_string(labels.size()) + " labels for " +
                                 std::to_string(n) + " nodes");
  }
  MatrixX<Scalar> adjacency = MatrixX<Scalar>::Zero(n, n);
  if (n > 1) {
    const auto& values = c.values();
    for (Index j = 0; j < n; ++j) {
      MatrixX<Scalar> lhs(n - 1, n - 1);
      VectorX<Scalar> rhs(n - 1);
      for (Index i = 0, r = 0; i < n; ++i) {
        if (i == j) continue;
        for (Index k = 0, col = 0; k < n; ++k) {
          if (k == j) continue;
          lhs(r, col++) = values(i, k);
        }
        rhs(r++) = values(i, j);
      }
      Eigen::FullPivLU<MatrixX<Scalar>> lu(lhs);
      if (!lu.isInvertible()) {
        throw NotInRangeError("decolonize: spectrum system for node " + std::to_string(j) +
                              " is singular");
      }
      const VectorX<Scalar> column = lu.solve(rhs);
      for (Index k = 0, r = 0; k < n; ++k) {
        if (k == j) continue;
        Scalar f = column(r++);
        // Rounding residue around structural zeros.
        if (f < Scalar(0) && f > Scalar(-1e-12)) f = Scalar(0);
        adjacency(k, j) = f;
      }
    }
  }
  if (auto violations = check_axioms(adjacency, labels.size()); !violations.empty()) {
    throw NotInRangeError(std::move(violations));
  }
  return PowerSystem<Scalar>(std::move(labels), std::move(adjacency));
}

template <typename Scalar>
PowerSystem<Scalar> decolonize(const ColonizationMatrix<Scalar>& c) {
  return decolonize(c, default_labels(c.size()));
}

/// Row sum of C: how much node i shapes all spectra, its own included.
template <typename Scalar>
Scalar total_power(const ColonizationMatrix<Scalar>& c, Index i) {
  detail::check_index(i, c.size());
  return c.values().row(i).sum();
}

template <typename Scalar>
VectorX<Scalar> total_powers(const ColonizationMatrix<Scalar>& c) {
  return c.values().rowwise().sum();
}

/// Diagonal entry c_ii. Equals one exactly when node i has no incoming edges.
template <typename Scalar>
Scalar freedom_of(const ColonizationMatrix<Scalar>& c, Index i) {
  detail::check_index(i, c.size());
  return c(i, i);
}

template <typename Scalar = double>
struct PairRelation {
  Scalar mutualism;
  Scalar cooperation;
  Scalar hierarchy;
};

template <typename Scalar>
PairRelation<Scalar> pair_relation(const ColonizationMatrix<Scalar>& c, Index i, Index j) {
  detail::check_index(i, c.size());
  detail::check_index(j, c.size());
  if (i == j) throw DegeneratePairError("pair relation needs two distinct nodes");
  const Scalar a = c(i, j);
  const Scalar b = c(j, i);
  return {Scalar(2) * std::min(a, b), a + b, a > b ? a - b : b - a};
}

enum class SystemClass { free, mutual, hierarchical, mixed };

const char* to_string(SystemClass k);

template <typename Scalar = double>
struct SystemIndices {
  Scalar mutualism;
  Scalar cooperation;
  Scalar hierarchy;
  Scalar freedom;
  SystemClass classification;
};

/// Pairwise relations summed over unordered pairs and normalized by n - 1, plus the
/// normalized freedom (trace - 1) / (n - 1).
template <typename Scalar>
SystemIndices<Scalar> system_indices(const ColonizationMatrix<Scalar>& c) {
  const Index n = c.size();
  if (n < 2) throw UndefinedForSingletonError("system indices need at least two nodes");
  Scalar mutualism(0), cooperation(0), hierarchy(0);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const auto rel = pair_relation(c, i, j);
      mutualism += rel.mutualism;
      cooperation += rel.cooperation;
      hierarchy += rel.hierarchy;
    }
  }
  const Scalar norm = Scalar(n - 1);
  SystemIndices<Scalar> out{mutualism / norm, cooperation / norm, hierarchy / norm,
                            (c.trace() - Scalar(1)) / norm, SystemClass::mixed};
  const Scalar tol(kInvariantTolerance);
  if (out.cooperation <= tol) {
    out.classification = SystemClass::free;
  } else if (out.mutualism <= tol && out.hierarchy > tol) {
    out.classification = SystemClass::hierarchical;
  } else if (out.hierarchy <= tol && out.mutualism > tol) {
    out.classification = SystemClass::mutual;
  }
  return out;
}

/// True when a directed path of positive-weight edges leads from `from` to `to`.
/// A node always reaches itself.
template <typename Scalar>
bool reaches(const PowerSystem<Scalar>& system, Index from, Index to) {
  const Index n = system.size();
  detail::check_index(from, n);
  detail::check_index(to, n);
  if (from == to) return true;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::deque<Index> frontier{from};
  seen[static_cast<std::size_t>(from)] = true;
  while (!frontier.empty()) {
    const Index u = frontier.front();
    frontier.pop_front();
    for (Index v = 0; v < n; ++v) {
      if (seen[static_cast<std::size_t>(v)] || !(system.weight(u, v) > Scalar(0))) continue;
      if (v == to) return true;
      seen[static_cast<std::size_t>(v)] = true;
      frontier.push_back(v);
    }
  }
  return false;
}

}  // namespace powersys
