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

#include "powersys/power_graph.hpp"

#include <sstream>

#include "powersys/shapes.hpp"

namespace powersys {

const char* to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::ShapeMismatch: return "ShapeMismatch";
    case Violation::Kind::NonFinite: return "NonFinite";
    case Violation::Kind::NegativeWeight: return "NegativeWeight";
    case Violation::Kind::SelfLoop: return "SelfLoop";
    case Violation::Kind::ColumnMassExceeded: return "ColumnMassExceeded";
    case Violation::Kind::NegativeColonization: return "NegativeColonization";
    case Violation::Kind::ColumnSumNotUnit: return "ColumnSumNotUnit";
    case Violation::Kind::NonPositiveFreedom: return "NonPositiveFreedom";
  }
  return "Unknown";
}

std::string Violation::describe() const {
  std::ostringstream os;
  os.precision(12);
  os << to_string(kind);
  switch (kind) {
    case Kind::ShapeMismatch:
      os << "(rows=" << row << ", cols=" << col << ", labels=" << static_cast<long>(value) << ")";
      break;
    case Kind::SelfLoop:
      os << "(" << row << ")";
      break;
    case Kind::ColumnMassExceeded:
    case Kind::ColumnSumNotUnit:
      os << "(" << col << ", " << value << ")";
      break;
    default:
      os << "(" << row << ", " << col << ", " << value << ")";
      break;
  }
  return os.str();
}

namespace {

std::string join(const std::vector<Violation>& violations) {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.describe();
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error("invalid matrix: " + join(violations)), violations_(std::move(violations)) {}

NotInRangeError::NotInRangeError(std::vector<Violation> violations)
    : Error("no admissible adjacency for this colonization matrix: " + join(violations)),
      violations_(std::move(violations)) {}

std::vector<std::string> default_labels(Index n) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(std::max<Index>(n, 0)));
  for (Index i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

const char* to_string(SystemClass k) {
  switch (k) {
    case SystemClass::free: return "free";
    case SystemClass::mutual: return "mutual";
    case SystemClass::hierarchical: return "hierarchical";
    case SystemClass::mixed: return "mixed";
  }
  return "mixed";
}

namespace shapes {

Eigen::MatrixXd chain(Index n, double weight) {
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(n, n);
  for (Index i = 0; i + 1 < n; ++i) f(i, i + 1) = weight;
  return f;
}

Eigen::MatrixXd one_way_cycle(Index n, double weight) {
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i) f(i, (i + 1) % n) = weight;
  return f;
}

Eigen::MatrixXd mutual_pair(Index n, Index a, Index b, double weight) {
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(n, n);
  f(a, b) = weight;
  f(b, a) = weight;
  return f;
}

void add_union(Eigen::MatrixXd& adjacency, std::span<const Index> members, double weight) {
  for (Index from : members) {
    for (Index to : members) {
      if (from != to) adjacency(from, to) = weight;
    }
  }
}

void add_domination(Eigen::MatrixXd& adjacency, Index dominant, std::span<const Index> subjects,
                    double weight) {
  for (Index to : subjects) {
    if (to != dominant) adjacency(dominant, to) = weight;
  }
}

double mutual_weight_for_mutualism(double mutualism) {
  if (!(mutualism >= 0.0 && mutualism < 1.0)) {
    throw InvalidParamsError("two-node mutualism must lie in [0, 1)");
  }
  return mutualism / (2.0 - mutualism);
}

}  // namespace shapes
}  // namespace powersys
