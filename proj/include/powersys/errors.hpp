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

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace powersys {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One broken constraint found while checking an adjacency or colonization matrix.
struct Violation {
  enum class Kind {
    ShapeMismatch,
    NonFinite,
    NegativeWeight,
    SelfLoop,
    ColumnMassExceeded,
    NegativeColonization,
    ColumnSumNotUnit,
    NonPositiveFreedom,
  };

  Kind kind;
  long row = -1;
  long col = -1;
  double value = 0.0;

  std::string describe() const;
};

const char* to_string(Violation::Kind kind);

/// Raised when a candidate matrix breaks one or more axioms. Carries every violation found.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);

  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// The adjacency recovered from a colonization matrix is not admissible.
class NotInRangeError : public Error {
 public:
  explicit NotInRangeError(std::vector<Violation> violations);
  explicit NotInRangeError(const std::string& what) : Error(what) {}

  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

class DegeneratePairError : public Error {
 public:
  using Error::Error;
};

class UndefinedForSingletonError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

class NonPositivePayoffError : public Error {
 public:
  using Error::Error;
};

class OrderingViolatedError : public Error {
 public:
  using Error::Error;
};

class InvalidParamsError : public Error {
 public:
  using Error::Error;
};

class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}

  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Malformed input document. `location` names the line, field or path that failed.
class SyntaxError : public Error {
 public:
  SyntaxError(std::string location, const std::string& message)
      : Error(location + ": " + message), location_(std::move(location)) {}

  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

}  // namespace powersys
