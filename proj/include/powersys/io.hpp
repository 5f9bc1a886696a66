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

#include <string>
#include <string_view>
#include <vector>

#include "powersys/game.hpp"
#include "powersys/power_graph.hpp"

namespace powersys::io {

inline constexpr int kSchemaVersion = 1;
/// Significant digits for machine-readable numbers.
inline constexpr int kMachineDigits = 12;
/// Significant digits for human-readable reports.
inline constexpr int kHumanDigits = 4;

/// Shortest "%.*g" rendering with the given significant digits; never prints "-0".
std::string format_number(double value, int digits = kMachineDigits);

/// System document:
///   {"version":1,"nodes":["0","1"],"edges":[{"from":"0","to":"1","weight":0.5}]}
/// Throws SyntaxError (with a line or field path) or ValidationError.
PowerSystem<double> parse_system(std::string_view text);

/// Canonical document: nodes in system order, positive edges in row-major order.
std::string serialize_system(const PowerSystem<double>& system);

/// Game document:
///   {"version":1,
///    "players":[{"name":"P1"},{"name":"L","passive":true}],
///    "strategies":{"P1":["C","D"]},
///    "payoffs":[{"profile":{"P1":"C"},"values":[-1.0,0.0]}]}
/// Every active profile must appear exactly once. Throws SyntaxError.
NormalFormGame parse_game(std::string_view text);

/// Canonical document with payoff entries in profile order.
std::string serialize_game(const NormalFormGame& game);

/// Graphviz digraph. Node width 0.3 + 0.7 * p_i / max p, edge labels with three decimals,
/// nodes and edges ordered by label.
std::string export_dot(const PowerSystem<double>& system, const ColonizationMatrix<double>& c);

/// One "colonizer,colonized,value" row per matrix entry, diagonal included.
std::string export_spectra_csv(const std::vector<std::string>& labels,
                               const ColonizationMatrix<double>& c);

struct Spectra {
  std::vector<std::string> labels;
  ColonizationMatrix<double> colonization;
};

/// Reads export_spectra_csv output back. Throws SyntaxError or ValidationError.
Spectra parse_spectra_csv(std::string_view text);

std::string read_file(const std::string& path);

}  // namespace powersys::io
