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

#include "powersys/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

namespace powersys::io {

using nlohmann::json;

std::string format_number(double value, int digits) {
  if (value == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

namespace {

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value == 0.0 ? 0.0 : value);
  return buf;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n');
    throw SyntaxError("line " + std::to_string(line), e.what());
  }
}

const json& require(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw SyntaxError(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw SyntaxError(path, std::string("missing field '") + key + "'");
  return *it;
}

std::string require_string(const json& value, const std::string& path) {
  if (!value.is_string()) throw SyntaxError(path, "expected a string");
  return value.get<std::string>();
}

double require_number(const json& value, const std::string& path) {
  if (!value.is_number()) throw SyntaxError(path, "expected a number");
  const double x = value.get<double>();
  if (!std::isfinite(x)) throw SyntaxError(path, "expected a finite number");
  return x;
}

void check_version(const json& doc) {
  const json& v = require(doc, "version", "$");
  if (!v.is_number_integer() || v.get<int>() != kSchemaVersion) {
    throw SyntaxError("$.version", "unsupported schema version (expected " +
                                       std::to_string(kSchemaVersion) + ")");
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line, std::size_t lineno) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        fields.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.emplace_back();
    } else {
      fields.back() += ch;
    }
  }
  if (quoted) throw SyntaxError("line " + std::to_string(lineno), "unterminated quote");
  return fields;
}

std::string dot_id(const std::string& label) {
  std::string out = "\"";
  for (char ch : label) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

PowerSystem<double> parse_system(std::string_view text) {
  const json doc = parse_json(text);
  check_version(doc);

  const json& nodes = require(doc, "nodes", "$");
  if (!nodes.is_array() || nodes.empty()) throw SyntaxError("$.nodes", "expected a non-empty array");
  std::vector<std::string> labels;
  std::map<std::string, Index> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string path = "$.nodes[" + std::to_string(i) + "]";
    std::string label = require_string(nodes[i], path);
    if (!index.emplace(label, static_cast<Index>(i)).second) {
      throw SyntaxError(path, "duplicate node label '" + label + "'");
    }
    labels.push_back(std::move(label));
  }

  const auto n = static_cast<Index>(labels.size());
  Eigen::MatrixXd adjacency = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXi seen = Eigen::MatrixXi::Zero(n, n);
  const json& edges = doc.contains("edges") ? doc["edges"] : json::array();
  if (!edges.is_array()) throw SyntaxError("$.edges", "expected an array");
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const std::string path = "$.edges[" + std::to_string(e) + "]";
    auto node = [&](const char* key) {
      const std::string label = require_string(require(edges[e], key, path), path + "." + key);
      const auto it = index.find(label);
      if (it == index.end()) throw SyntaxError(path + "." + key, "unknown node '" + label + "'");
      return it->second;
    };
    const Index from = node("from");
    const Index to = node("to");
    const double w = require_number(require(edges[e], "weight", path), path + ".weight");
    if (seen(from, to)++) throw SyntaxError(path, "duplicate edge");
    adjacency(from, to) = w;
  }
  return PowerSystem<double>(std::move(labels), std::move(adjacency));
}

std::string serialize_system(const PowerSystem<double>& system) {
  json doc;
  doc["version"] = kSchemaVersion;
  doc["nodes"] = system.labels();
  doc["edges"] = json::array();
  const auto& f = system.adjacency();
  for (Index i = 0; i < f.rows(); ++i) {
    for (Index j = 0; j < f.cols(); ++j) {
      if (f(i, j) > 0.0) {
        json edge;
        edge["from"] = system.labels()[static_cast<std::size_t>(i)];
        edge["to"] = system.labels()[static_cast<std::size_t>(j)];
        edge["weight"] = f(i, j);
        doc["edges"].push_back(std::move(edge));
      }
    }
  }
  return doc.dump();
}

NormalFormGame parse_game(std::string_view text) {
  const json doc = parse_json(text);
  check_version(doc);

  const json& players_json = require(doc, "players", "$");
  if (!players_json.is_array() || players_json.empty()) {
    throw SyntaxError("$.players", "expected a non-empty array");
  }
  const json& strategies = doc.contains("strategies") ? doc["strategies"] : json::object();
  if (!strategies.is_object()) throw SyntaxError("$.strategies", "expected an object");

  std::vector<Player> players;
  std::set<std::string> names;
  for (std::size_t i = 0; i < players_json.size(); ++i) {
    const std::string path = "$.players[" + std::to_string(i) + "]";
    Player player;
    player.name = require_string(require(players_json[i], "name", path), path + ".name");
    if (!names.insert(player.name).second) {
      throw SyntaxError(path, "duplicate player '" + player.name + "'");
    }
    bool passive = false;
    if (players_json[i].contains("passive")) {
      const json& flag = players_json[i]["passive"];
      if (!flag.is_boolean()) throw SyntaxError(path + ".passive", "expected a boolean");
      passive = flag.get<bool>();
    }
    const std::string spath = "$.strategies." + player.name;
    if (passive) {
      if (strategies.contains(player.name)) {
        throw SyntaxError(spath, "passive player cannot have strategies");
      }
    } else {
      const json& list = require(strategies, player.name.c_str(), "$.strategies");
      if (!list.is_array() || list.empty()) throw SyntaxError(spath, "expected a non-empty array");
      for (std::size_t s = 0; s < list.size(); ++s) {
        player.strategies.push_back(require_string(list[s], spath + "[" + std::to_string(s) + "]"));
      }
      std::set<std::string> uniq(player.strategies.begin(), player.strategies.end());
      if (uniq.size() != player.strategies.size()) throw SyntaxError(spath, "duplicate strategy");
    }
    players.push_back(std::move(player));
  }
  for (const auto& [name, _] : strategies.items()) {
    if (!names.count(name)) throw SyntaxError("$.strategies." + name, "unknown player");
  }

  NormalFormGame game(std::move(players));
  std::vector<bool> covered(game.profile_count(), false);
  const json& payoffs = require(doc, "payoffs", "$");
  if (!payoffs.is_array()) throw SyntaxError("$.payoffs", "expected an array");
  for (std::size_t e = 0; e < payoffs.size(); ++e) {
    const std::string path = "$.payoffs[" + std::to_string(e) + "]";
    const json& profile_json = require(payoffs[e], "profile", path);
    if (!profile_json.is_object()) throw SyntaxError(path + ".profile", "expected an object");
    Profile profile(game.active().size());
    for (std::size_t slot = 0; slot < game.active().size(); ++slot) {
      const Player& player = game.players()[game.active()[slot]];
      const std::string label = require_string(require(profile_json, player.name.c_str(), path + ".profile"),
                                                path + ".profile." + player.name);
      const auto it = std::find(player.strategies.begin(), player.strategies.end(), label);
      if (it == player.strategies.end()) {
        throw SyntaxError(path + ".profile." + player.name, "unknown strategy '" + label + "'");
      }
      profile[slot] = static_cast<std::size_t>(it - player.strategies.begin());
    }
    if (profile_json.size() != game.active().size()) {
      throw SyntaxError(path + ".profile", "profile must name exactly the active players");
    }
    const json& values = require(payoffs[e], "values", path);
    if (!values.is_array() || values.size() != game.player_count()) {
      throw SyntaxError(path + ".values",
                        "expected " + std::to_string(game.player_count()) + " payoffs");
    }
    Eigen::VectorXd v(static_cast<Index>(values.size()));
    for (std::size_t k = 0; k < values.size(); ++k) {
      v(static_cast<Index>(k)) = require_number(values[k], path + ".values[" + std::to_string(k) + "]");
    }
    const std::size_t flat = game.flat_index(profile);
    if (covered[flat]) throw SyntaxError(path, "duplicate profile");
    covered[flat] = true;
    game.set_payoffs(profile, v);
  }
  for (std::size_t flat = 0; flat < covered.size(); ++flat) {
    if (!covered[flat]) {
      std::string missing;
      for (const auto& s : game.describe(game.profile_at(flat))) missing += (missing.empty() ? "" : ",") + s;
      throw SyntaxError("$.payoffs", "no payoff for profile (" + missing + ")");
    }
  }
  return game;
}

std::string serialize_game(const NormalFormGame& game) {
  json doc;
  doc["version"] = kSchemaVersion;
  doc["players"] = json::array();
  doc["strategies"] = json::object();
  for (const auto& player : game.players()) {
    json p;
    p["name"] = player.name;
    if (player.passive()) {
      p["passive"] = true;
    } else {
      doc["strategies"][player.name] = player.strategies;
    }
    doc["players"].push_back(std::move(p));
  }
  doc["payoffs"] = json::array();
  for (std::size_t flat = 0; flat < game.profile_count(); ++flat) {
    const Profile profile = game.profile_at(flat);
    json entry;
    const auto labels = game.describe(profile);
    for (std::size_t slot = 0; slot < labels.size(); ++slot) {
      entry["profile"][game.players()[game.active()[slot]].name] = labels[slot];
    }
    const Eigen::VectorXd v = game.payoffs(profile);
    entry["values"] = std::vector<double>(v.data(), v.data() + v.size());
    doc["payoffs"].push_back(std::move(entry));
  }
  return doc.dump();
}

std::string export_dot(const PowerSystem<double>& system, const ColonizationMatrix<double>& c) {
  const Index n = system.size();
  if (c.size() != n) throw DimensionMismatchError("colonization matrix does not match the system");
  const auto& labels = system.labels();
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return labels[static_cast<std::size_t>(a)] < labels[static_cast<std::size_t>(b)];
  });

  const Eigen::VectorXd power = total_powers(c);
  const double max_power = power.maxCoeff();
  std::ostringstream os;
  os << "digraph power_system {\n";
  os << "  node [shape=circle, fixedsize=true];\n";
  for (Index i : order) {
    const std::string& label = labels[static_cast<std::size_t>(i)];
    const std::string id = dot_id(label);
    os << "  " << id << " [width=" << fixed(0.3 + 0.7 * power(i) / max_power, 4) << ", label="
       << id.substr(0, id.size() - 1) << "\\np=" << fixed(power(i), 3) << "\"];\n";
  }
  for (Index i : order) {
    for (Index j : order) {
      const double w = system.weight(i, j);
      if (w > 0.0) {
        os << "  " << dot_id(labels[static_cast<std::size_t>(i)]) << " -> "
           << dot_id(labels[static_cast<std::size_t>(j)]) << " [label=\"" << fixed(w, 3)
           << "\"];\n";
      }
    }
  }
  os << "}\n";
  return os.str();
}

std::string export_spectra_csv(const std::vector<std::string>& labels,
                               const ColonizationMatrix<double>& c) {
  if (static_cast<Index>(labels.size()) != c.size()) {
    throw DimensionMismatchError("label count does not match the colonization matrix");
  }
  std::ostringstream os;
  os << "colonizer,colonized,value\n";
  for (Index i = 0; i < c.size(); ++i) {
    for (Index j = 0; j < c.size(); ++j) {
      os << csv_field(labels[static_cast<std::size_t>(i)]) << ','
         << csv_field(labels[static_cast<std::size_t>(j)]) << ',' << format_number(c(i, j))
         << '\n';
    }
  }
  return os.str();
}

Spectra parse_spectra_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw SyntaxError("line 1", "empty spectra file");
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "colonizer,colonized,value") {
    throw SyntaxError("line 1", "expected header 'colonizer,colonized,value'");
  }

  std::vector<std::string> labels;
  std::map<std::string, Index> index;
  std::vector<std::tuple<Index, Index, double>> cells;
  auto intern = [&](const std::string& label) {
    const auto [it, inserted] = index.emplace(label, static_cast<Index>(labels.size()));
    if (inserted) labels.push_back(label);
    return it->second;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line, lineno);
    const std::string where = "line " + std::to_string(lineno);
    if (fields.size() != 3) throw SyntaxError(where, "expected 3 fields");
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(fields[2], &used);
      if (used != fields[2].size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw SyntaxError(where, "value '" + fields[2] + "' is not a number");
    }
    const Index i = intern(fields[0]);
    const Index j = intern(fields[1]);
    cells.emplace_back(i, j, value);
  }
  const auto n = static_cast<Index>(labels.size());
  if (n == 0) throw SyntaxError("line 2", "no entries");
  Eigen::MatrixXd values = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXi seen = Eigen::MatrixXi::Zero(n, n);
  for (const auto& [i, j, v] : cells) {
    if (seen(i, j)++) {
      throw SyntaxError("entry " + labels[static_cast<std::size_t>(i)] + "," +
                            labels[static_cast<std::size_t>(j)],
                        "duplicate entry");
    }
    values(i, j) = v;
  }
  if (seen.minCoeff() == 0) throw SyntaxError("spectra", "matrix is incomplete");
  return {std::move(labels), ColonizationMatrix<double>(std::move(values))};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace powersys::io
