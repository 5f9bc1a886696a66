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

#include "powersys/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"
#include "powersys/game.hpp"
#include "powersys/io.hpp"
#include "powersys/power_graph.hpp"
#include "powersys/scenarios.hpp"

namespace powersys::cli {

namespace {

enum class Format { text, csv, json_lines };

using Cell = std::variant<std::string, double>;

/// A named block of output. Every command builds tables and a renderer prints them.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

std::string render_cell(const Cell& cell, int digits) {
  if (const auto* s = std::get_if<std::string>(&cell)) return *s;
  return io::format_number(std::get<double>(cell), digits);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void render(const std::vector<Table>& tables, Format format, std::ostream& out) {
  bool first = true;
  for (const auto& table : tables) {
    switch (format) {
      case Format::text: {
        if (!first) out << '\n';
        out << "# " << table.name << '\n';
        std::vector<std::size_t> width(table.columns.size());
        std::vector<std::vector<std::string>> cells;
        for (std::size_t c = 0; c < table.columns.size(); ++c) width[c] = table.columns[c].size();
        for (const auto& row : table.rows) {
          auto& line = cells.emplace_back();
          for (std::size_t c = 0; c < row.size(); ++c) {
            line.push_back(render_cell(row[c], io::kHumanDigits));
            width[c] = std::max(width[c], line.back().size());
          }
        }
        auto emit = [&](const std::vector<std::string>& line) {
          for (std::size_t c = 0; c < line.size(); ++c) {
            out << (c ? "  " : "") << std::left
                << std::setw(c + 1 < line.size() ? static_cast<int>(width[c]) : 0) << line[c];
          }
          out << '\n';
        };
        emit(table.columns);
        for (const auto& line : cells) emit(line);
        break;
      }
      case Format::csv: {
        if (!first) out << '\n';
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
          out << (c ? "," : "") << csv_escape(table.columns[c]);
        }
        out << '\n';
        for (const auto& row : table.rows) {
          for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "," : "") << csv_escape(render_cell(row[c], io::kMachineDigits));
          }
          out << '\n';
        }
        break;
      }
      case Format::json_lines: {
        for (const auto& row : table.rows) {
          nlohmann::ordered_json obj;
          obj["table"] = table.name;
          for (std::size_t c = 0; c < row.size(); ++c) {
            if (const auto* s = std::get_if<std::string>(&row[c])) {
              obj[table.columns[c]] = *s;
            } else {
              obj[table.columns[c]] = std::stod(io::format_number(std::get<double>(row[c])));
            }
          }
          out << obj.dump() << '\n';
        }
        break;
      }
    }
    first = false;
  }
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// --- commands ------------------------------------------------------------------------------

std::vector<Table> analyze(const PowerSystem<double>& system) {
  const auto c = colonize(system);
  Table summary{"indices", {"metric", "value"}, {}};
  summary.add({std::string("nodes"), static_cast<double>(system.size())});
  if (system.size() >= 2) {
    const auto idx = system_indices(c);
    summary.add({std::string("class"), std::string(to_string(idx.classification))});
    summary.add({std::string("freedom"), idx.freedom});
    summary.add({std::string("mutualism"), idx.mutualism});
    summary.add({std::string("cooperation"), idx.cooperation});
    summary.add({std::string("hierarchy"), idx.hierarchy});
  }
  Table nodes{"nodes", {"node", "power", "freedom"}, {}};
  for (Index i = 0; i < system.size(); ++i) {
    nodes.add({system.labels()[static_cast<std::size_t>(i)], total_power(c, i), freedom_of(c, i)});
  }
  return {summary, nodes};
}

Table game_table(const std::string& name, const NormalFormGame& game,
                 const std::vector<Profile>& profiles) {
  Table t{name, {}, {}};
  for (auto slot : game.active()) t.columns.push_back(game.players()[slot].name);
  for (const auto& p : game.players()) t.columns.push_back("u[" + p.name + "]");
  for (const auto& profile : profiles) {
    std::vector<Cell> row;
    for (auto& s : game.describe(profile)) row.emplace_back(std::move(s));
    const Eigen::VectorXd u = game.payoffs(profile);
    for (Index k = 0; k < u.size(); ++k) row.emplace_back(u(k));
    t.add(std::move(row));
  }
  return t;
}

std::vector<Profile> all_profiles(const NormalFormGame& game) {
  std::vector<Profile> out;
  for (std::size_t f = 0; f < game.profile_count(); ++f) out.push_back(game.profile_at(f));
  return out;
}

std::vector<Table> nash_tables(const NormalFormGame& game) {
  std::vector<Table> out{game_table("equilibria", game, pure_nash(game))};
  const auto dominance = iterated_strict_dominance(game);
  Table trace{"dominance", {"round", "player", "eliminated", "dominator"}, {}};
  for (const auto& e : dominance.trace) {
    trace.add({static_cast<double>(e.round), game.players()[e.player].name, e.strategy, e.dominator});
  }
  out.push_back(std::move(trace));
  return out;
}

std::vector<Table> pd_tables(const PDParams& params, bool threshold, const std::string& shift) {
  std::vector<Table> out;
  if (threshold) {
    const auto t = pd_mutualism_threshold(params);
    Table table{"mutualism_threshold", {"metric", "value"}, {}};
    table.add({std::string("threshold"), t.threshold});
    table.add({std::string("feasible"), yes_no(t.feasible)});
    table.add({std::string("feasibility_rule"), std::string(kPdFeasibilityRule)});
    if (t.verified) {
      table.add({std::string("probe_mutualism"), *t.probe_mutualism});
      table.add({std::string("cc_unique_at_probe"), yes_no(*t.verified)});
    }
    out.push_back(std::move(table));
  }
  if (!shift.empty()) {
    const PdCell target = shift == "cd" ? PdCell::cd : PdCell::dc;
    const auto s = pd_hierarchy_shift(params, target);
    Table table{"hierarchy_shift", {"metric", "value"}, {}};
    table.add({std::string("target"), std::string(to_string(s.target))});
    table.add({std::string("dominant"), "Player " + std::to_string(s.dominant + 1)});
    table.add({std::string("dominated"), "Player " + std::to_string(s.dominated + 1)});
    table.add({std::string("colonization"), s.colonization});
    out.push_back(std::move(table));
  }
  if (!threshold && shift.empty()) {
    const auto game = build_pd(params);
    out.push_back(game_table("game", game, all_profiles(game)));
    auto nash = nash_tables(game);
    out.insert(out.end(), nash.begin(), nash.end());
  }
  return out;
}

std::vector<Table> ecology_tables(const EcologyParams& params, const PowerSystem<double>& system) {
  const auto th = ecology_thresholds(params);
  Table thresholds{"thresholds", {"metric", "value"}, {}};
  thresholds.add({std::string("epsilon_threshold"), th.epsilon_threshold});
  thresholds.add({std::string("min_hier_cooperation"), th.min_hier_cooperation});
  thresholds.add({std::string("min_mutual_cooperation"), th.min_mutual_cooperation});
  thresholds.add({std::string("mutual_pair_feasible"), yes_no(th.mutual_pair_feasible)});

  const auto report = ecology_solve(params, system);
  Table summary{"outcome", {"metric", "value"}, {}};
  summary.add({std::string("trees"), static_cast<double>(report.trees)});
  summary.add({std::string("nash_check"), std::string(to_string(report.nash_check))});
  Table nodes{"inhabitants", {"node", "colonized_share", "plants", "inertial", "compound"}, {}};
  for (std::size_t i = 0; i < params.n; ++i) {
    const auto k = static_cast<Index>(i);
    nodes.add({system.labels()[i], report.colonized_share[i], yes_no(report.plants[i]),
               report.inertial(k), report.compound(k)});
  }
  return {thresholds, summary, nodes};
}

std::vector<Table> landowner_tables(const LandownerParams& params,
                                    const PowerSystem<double>& system) {
  const auto report = landowner_solve(params, system);
  const auto& eq = report.equilibrium;
  const auto& ref = report.free_reference;
  Table summary{"equilibrium", {"metric", "value"}, {}};
  summary.add({std::string("total_hours"), eq.total_hours});
  summary.add({std::string("wage"), eq.wage});
  summary.add({std::string("q_monopoly"), report.q_monopoly});
  summary.add({std::string("q_competition"), report.q_competition});
  summary.add({std::string("free_total_hours"), ref.total_hours});
  summary.add({std::string("free_wage"), ref.wage});
  summary.add({std::string("iterations"), static_cast<double>(eq.iterations)});
  summary.add({std::string("residual"), eq.residual});
  Table nodes{"nodes", {"node", "role", "hours", "inertial", "compound", "free_inertial"}, {}};
  for (Index i = 0; i < system.size(); ++i) {
    const bool owner = static_cast<std::size_t>(i) == params.landowner;
    nodes.add({system.labels()[static_cast<std::size_t>(i)],
               std::string(owner ? "landowner" : "peasant"), eq.hours(i), eq.inertial(i),
               eq.compound(i), ref.inertial(i)});
  }
  return {summary, nodes};
}

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json-lines") return Format::json_lines;
  return Format::text;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Power systems: colonization, system indices and compound-utility games",
               "powersys"};
  app.require_subcommand(1);
  std::string format = "text";
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "csv", "json-lines"}));
  };

  std::string system_file, game_file, mode = "additive";

  auto* analyze_cmd = app.add_subcommand("analyze", "System indices and per-node power/freedom");
  analyze_cmd->add_option("FILE", system_file, "System document")->required();
  add_format(analyze_cmd);

  auto* transform_cmd = app.add_subcommand("transform", "Compound a game through a power system");
  transform_cmd->add_option("GAME", game_file, "Game document")->required();
  transform_cmd->add_option("SYSTEM", system_file, "System document")->required();
  transform_cmd->add_option("--mode", mode, "Compound utility form")
      ->check(CLI::IsMember({"additive", "multiplicative"}));
  add_format(transform_cmd);

  auto* nash_cmd = app.add_subcommand("nash", "Pure Nash equilibria and strict dominance");
  nash_cmd->add_option("GAME", game_file, "Game document")->required();
  add_format(nash_cmd);

  PDParams pd{};
  bool threshold = false;
  std::string shift;
  auto* pd_cmd = app.add_subcommand("pd", "Generalized prisoner's dilemma");
  pd_cmd->add_option("--p", pd.p, "Payoff for mutual cooperation")->required();
  pd_cmd->add_option("--q", pd.q, "Payoff for the lone cooperator")->required();
  pd_cmd->add_option("--r", pd.r, "Payoff for the lone defector")->required();
  pd_cmd->add_option("--s", pd.s, "Payoff for mutual defection")->required();
  pd_cmd->add_flag("--threshold", threshold, "Mutualism needed for (C,C)");
  pd_cmd->add_option("--shift", shift, "Smallest one-way colonization reaching CD or DC")
      ->check(CLI::IsMember({"cd", "dc"}));
  add_format(pd_cmd);

  EcologyParams eco{0, 0.0, 0.0};
  auto* eco_cmd = app.add_subcommand("ecology", "Tree-planting public goods game");
  eco_cmd->add_option("--n", eco.n, "Inhabitants (ignored when --system is given)");
  eco_cmd->add_option("--cost", eco.tree_cost, "Cost of a tree to its planter")->required();
  eco_cmd->add_option("--revenue", eco.tree_revenue, "Income of a tree to each inhabitant")
      ->required();
  eco_cmd->add_option("--system", system_file, "System document (default: free system)");
  add_format(eco_cmd);

  double a = 20.0, unit_cost = 1.0;
  std::string landowner_label;
  auto* land_cmd = app.add_subcommand("landowner", "Monopsony labour market");
  land_cmd->add_option("SYSTEM", system_file, "System document")->required();
  land_cmd->add_option("--a", a, "Demand intercept")->capture_default_str();
  land_cmd->add_option("--cost", unit_cost, "Minimum acceptable wage")->capture_default_str();
  land_cmd->add_option("--landowner", landowner_label, "Label of the landowner (default: first node)");
  add_format(land_cmd);

  auto* dot_cmd = app.add_subcommand("dot", "Graphviz rendering sized by total power");
  dot_cmd->add_option("SYSTEM", system_file, "System document")->required();

  auto* spectra_cmd = app.add_subcommand("spectra", "Colonization matrix as CSV");
  spectra_cmd->add_option("SYSTEM", system_file, "System document")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto selected = app.get_subcommands();
    err << (selected.empty() ? app.help() : selected.front()->help());
    return kExitUsage;
  }

  try {
    const Format fmt = parse_format(format);
    auto load_system = [&] { return io::parse_system(io::read_file(system_file)); };

    if (*analyze_cmd) {
      render(analyze(load_system()), fmt, out);
    } else if (*transform_cmd) {
      const auto game = io::parse_game(io::read_file(game_file));
      const auto system = load_system();
      const auto compound = compound_payoffs(
          game, colonize(system),
          mode == "multiplicative" ? CompoundMode::multiplicative : CompoundMode::additive);
      render({game_table("compound", compound, all_profiles(compound))}, fmt, out);
    } else if (*nash_cmd) {
      render(nash_tables(io::parse_game(io::read_file(game_file))), fmt, out);
    } else if (*pd_cmd) {
      render(pd_tables(pd, threshold, shift), fmt, out);
    } else if (*eco_cmd) {
      if (system_file.empty()) {
        if (eco.n < 2) {
          err << "error: ecology needs --n (>= 2) or --system\n";
          return kExitUsage;
        }
        render(ecology_tables(eco, PowerSystem<double>::free(static_cast<Index>(eco.n))), fmt, out);
      } else {
        const auto system = load_system();
        eco.n = static_cast<std::size_t>(system.size());
        render(ecology_tables(eco, system), fmt, out);
      }
    } else if (*land_cmd) {
      const auto system = load_system();
      const auto owner = landowner_label.empty() ? 0 : system.index_of(landowner_label);
      const auto params = landowner_params(a, unit_cost, static_cast<std::size_t>(system.size()),
                                           static_cast<std::size_t>(owner));
      render(landowner_tables(params, system), fmt, out);
    } else if (*dot_cmd) {
      const auto system = load_system();
      out << io::export_dot(system, colonize(system));
    } else if (*spectra_cmd) {
      const auto system = load_system();
      out << io::export_spectra_csv(system.labels(), colonize(system));
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace powersys::cli
