// Copyright 2026 The Species Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "species/enumerate.hpp"
#include "species/harness.hpp"
#include "species/parser.hpp"
#include "species/semantics.hpp"
#include "species/series.hpp"
#include "species/structure.hpp"

namespace {

using namespace species;
using Json = nlohmann::ordered_json;

enum Exit : int { kOk = 0, kInput = 1, kArithmetic = 2, kBudget = 3, kDomain = 4 };

/// Raised for usage problems that are not library errors.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string defs;
  bool json = false;
  std::size_t budget = kDefaultBudget;
};

Environment load_defs(const std::string& path) {
  if (path.empty()) return {};
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read definitions file '" + path + "'");
  std::stringstream text;
  text << in.rdbuf();
  return parse_defs(text.str());
}

void require_valid(const Expr& e, const Environment& env, std::size_t order) {
  auto report = validate(e, env, order);
  if (report.ok()) return;
  const auto& f = report.failures.front();
  throw Error(f.code, f.subject.empty() ? f.message : f.subject + ": " + f.message);
}

std::vector<Integer> user_counts(const Expr& e, const Environment& env, std::size_t order) {
  require_valid(e, env, order);
  auto s = egf_of(e, env, order);
  auto values = counts(s);
  for (std::size_t n = 0; n < values.size(); ++n) {
    if (values[n] < 0) {
      throw Error(ErrorCode::NonIntegerCount, "negative count " + values[n].get_str() + " at n=" + std::to_string(n));
    }
  }
  return values;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonIntegerCount: return kArithmetic;
    case ErrorCode::BudgetExceeded: return kBudget;
    case ErrorCode::DomainMismatch: return kDomain;
    default: return kInput;
  }
}

int cmd_count(const std::string& expr, std::size_t n, const Common& c) {
  auto env = load_defs(c.defs);
  auto values = user_counts(parse_expr(expr), env, n);
  if (c.json) {
    Json j;
    j["expr"] = expr;
    j["n"] = n;
    j["count"] = values[n].get_str();
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << values[n] << "\n";
  }
  return kOk;
}

int cmd_series(const std::string& expr, std::size_t order, const Common& c, bool resolve_name) {
  auto env = load_defs(c.defs);
  if (resolve_name && !env.contains(expr)) throw UsageError("'" + expr + "' is not defined in the definitions file");
  auto values = user_counts(parse_expr(expr), env, order);
  if (c.json) {
    Json j;
    j["expr"] = expr;
    j["order"] = order;
    Json list = Json::array();
    for (const auto& v : values) list.push_back(v.get_str());
    j["counts"] = std::move(list);
    std::cout << j.dump(2) << "\n";
  } else {
    for (std::size_t n = 0; n < values.size(); ++n) std::cout << n << " " << values[n] << "\n";
  }
  return kOk;
}

int cmd_enumerate(const std::string& expr, const std::string& labels, const Common& c) {
  auto env = load_defs(c.defs);
  const Expr e = parse_expr(expr);
  const LabelSet set = LabelSet::parse(labels);
  require_valid(e, env, set.size());
  auto structures = enumerate(e, env, set, {.budget = c.budget});
  if (c.json) {
    Json j;
    Json list = Json::array();
    for (const auto& s : structures) list.push_back(to_json(s));
    j["structures"] = std::move(list);
    j["count"] = structures.size();
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& s : structures) std::cout << render(s) << "\n";
    std::cout << "count: " << structures.size() << "\n";
  }
  return kOk;
}

int cmd_transport(const std::string& expr, const std::string& structure, const std::string& bijection,
                  const Common& c) {
  auto env = load_defs(c.defs);
  const Expr e = parse_expr(expr);
  require_valid(e, env, kDefaultOrder);
  auto moved = transport(e, env, decode(structure), Bijection::parse(bijection));
  std::cout << encode(moved) << "\n";
  return kOk;
}

int cmd_verify(const std::string& case_filter, std::optional<std::size_t> order, const Common& c) {
  SuiteOptions options{.order = order, .case_filter = case_filter};
  if (!case_filter.empty()) {
    auto names = suite_case_names();
    if (std::find(names.begin(), names.end(), case_filter) == names.end() && c.defs.empty()) {
      throw UsageError("unknown case '" + case_filter + "'");
    }
  }
  auto reports = paper_suite(options);
  if (!c.defs.empty()) {
    // Each definition is checked for agreement between its series and its
    // enumeration.
    auto env = load_defs(c.defs);
    const std::size_t max_n = order ? std::min<std::size_t>(*order, 5) : 5;
    for (const auto& [name, _] : env.bindings()) {
      const std::string label = "defs:" + name;
      if (!case_filter.empty() && case_filter != label) continue;
      try {
        require_valid(species::name(name), env, max_n);
        reports.push_back(verify_consistency(label, species::name(name), env, max_n));
      } catch (const std::exception& e) {
        reports.push_back({.name = label, .level = "enumerative", .status = CaseStatus::Error, .error = e.what()});
      }
    }
  }
  if (c.json) {
    std::cout << reports_to_json(reports).dump(2) << "\n";
  } else {
    std::cout << format_reports(reports);
  }
  return all_passed(reports) ? kOk : kInput;
}

void add_common(CLI::App* cmd, Common& c, bool budget = false) {
  cmd->add_option("--defs", c.defs, "Definitions file, one 'Name = expr' per line");
  cmd->add_flag("--json", c.json, "Write JSON instead of text");
  if (budget) cmd->add_option("--budget", c.budget, "Maximum number of structures built");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Combinatorial species: counting, series, enumeration and transport"};
  app.require_subcommand(1, 1);

  Common common;
  std::string expr, labels, structure, bijection, case_filter;
  std::size_t n = 0;
  std::size_t order = kDefaultOrder;
  std::optional<std::size_t> verify_order;
  std::function<int()> run;

  auto* count = app.add_subcommand("count", "Print the number of structures on n labels");
  count->add_option("expr", expr, "Species expression")->required();
  count->add_option("n", n, "Number of labels")->required();
  add_common(count, common);
  count->callback([&] { run = [&] { return cmd_count(expr, n, common); }; });

  auto* series = app.add_subcommand("series", "Print the counts f_0 .. f_order");
  series->add_option("expr", expr, "Species expression")->required();
  series->add_option("order,--order", order, "Highest n to print");
  add_common(series, common);
  series->callback([&] { run = [&] { return cmd_series(expr, order, common, false); }; });

  auto* solve = app.add_subcommand("solve", "Solve the definitions and print the series of a defined name");
  solve->add_option("name", expr, "Name defined in --defs")->required();
  solve->add_option("order,--order", order, "Highest n to print");
  add_common(solve, common);
  solve->callback([&] { run = [&] { return cmd_series(expr, order, common, true); }; });

  auto* enumerate_cmd = app.add_subcommand("enumerate", "List every structure on the given labels");
  enumerate_cmd->add_option("expr", expr, "Species expression")->required();
  enumerate_cmd->add_option("labels", labels, "Comma-separated labels, or n for 1..n")->required();
  add_common(enumerate_cmd, common, true);
  enumerate_cmd->callback([&] { run = [&] { return cmd_enumerate(expr, labels, common); }; });

  auto* transport_cmd = app.add_subcommand("transport", "Relabel a structure along a bijection");
  transport_cmd->add_option("expr", expr, "Species expression")->required();
  transport_cmd->add_option("structure", structure, "Structure as JSON")->required();
  transport_cmd->add_option("bijection", bijection, "Bijection as 'a->x,b->y,...'")->required();
  add_common(transport_cmd, common);
  transport_cmd->callback([&] { run = [&] { return cmd_transport(expr, structure, bijection, common); }; });

  auto* verify = app.add_subcommand("verify", "Run the built-in identity suite");
  verify->add_option("--case", case_filter, "Run a single case");
  verify->add_option("--order", verify_order, "Cap every series order and enumeration size");
  add_common(verify, common);
  verify->callback([&] { run = [&] { return cmd_verify(case_filter, verify_order, common); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    return run();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
}
