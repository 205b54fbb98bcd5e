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

#include "species/harness.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <random>
#include <sstream>

#include "species/parser.hpp"

namespace species {

namespace {

using CountFn = std::function<Integer(std::size_t)>;

class Stopwatch {
 public:
  double millis() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// Compares two count sequences on lo..hi and records the first mismatch.
VerificationReport compare(std::string name, std::string level, std::size_t lo, std::size_t hi, const CountFn& lhs,
                           const CountFn& rhs) {
  Stopwatch clock;
  VerificationReport r{.name = std::move(name), .level = std::move(level)};
  try {
    for (std::size_t n = lo; n <= hi; ++n) {
      Integer a = lhs(n), b = rhs(n);
      if (a != b) {
        r.status = CaseStatus::Fail;
        r.witness = n;
        r.lhs_count = a.get_str();
        r.rhs_count = b.get_str();
        break;
      }
    }
  } catch (const std::exception& e) {
    r.status = CaseStatus::Error;
    r.error = e.what();
  }
  r.millis = clock.millis();
  return r;
}

CountFn series_counts(const Expr& e, const Environment& env, std::size_t order, const EvalOptions& options) {
  auto s = std::make_shared<CountSeries>(egf_of(e, env, order, options));
  return [s](std::size_t n) { return count(*s, n); };
}

CountFn enumeration_counts(const Expr& e, const Environment& env, const EnumerateOptions& options) {
  return [=](std::size_t n) {
    return Integer(static_cast<unsigned long>(enumerate(e, env, LabelSet::range(n), options).size()));
  };
}

void require_valid(const Expr& e, const Environment& env, std::size_t order) {
  auto report = validate(e, env, order);
  if (!report.ok()) {
    const auto& f = report.failures.front();
    throw Error(f.code, f.message);
  }
}

}  // namespace

VerificationReport verify_series(const IdentityCase& c, const EvalOptions& options) {
  require_valid(c.lhs, c.env, c.series_order);
  require_valid(c.rhs, c.env, c.series_order);
  auto lhs = egf_of(c.lhs, c.env, c.series_order, options);
  auto rhs = egf_of(c.rhs, c.env, c.series_order, options);
  return compare(
      c.name, "series", 0, c.series_order, [&](std::size_t n) { return count(lhs, n); },
      [&](std::size_t n) { return count(rhs, n); });
}

VerificationReport verify_enumerative(const IdentityCase& c, const EnumerateOptions& options) {
  return compare(c.name, "enumerative", 0, c.enum_max_n, enumeration_counts(c.lhs, c.env, options),
                 enumeration_counts(c.rhs, c.env, options));
}

VerificationReport verify_consistency(const std::string& name, const Expr& e, const Environment& env, std::size_t max_n,
                                      const EnumerateOptions& options) {
  return compare(name, "enumerative", 0, max_n, enumeration_counts(e, env, options),
                 [&, s = egf_of(e, env, max_n)](std::size_t n) { return count(s, n); });
}

namespace {

struct SuiteCase {
  std::string name;
  std::function<VerificationReport(const SuiteOptions&)> series;
  std::function<VerificationReport(const SuiteOptions&)> enumerative;
};

std::size_t capped(std::size_t n, const SuiteOptions& o) { return o.order ? std::min(n, *o.order) : n; }

const Environment& suite_env() {
  static const Environment env = parse_defs(
      "A = X*E(A)      # rooted trees\n"
      "B = 1 + X*B^2   # binary trees\n");
  return env;
}

/// A species with known counts (a table or a closed form) on
/// lo..series_hi. The enumerative check compares exhaustive counts with the
/// same reference on lo..enum_hi.
SuiteCase reference_case(std::string name, const std::string& expr, std::size_t lo, std::size_t series_hi,
                         std::size_t enum_hi, CountFn reference) {
  const Expr e = parse_expr(expr);
  SuiteCase c{name};
  c.series = [=](const SuiteOptions& o) {
    const std::size_t hi = capped(series_hi, o);
    if (hi < lo) return compare(name, "series", 1, 0, reference, reference);
    return compare(name, "series", lo, hi, series_counts(e, suite_env(), hi, o.eval), reference);
  };
  c.enumerative = [=](const SuiteOptions& o) {
    return compare(name, "enumerative", lo, capped(enum_hi, o), enumeration_counts(e, suite_env(), {}), reference);
  };
  return c;
}

SuiteCase table_case(std::string name, const std::string& expr, std::vector<long> table, std::size_t enum_hi = 5) {
  std::vector<Integer> values(table.begin(), table.end());
  const std::size_t hi = values.size() - 1;
  return reference_case(std::move(name), expr, 0, hi, std::min(enum_hi, hi),
                        [values](std::size_t n) { return values.at(n); });
}

SuiteCase identity_case(std::string name, const std::string& lhs, const std::string& rhs, std::size_t order = 12,
                        std::size_t enum_max_n = 5) {
  IdentityCase id{std::move(name), parse_expr(lhs), parse_expr(rhs), suite_env(), order, enum_max_n};
  SuiteCase c{id.name};
  c.series = [id](const SuiteOptions& o) {
    IdentityCase local = id;
    local.series_order = capped(id.series_order, o);
    return verify_series(local, o.eval);
  };
  c.enumerative = [id](const SuiteOptions& o) {
    IdentityCase local = id;
    local.enum_max_n = capped(id.enum_max_n, o);
    return verify_enumerative(local);
  };
  return c;
}

Integer ipow(std::size_t base, std::size_t e) { return power(Integer(static_cast<unsigned long>(base)), e); }

/// Faà di Bruno at degree 4, checked on fixed pseudo-random integer series.
VerificationReport faa_di_bruno(const SuiteOptions& o) {
  const std::string name = "compose-x^4";
  if (capped(4, o) < 4) return compare(name, "series", 1, 0, nullptr, nullptr);
  std::mt19937 rng(4);
  std::uniform_int_distribution<int> digit(-5, 9);
  std::size_t trial = 0;
  auto fresh = [&](bool zero_constant) {
    std::vector<Integer> c(7);
    for (std::size_t n = 0; n < c.size(); ++n) c[n] = (n == 0 && zero_constant) ? 0 : digit(rng);
    return c;
  };
  std::vector<std::pair<std::vector<Integer>, std::vector<Integer>>> pairs;
  for (; trial < 20; ++trial) pairs.emplace_back(fresh(false), fresh(true));
  auto composed = [&](std::size_t i) {
    const auto& [f, g] = pairs[i];
    return count(compose(CountSeries::from_counts(f), CountSeries::from_counts(g)), 4);
  };
  auto expansion = [&](std::size_t i) {
    const auto& [f, g] = pairs[i];
    return Integer(f[4] * g[1] * g[1] * g[1] * g[1] + 6 * f[3] * g[1] * g[1] * g[2] + 4 * f[2] * g[1] * g[3] +
                   3 * f[2] * g[2] * g[2] + f[1] * g[4]);
  };
  // The witness of this case is the trial index; the degree is always 4.
  return compare(name, "series", 0, pairs.size() - 1, composed, expansion);
}

VerificationReport tree_counts(const SuiteOptions& o) {
  const std::size_t hi = capped(10, o);
  const Expr a = name("A");
  auto arbo = series_counts(a, suite_env(), hi, o.eval);
  return compare(
      "trees=n^(n-2)", "series", 1, hi,
      [&](std::size_t n) {
        Integer an = arbo(n);
        if (an % static_cast<unsigned long>(n) != 0) {
          throw Error(ErrorCode::NonIntegerCount, "a_" + std::to_string(n) + " is not divisible by n");
        }
        return Integer(an / static_cast<unsigned long>(n));
      },
      [](std::size_t n) { return n == 1 ? Integer(1) : ipow(n, n - 2); });
}

Integer derangement_formula(std::size_t n) {
  Rational sum = 0;
  Integer fact = 1;
  for (std::size_t k = 0; k <= n; ++k) {
    if (k > 0) fact *= static_cast<unsigned long>(k);
    Rational term(Integer(1), fact);
    sum += k % 2 == 0 ? term : Rational(-term);
  }
  Rational d = sum * Rational(factorial(n));
  d.canonicalize();
  return d.get_num();
}

std::vector<SuiteCase> catalogue() {
  std::vector<SuiteCase> cases;
  auto fact = [](std::size_t n) { return factorial(n); };

  cases.push_back(table_case("table:P", "P", {1, 2, 4, 8, 16}));
  cases.push_back(table_case("table:Gra", "Gra", {1, 1, 2, 8, 64, 1024}));
  cases.push_back(table_case("table:Gro", "Gro", {1, 2, 16, 512, 65536, 33554432}, 4));
  cases.push_back(reference_case("table:S", "S", 0, 12, 5, fact));
  cases.push_back(reference_case("table:L", "L", 0, 12, 5, fact));
  cases.push_back(table_case("table:C", "C", {0, 1, 1, 2, 6, 24}));
  cases.push_back(table_case("table:Inv", "Inv", {1, 1, 2, 4, 10, 26}));
  cases.push_back(table_case("table:Der", "Der", {1, 0, 1, 2, 9, 44}));
  cases.push_back(table_case("table:End", "End", {1, 1, 4, 27, 256, 3125}));
  cases.push_back(table_case("table:Part", "Part", {1, 1, 2, 5, 15, 52, 203, 877, 4140}));
  cases.push_back(table_case("table:O", "O", {0, 0, 0, 0, 0, 0}));
  cases.push_back(table_case("table:E", "E", {1, 1, 1, 1, 1, 1}));
  cases.push_back(table_case("table:1", "1", {1, 0, 0, 0, 0, 0}));
  cases.push_back(table_case("table:X", "X", {0, 1, 0, 0, 0, 0}));
  cases.push_back(reference_case("table:Pk[2]", "Pk[2]", 0, 12, 5, [](std::size_t n) { return binomial(n, 2); }));

  cases.push_back(identity_case("S=E*Der", "S", "E*Der"));
  cases.push_back(identity_case("Part=E(Ep)", "Part", "E(Ep)"));
  cases.push_back(identity_case("S=E(C)", "S", "E(C)"));
  cases.push_back(identity_case("Inv=E(X+Ek[2])", "Inv", "E(X + Ek[2])"));
  cases.push_back(identity_case("P=E*E", "P", "E*E"));
  cases.push_back(identity_case("B=1+X*B^2", "B", "1 + X*B^2"));
  cases.push_back(identity_case("A=X*E(A)", "A", "X*E(A)"));
  cases.push_back(identity_case("End=S(A)", "End", "S(A)", 10));
  cases.push_back(identity_case("End=L(A)", "End", "L(A)", 10));
  cases.push_back(identity_case("C'=L", "C'", "L"));
  cases.push_back(identity_case("pt(A)=Lp(A)", "pt(A)", "Lp(A)", 10));
  cases.push_back(identity_case("End[>=1]=pt(A)", "End[>=1]", "pt(A)", 10));

  cases.push_back(reference_case("B=n!Catalan", "B", 0, 12, 5,
                                 [](std::size_t n) { return Integer(factorial(n) * binomial(2 * n, n) / (n + 1)); }));
  cases.push_back(reference_case("A=n^(n-1)", "A", 1, 10, 5, [](std::size_t n) { return ipow(n, n - 1); }));
  cases.push_back(reference_case("pt(A)=n^n", "pt(A)", 1, 10, 5, [](std::size_t n) { return ipow(n, n); }));
  cases.push_back(reference_case("Der=alternating-sum", "Der", 0, 12, 5, derangement_formula));
  cases.push_back({"trees=n^(n-2)", tree_counts, nullptr});
  cases.push_back({"compose-x^4", faa_di_bruno, nullptr});
  return cases;
}

}  // namespace

std::vector<std::string> suite_case_names() {
  std::vector<std::string> names;
  for (const auto& c : catalogue()) names.push_back(c.name);
  return names;
}

std::vector<VerificationReport> paper_suite(const SuiteOptions& options) {
  std::vector<VerificationReport> reports;
  for (const auto& c : catalogue()) {
    if (!options.case_filter.empty() && c.name != options.case_filter) continue;
    auto guarded = [&](const auto& run, const char* level) {
      Stopwatch clock;
      try {
        reports.push_back(run(options));
        reports.back().millis = clock.millis();
      } catch (const std::exception& e) {
        reports.push_back({.name = c.name, .level = level, .status = CaseStatus::Error, .error = e.what()});
      }
    };
    guarded(c.series, "series");
    if (options.enumerative && c.enumerative) guarded(c.enumerative, "enumerative");
  }
  std::stable_sort(reports.begin(), reports.end(), [](const auto& a, const auto& b) {
    return std::tie(a.name, a.level) < std::tie(b.name, b.level);
  });
  return reports;
}

std::string report_header() {
  return "Identities are verified on structure counts (series coefficients and exhaustive enumeration), "
         "not as natural isomorphisms.";
}

namespace {

std::string_view status_text(CaseStatus s) {
  switch (s) {
    case CaseStatus::Pass: return "pass";
    case CaseStatus::Fail: return "FAIL";
    case CaseStatus::Error: return "ERROR";
  }
  return "?";
}

}  // namespace

std::string format_reports(const std::vector<VerificationReport>& reports) {
  std::ostringstream out;
  out << report_header() << "\n\n";
  out << std::left << std::setw(24) << "case" << std::setw(13) << "level" << std::setw(7) << "status"
      << "detail\n";
  for (const auto& r : reports) {
    out << std::left << std::setw(24) << r.name << std::setw(13) << r.level << std::setw(7) << status_text(r.status);
    if (r.status == CaseStatus::Fail) {
      out << "n=" << *r.witness << ": " << r.lhs_count << " vs " << r.rhs_count;
    } else if (r.status == CaseStatus::Error) {
      out << r.error;
    } else {
      out << std::fixed << std::setprecision(1) << r.millis << " ms";
    }
    out << "\n";
  }
  const auto failed = std::count_if(reports.begin(), reports.end(), [](const auto& r) { return !r.passed(); });
  out << "\n" << reports.size() - failed << "/" << reports.size() << " checks passed\n";
  return out.str();
}

nlohmann::ordered_json reports_to_json(const std::vector<VerificationReport>& reports) {
  nlohmann::ordered_json j;
  j["note"] = report_header();
  j["passed"] = all_passed(reports);
  nlohmann::ordered_json cases = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json c;
    c["name"] = r.name;
    c["level"] = r.level;
    c["status"] = r.status == CaseStatus::Pass ? "pass" : r.status == CaseStatus::Fail ? "fail" : "error";
    if (r.witness) {
      c["witness"] = *r.witness;
      c["lhs"] = r.lhs_count;
      c["rhs"] = r.rhs_count;
    }
    if (!r.error.empty()) c["error"] = r.error;
    cases.push_back(std::move(c));
  }
  j["cases"] = std::move(cases);
  return j;
}

bool all_passed(const std::vector<VerificationReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed(); });
}

}  // namespace species
