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

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "species/enumerate.hpp"
#include "species/expr.hpp"
#include "species/semantics.hpp"

namespace species {

/// A claimed species identity lhs = rhs, checked on counts.
struct IdentityCase {
  std::string name;
  Expr lhs;
  Expr rhs;
  Environment env;
  std::size_t series_order = kDefaultOrder;
  std::size_t enum_max_n = 5;
};

enum class CaseStatus { Pass, Fail, Error };

struct VerificationReport {
  std::string name;
  std::string level;  // "series" or "enumerative"
  CaseStatus status = CaseStatus::Pass;
  /// First n where the two sides differ; always set on Fail.
  std::optional<std::size_t> witness;
  std::string lhs_count;
  std::string rhs_count;
  /// Error text when status is Error.
  std::string error;
  double millis = 0.0;

  bool passed() const noexcept { return status == CaseStatus::Pass; }
};

/// Compares the series counts of both sides for every n <= series_order.
/// Throws if either side fails validation.
VerificationReport verify_series(const IdentityCase& c, const EvalOptions& options = {});

/// Compares |enumerate(lhs, [n])| with |enumerate(rhs, [n])| for n <= enum_max_n.
VerificationReport verify_enumerative(const IdentityCase& c, const EnumerateOptions& options = {});

/// Compares |enumerate(e, [n])| with count(egf_of(e), n) for n <= max_n.
VerificationReport verify_consistency(const std::string& name, const Expr& e, const Environment& env,
                                      std::size_t max_n, const EnumerateOptions& options = {});

struct SuiteOptions {
  /// Caps every series order and enumeration size when set.
  std::optional<std::size_t> order;
  /// Runs only the case with exactly this name when nonempty.
  std::string case_filter;
  /// Passed to every series evaluation (fault injection).
  EvalOptions eval;
  bool enumerative = true;
};

/// Names of the built-in catalogue cases, in catalogue order.
std::vector<std::string> suite_case_names();

/// Runs the built-in catalogue. Failures and errors are reported, never
/// thrown. Reports are sorted by (name, level).
std::vector<VerificationReport> paper_suite(const SuiteOptions& options = {});

/// Explains that identities are checked on counts, not as natural
/// isomorphisms.
std::string report_header();

std::string format_reports(const std::vector<VerificationReport>& reports);
/// Byte-stable JSON (no timing).
nlohmann::ordered_json reports_to_json(const std::vector<VerificationReport>& reports);

bool all_passed(const std::vector<VerificationReport>& reports);

}  // namespace species
