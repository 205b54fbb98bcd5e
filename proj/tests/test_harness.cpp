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

#include <doctest.h>

#include <algorithm>

#include "species/harness.hpp"
#include "species/parser.hpp"

using namespace species;

namespace {

const VerificationReport* find(const std::vector<VerificationReport>& v, const std::string& name,
                               const std::string& level) {
  for (const auto& r : v)
    if (r.name == name && r.level == level) return &r;
  return nullptr;
}

}  // namespace

TEST_CASE("the built-in suite passes") {
  auto reports = paper_suite();
  CHECK(all_passed(reports));
  for (const auto& r : reports) CHECK_MESSAGE(r.passed(), r.name, " ", r.level, " ", r.error);

  const auto names = suite_case_names();
  for (const auto& n : names) CHECK(find(reports, n, "series") != nullptr);
  CHECK(std::is_sorted(reports.begin(), reports.end(), [](const auto& a, const auto& b) {
    return std::tie(a.name, a.level) < std::tie(b.name, b.level);
  }));
}

TEST_CASE("case filter and order cap") {
  auto one = paper_suite({.case_filter = "C'=L"});
  REQUIRE(one.size() == 2);
  CHECK(all_passed(one));

  auto trivial = paper_suite({.order = 0});
  CHECK(all_passed(trivial));
  CHECK(paper_suite({.case_filter = "no such case"}).empty());
}

TEST_CASE("injected faults are detected with a witness") {
  SuiteOptions options{.enumerative = false};
  options.eval.count_overrides[PrimitiveKind::Derangement][4] = 10;
  auto reports = paper_suite(options);
  std::vector<std::string> failed;
  for (const auto& r : reports) {
    if (r.passed()) continue;
    failed.push_back(r.name);
    CHECK(r.status == CaseStatus::Fail);
    REQUIRE(r.witness.has_value());
    CHECK(*r.witness == 4);
  }
  CHECK(failed == std::vector<std::string>{"Der=alternating-sum", "S=E*Der", "table:Der"});
}

TEST_CASE("single identities") {
  Environment env;
  IdentityCase wrong{"S=P", parse_expr("S"), parse_expr("P"), env, 6, 4};
  auto r = verify_series(wrong);
  CHECK(r.status == CaseStatus::Fail);
  CHECK(r.witness == 1);
  CHECK(r.lhs_count == "1");
  CHECK(r.rhs_count == "2");
  auto e = verify_enumerative(wrong);
  CHECK(e.level == "enumerative");
  CHECK(e.witness == 1);

  IdentityCase right{"S=L", parse_expr("S"), parse_expr("L"), env, 12, 5};
  CHECK(verify_series(right).passed());
  CHECK(verify_enumerative(right).passed());

  IdentityCase broken{"E(E)", parse_expr("E(E)"), parse_expr("E"), env};
  CHECK_THROWS_AS(verify_series(broken), Error);

  CHECK(verify_consistency("Part", parse_expr("Part"), env, 5).passed());
}

TEST_CASE("reports render as text and stable JSON") {
  auto reports = paper_suite({.case_filter = "table:Der"});
  const std::string text = format_reports(reports);
  CHECK(text.find(report_header()) != std::string::npos);
  CHECK(text.find("2/2 checks passed") != std::string::npos);

  auto again = paper_suite({.case_filter = "table:Der"});
  CHECK(reports_to_json(reports).dump() == reports_to_json(again).dump());
  CHECK(reports_to_json(reports).dump().find("millis") == std::string::npos);
  CHECK(reports_to_json(reports)["passed"] == true);
}
