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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "species/enumerate.hpp"
#include "species/errors.hpp"
#include "species/harness.hpp"
#include "species/parser.hpp"
#include "species/semantics.hpp"

using namespace species;

namespace {

/// Collects the first problem found by a criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && problem_.empty()) problem_ = what;
  }
  void equal(const Integer& got, const Integer& want, const std::string& what) {
    expect(got == want, what + ": got " + got.get_str() + ", expected " + want.get_str());
  }
  const std::string& problem() const { return problem_; }

 private:
  std::string problem_;
};

const Environment& env() {
  static const Environment e = parse_defs("A = X*E(A)\nB = 1 + X*B^2\nV = pt(A)\n");
  return e;
}

Integer count_of(const std::string& text, std::size_t n) { return count(egf_of(parse_expr(text), env(), n), n); }

Integer ipow(std::size_t b, std::size_t e) { return power(Integer(static_cast<unsigned long>(b)), e); }

std::string at(const std::string& what, std::size_t n) { return what + " at n=" + std::to_string(n); }

void count_tables(Check& c) {
  const std::vector<std::pair<std::string, std::vector<long>>> tables{
      {"P", {1, 2, 4, 8, 16}},
      {"Gra", {1, 1, 2, 8, 64, 1024}},
      {"Gro", {1, 2, 16, 512, 65536, 33554432}},
      {"C", {0, 1, 1, 2, 6, 24}},
      {"Inv", {1, 1, 2, 4, 10, 26}},
      {"Der", {1, 0, 1, 2, 9, 44}},
      {"End", {1, 1, 4, 27, 256, 3125}},
      {"Part", {1, 1, 2, 5, 15, 52, 203, 877, 4140}},
  };
  for (const auto& [name, values] : tables) {
    for (std::size_t n = 0; n < values.size(); ++n) c.equal(count_of(name, n), values[n], at(name, n));
  }
  Integer fact = 1;
  for (std::size_t n = 0; n <= 12; ++n) {
    if (n > 0) fact *= static_cast<unsigned long>(n);
    c.equal(count_of("S", n), fact, at("S", n));
    c.equal(count_of("L", n), fact, at("L", n));
  }
}

void implicit_equations(Check& c) {
  const auto b = egf_of(name("B"), env(), 12);
  const std::vector<long> head{1, 1, 4, 30, 336};
  for (std::size_t n = 0; n < head.size(); ++n) c.equal(count(b, n), head[n], at("B", n));
  for (std::size_t n = 0; n <= 12; ++n) {
    c.equal(count(b, n), factorial(n) * binomial(2 * n, n) / static_cast<unsigned long>(n + 1), at("B", n));
  }
  const auto a = egf_of(name("A"), env(), 10);
  for (std::size_t n = 1; n <= 10; ++n) c.equal(count(a, n), ipow(n, n - 1), at("A", n));
}

void derived_identities(Check& c) {
  for (std::size_t n = 0; n <= 12; ++n) {
    Rational sum = 0;
    for (std::size_t k = 0; k <= n; ++k) sum += Rational(k % 2 == 0 ? 1 : -1) / Rational(factorial(k));
    Rational d = sum * Rational(factorial(n));
    d.canonicalize();
    c.expect(d.get_den() == 1, at("Der formula not integral", n));
    c.equal(count_of("Der", n), d.get_num(), at("Der", n));
  }
  const auto pa = egf_of(parse_expr("pt(A)"), env(), 10);
  const auto a = egf_of(name("A"), env(), 10);
  for (std::size_t n = 1; n <= 10; ++n) {
    c.equal(count(pa, n), ipow(n, n), at("pt(A)", n));
    const Integer an = count(a, n);
    c.expect(an % static_cast<unsigned long>(n) == 0, at("A not divisible by n", n));
    c.equal(an / static_cast<unsigned long>(n), n == 1 ? Integer(1) : ipow(n, n - 2), at("A/n", n));
  }
  for (const auto& [lhs, rhs] : std::vector<std::pair<std::string, std::string>>{{"End", "S(A)"}, {"V", "Lp(A)"}}) {
    auto r = verify_series({lhs + "=" + rhs, parse_expr(lhs), parse_expr(rhs), env(), 10, 0});
    c.expect(r.passed(), r.name + " differs at n=" + (r.witness ? std::to_string(*r.witness) : r.error));
  }
}

void composition_oracle(Check& c) {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    auto f = oracle::random_counts(rng, 7, false);
    auto g = oracle::random_counts(rng, 7, true);
    auto h = counts(compose(CountSeries::from_counts(f), CountSeries::from_counts(g)));
    auto want = oracle::partitional_composition(f, g, 6);
    for (std::size_t n = 0; n <= 6; ++n) c.equal(h[n], want[n], "compose trial " + std::to_string(trial) + at("", n));
    const Integer x4 = f[4] * g[1] * g[1] * g[1] * g[1] + 6 * f[3] * g[1] * g[1] * g[2] + 4 * f[2] * g[1] * g[3] +
                       3 * f[2] * g[2] * g[2] + f[1] * g[4];
    c.equal(h[4], x4, "x^4 term, trial " + std::to_string(trial));
  }
}

void enumeration_vs_series(Check& c) {
  const std::vector<std::string> catalogue{"O",    "1",     "X",     "E",      "Ep",       "L",     "Lp",
                                           "C",    "S",     "Der",   "Inv",    "End",      "Part",  "P",
                                           "Gra",  "Gro",   "Pk[2]", "Ek[2]",  "A",        "B",     "V",
                                           "S(A)", "L(A)",  "Lp(A)", "E(C)",   "E(Ep)",    "E*Der", "C'",
                                           "C''",  "pt(E)", "pt(A)", "E(X + Ek[2])", "End[>=1]"};
  for (const auto& text : catalogue) {
    const std::size_t max_n = text == "Gro" ? 4 : 5;
    auto r = verify_consistency(text, parse_expr(text), env(), max_n);
    c.expect(r.passed(), text + " enumeration differs from series at n=" +
                             (r.witness ? std::to_string(*r.witness) : r.error));
  }
  auto size = [](const std::string& e, const std::string& labels) {
    return enumerate(parse_expr(e), env(), LabelSet::parse(labels)).size();
  };
  c.expect(size("P", "1,2,3") == 8, "8 subsets of {1,2,3}");
  c.expect(size("Part", "a,b,c") == 5, "5 partitions of {a,b,c}");
  c.expect(size("Gra", "1,2,3") == 8, "8 graphs on {1,2,3}");
}

void functoriality(Check& c) {
  for (const char* text : {"L", "S", "C", "Gra", "P", "C'", "pt(E)"}) {
    auto r = check_functoriality(parse_expr(text), env(), LabelSet::range(4), 100, 7);
    c.expect(r.passed && r.trials == 100, std::string(text) + ": " + r.failure);
  }
}

void permutation_bijections(Check& c) {
  const auto perms = enumerate(parse_expr("S"), {}, LabelSet::range(6));
  c.expect(perms.size() == 720, "720 permutations of [6]");
  std::vector<Integer> by_cycles(7, 0);
  for (const auto& p : perms) {
    c.expect(reassemble(decompose_permutation(p)) == p, "decompose/reassemble round trip on " + render(p));
    auto cycles = permutation_to_cycles(p);
    c.expect(cycles_to_permutation(cycles) == p, "cycle decomposition round trip on " + render(p));
    ++by_cycles[cycles.children.size() - 1];
  }
  Integer total = 0;
  for (std::size_t k = 0; k <= 6; ++k) {
    c.equal(by_cycles[k], count_of("Ek[" + std::to_string(k) + "](C)", 6), "permutations of [6] with " +
                                                                              std::to_string(k) + " cycles");
    total += by_cycles[k];
  }
  c.equal(total, count_of("E(C)", 6), "E(C) on [6]");
}

void robustness(Check& c) {
  auto ee = validate(parse_expr("E(E)"), {});
  c.expect(ee.has(ErrorCode::NonemptyInnerOnEmptySet) || ee.has(ErrorCode::NonzeroConstantTerm), "E(E) accepted");
  auto loop = parse_defs("F = F\n");
  c.expect(validate(name("F"), loop).has(ErrorCode::IllFoundedEquation), "F = F accepted");

  std::vector<Rational> coeffs(6);
  for (std::size_t n = 0; n < coeffs.size(); ++n) coeffs[n] = Rational(1) / Rational(factorial(n));
  coeffs[3] += Rational(1, 7);
  CountSeries perturbed(coeffs);
  bool raised = false;
  try {
    count(perturbed, 3);
  } catch (const Error& e) {
    raised = e.code() == ErrorCode::NonIntegerCount;
  }
  c.expect(raised, "perturbed count did not raise NonIntegerCount");
  c.equal(count(perturbed, 2), 1, "unperturbed coefficient");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, void (*)(Check&)>> criteria{
      {"count tables", count_tables},
      {"implicit equations", implicit_equations},
      {"derived identities", derived_identities},
      {"composition oracle", composition_oracle},
      {"enumeration vs series", enumeration_vs_series},
      {"functoriality", functoriality},
      {"permutation bijections", permutation_bijections},
      {"robustness", robustness},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Check c;
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = c.problem().empty();
    failures += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << "  " << i + 1 << ". " << std::left << std::setw(24) << criteria[i].first
              << std::right << std::fixed << std::setprecision(2) << secs << "s";
    if (!ok) std::cout << "  " << c.problem();
    std::cout << "\n";
  }
  std::cout << criteria.size() - failures << "/" << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
