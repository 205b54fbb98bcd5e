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

#include "species/series.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>

#include "species/errors.hpp"

namespace species {

Integer factorial(std::size_t n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Integer binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Integer power(const Integer& base, std::size_t exponent) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

CountSeries::CountSeries() : coeffs_(1) {}

CountSeries::CountSeries(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) throw std::invalid_argument("CountSeries needs at least one coefficient");
  for (auto& c : coeffs_) c.canonicalize();
}

CountSeries CountSeries::zero(std::size_t order) { return CountSeries(std::vector<Rational>(order + 1)); }

CountSeries CountSeries::constant(const Rational& value, std::size_t order) {
  std::vector<Rational> c(order + 1);
  c[0] = value;
  return CountSeries(std::move(c));
}

CountSeries CountSeries::singleton(std::size_t order) {
  std::vector<Rational> c(order + 1);
  if (order >= 1) c[1] = 1;
  return CountSeries(std::move(c));
}

CountSeries CountSeries::from_counts(std::span<const Integer> counts) {
  std::vector<Rational> c;
  c.reserve(counts.size());
  Integer fact = 1;
  for (std::size_t n = 0; n < counts.size(); ++n) {
    if (n > 0) fact *= static_cast<unsigned long>(n);
    c.emplace_back(counts[n], fact);
  }
  return CountSeries(std::move(c));
}

CountSeries CountSeries::from_count_fn(std::size_t order, const std::function<Integer(std::size_t)>& f) {
  std::vector<Integer> counts;
  counts.reserve(order + 1);
  for (std::size_t n = 0; n <= order; ++n) counts.push_back(f(n));
  return from_counts(counts);
}

CountSeries CountSeries::truncated(std::size_t order) const {
  if (order > this->order()) {
    throw Error(ErrorCode::OrderExceeded, "cannot truncate order " + std::to_string(this->order()) +
                                              " series to order " + std::to_string(order));
  }
  return CountSeries(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + order + 1));
}

const Rational& coefficient(const CountSeries& s, std::size_t n) {
  if (n > s.order()) {
    throw Error(ErrorCode::OrderExceeded,
                "coefficient " + std::to_string(n) + " requested from order " + std::to_string(s.order()) + " series");
  }
  return s.coefficients()[n];
}

Integer count(const CountSeries& s, std::size_t n) {
  Rational scaled = coefficient(s, n) * Rational(factorial(n));
  scaled.canonicalize();
  if (scaled.get_den() != 1) {
    throw Error(ErrorCode::NonIntegerCount,
                "n! a_n = " + scaled.get_str() + " at n = " + std::to_string(n) + " is not an integer");
  }
  return scaled.get_num();
}

std::vector<Integer> counts(const CountSeries& s) {
  std::vector<Integer> out;
  out.reserve(s.order() + 1);
  for (std::size_t n = 0; n <= s.order(); ++n) out.push_back(count(s, n));
  return out;
}

bool agree_up_to(const CountSeries& a, const CountSeries& b, std::size_t n) {
  if (a.order() < n || b.order() < n) return false;
  auto ca = a.coefficients();
  auto cb = b.coefficients();
  return std::equal(ca.begin(), ca.begin() + n + 1, cb.begin());
}

CountSeries add(const CountSeries& f, const CountSeries& g) {
  const std::size_t order = std::min(f.order(), g.order());
  std::vector<Rational> c(order + 1);
  for (std::size_t n = 0; n <= order; ++n) c[n] = f.coefficients()[n] + g.coefficients()[n];
  return CountSeries(std::move(c));
}

CountSeries multiply(const CountSeries& f, const CountSeries& g) {
  const std::size_t order = std::min(f.order(), g.order());
  auto a = f.coefficients();
  auto b = g.coefficients();
  std::vector<Rational> c(order + 1);
  for (std::size_t i = 0; i <= order; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; i + j <= order; ++j) {
      if (sgn(b[j]) != 0) c[i + j] += a[i] * b[j];
    }
  }
  return CountSeries(std::move(c));
}

CountSeries compose(const CountSeries& f, const CountSeries& g) {
  if (sgn(g.coefficients()[0]) != 0) {
    throw Error(ErrorCode::NonzeroConstantTerm,
                "inner series has constant term " + g.coefficients()[0].get_str());
  }
  const std::size_t order = std::min(f.order(), g.order());
  const CountSeries inner = g.truncated(order);
  // Horner: f_0 + g (f_1 + g (f_2 + ...)); g^k starts at degree k, so
  // terms beyond the order vanish after truncation.
  CountSeries acc = CountSeries::constant(f.coefficients()[order], order);
  for (std::size_t k = order; k-- > 0;) {
    acc = add(multiply(acc, inner), CountSeries::constant(f.coefficients()[k], order));
  }
  return acc;
}

CountSeries derive(const CountSeries& f) {
  if (f.order() == 0) throw Error(ErrorCode::OrderExceeded, "cannot differentiate an order 0 series");
  std::vector<Rational> c(f.order());
  for (std::size_t n = 0; n < f.order(); ++n) {
    c[n] = f.coefficients()[n + 1] * static_cast<unsigned long>(n + 1);
  }
  return CountSeries(std::move(c));
}

CountSeries point(const CountSeries& f) {
  std::vector<Rational> c(f.order() + 1);
  for (std::size_t n = 1; n <= f.order(); ++n) c[n] = f.coefficients()[n] * static_cast<unsigned long>(n);
  return CountSeries(std::move(c));
}

CountSeries divide(const CountSeries& f, const CountSeries& g) {
  auto b = g.coefficients();
  if (sgn(b[0]) == 0) throw Error(ErrorCode::ZeroConstantDivisor, "divisor has constant term 0");
  const std::size_t order = std::min(f.order(), g.order());
  std::vector<Rational> q(order + 1);
  for (std::size_t n = 0; n <= order; ++n) {
    Rational r = f.coefficients()[n];
    for (std::size_t k = 1; k <= n; ++k) r -= b[k] * q[n - k];
    q[n] = r / b[0];
  }
  return CountSeries(std::move(q));
}

CountSeries mask(const CountSeries& f, const std::function<bool(std::size_t)>& keep) {
  std::vector<Rational> c(f.coefficients().begin(), f.coefficients().end());
  for (std::size_t n = 0; n < c.size(); ++n) {
    if (!keep(n)) c[n] = 0;
  }
  return CountSeries(std::move(c));
}

namespace {

SeriesMap evaluate_pass(const std::vector<SeriesEquation>& equations, const SeriesMap& current,
                        std::size_t order) {
  SeriesMap next;
  for (const auto& eq : equations) {
    CountSeries value = eq.rhs(current, order);
    if (value.order() < order) {
      throw Error(ErrorCode::IllFoundedEquation, "right-hand side of " + eq.name + " needs coefficients beyond order " +
                                                     std::to_string(order));
    }
    next.insert_or_assign(eq.name, value.truncated(order));
  }
  return next;
}

bool same(const SeriesMap& a, const SeriesMap& b) { return a == b; }

/// Iterates from `start`; returns the fixed point or nothing when the
/// iterates fail to settle within the pass budget.
std::optional<SeriesMap> iterate(const std::vector<SeriesEquation>& equations, SeriesMap start, std::size_t order,
                                 std::size_t max_passes) {
  SeriesMap current = std::move(start);
  for (std::size_t pass = 0; pass < max_passes; ++pass) {
    SeriesMap next = evaluate_pass(equations, current, order);
    if (same(next, current)) return next;
    current = std::move(next);
  }
  return std::nullopt;
}

SeriesMap perturbed(const SeriesMap& base, bool constant_term) {
  SeriesMap out;
  for (const auto& [name, s] : base) {
    std::vector<Rational> c(s.coefficients().begin(), s.coefficients().end());
    for (std::size_t n = constant_term ? 0 : 1; n < c.size(); ++n) c[n] += 1;
    out.insert_or_assign(name, CountSeries(std::move(c)));
  }
  return out;
}

}  // namespace

SeriesMap solve_system(const std::vector<SeriesEquation>& equations, std::size_t order) {
  SeriesMap zero;
  for (const auto& eq : equations) {
    if (!zero.emplace(eq.name, CountSeries::zero(order)).second) {
      throw Error(ErrorCode::DuplicateName, "equation for " + eq.name + " given twice");
    }
  }
  const std::size_t passes = std::max<std::size_t>(1, equations.size()) * (order + 2);

  auto describe = [&] {
    std::string names;
    for (const auto& eq : equations) names += (names.empty() ? "" : ", ") + eq.name;
    return names;
  };

  auto solution = iterate(equations, zero, order, passes);
  if (!solution) {
    throw Error(ErrorCode::IllFoundedEquation,
                "iteration for {" + describe() + "} did not stabilize within " + std::to_string(passes) + " passes");
  }

  // A second start must land on the same point for the solution to be unique.
  std::optional<SeriesMap> check;
  try {
    check = iterate(equations, perturbed(*solution, true), order, passes);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NonzeroConstantTerm && e.code() != ErrorCode::NonemptyInnerOnEmptySet) throw;
    check = iterate(equations, perturbed(*solution, false), order, passes);
  }
  if (!check || !same(*check, *solution)) {
    throw Error(ErrorCode::IllFoundedEquation, "system {" + describe() + "} does not determine a unique solution");
  }
  return *solution;
}

}  // namespace species
