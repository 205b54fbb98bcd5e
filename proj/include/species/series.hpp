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
#include <map>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace species {

using Integer = mpz_class;
using Rational = mpq_class;

/// Default truncation order for series computations.
inline constexpr std::size_t kDefaultOrder = 12;

Integer factorial(std::size_t n);
Integer binomial(std::size_t n, std::size_t k);
Integer power(const Integer& base, std::size_t exponent);

/// Truncated exponential generating series a_0 + a_1 x + ... + a_N x^N.
///
/// Coefficients are the ordinary ones (a_n = f_n / n!), kept as exact
/// rationals in lowest terms. Values are immutable; every operation returns a
/// fresh series.
class CountSeries {
 public:
  /// The zero series of order 0.
  CountSeries();

  /// Takes ownership of a_0..a_N. Throws std::invalid_argument when empty.
  explicit CountSeries(std::vector<Rational> coefficients);

  static CountSeries zero(std::size_t order);
  static CountSeries constant(const Rational& value, std::size_t order);
  /// The series x (one structure on singletons).
  static CountSeries singleton(std::size_t order);
  /// Builds a series from structure counts f_0..f_N.
  static CountSeries from_counts(std::span<const Integer> counts);
  /// Builds a series from a count generator n -> f_n for 0 <= n <= order.
  static CountSeries from_count_fn(std::size_t order, const std::function<Integer(std::size_t)>& f);

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  std::span<const Rational> coefficients() const noexcept { return coeffs_; }

  /// Drops coefficients above `order`. Requires order <= this->order().
  CountSeries truncated(std::size_t order) const;

  /// Exact equality of order and all coefficients.
  friend bool operator==(const CountSeries& a, const CountSeries& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<Rational> coeffs_;
};

/// a_n. Throws OrderExceeded when n > order.
const Rational& coefficient(const CountSeries& s, std::size_t n);

/// n! a_n, the number of structures on an n-set. Throws NonIntegerCount when
/// n! a_n is not an integer.
Integer count(const CountSeries& s, std::size_t n);

/// f_0..f_order.
std::vector<Integer> counts(const CountSeries& s);

/// True when both series are defined and equal on every coefficient <= n.
bool agree_up_to(const CountSeries& a, const CountSeries& b, std::size_t n);

CountSeries add(const CountSeries& f, const CountSeries& g);

/// Cauchy product; the result order is the smaller input order.
CountSeries multiply(const CountSeries& f, const CountSeries& g);

/// f(g(x)). Throws NonzeroConstantTerm unless g has constant term 0.
CountSeries compose(const CountSeries& f, const CountSeries& g);

/// d/dx. Result order is f.order() - 1; throws OrderExceeded at order 0.
CountSeries derive(const CountSeries& f);

/// x f'(x), i.e. counts n f_n. Keeps the order of f.
CountSeries point(const CountSeries& f);

/// q with g q = f. Throws ZeroConstantDivisor when g has constant term 0.
CountSeries divide(const CountSeries& f, const CountSeries& g);

/// Keeps the coefficients whose degree satisfies `keep`, zeroing the rest.
CountSeries mask(const CountSeries& f, const std::function<bool(std::size_t)>& keep);

inline CountSeries operator+(const CountSeries& f, const CountSeries& g) { return add(f, g); }
inline CountSeries operator*(const CountSeries& f, const CountSeries& g) { return multiply(f, g); }

using SeriesMap = std::map<std::string, CountSeries>;

/// One equation name = rhs(current values), the right-hand side being
/// evaluated at the requested order against the current iterate of every name.
struct SeriesEquation {
  std::string name;
  std::function<CountSeries(const SeriesMap&, std::size_t)> rhs;
};

/// Solves a system of implicit series equations to order N by fixed-point
/// iteration from the zero series.
///
/// The iteration stops when two consecutive iterates agree on every
/// coefficient <= N. It is then repeated from a perturbed start; both runs
/// must reach the same point, otherwise the system does not determine a
/// unique solution. At most k (N + 2) passes are made for k equations.
/// Throws IllFoundedEquation on failure and propagates errors raised by the
/// right-hand sides.
SeriesMap solve_system(const std::vector<SeriesEquation>& equations, std::size_t order);

}  // namespace species
