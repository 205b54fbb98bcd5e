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

#include <random>

#include "oracles.hpp"
#include "species/errors.hpp"
#include "species/series.hpp"

using namespace species;

namespace {

CountSeries series_of(const std::vector<Integer>& counts) { return CountSeries::from_counts(counts); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidStructure;
}

}  // namespace

TEST_CASE("integer helpers") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(12) == 479001600);
  CHECK(binomial(6, 2) == 15);
  CHECK(binomial(3, 5) == 0);
  CHECK(power(Integer(2), 144) == Integer("22300745198530623141535718272648361505980416"));
}

TEST_CASE("counts round-trip through coefficients") {
  std::vector<Integer> c{1, 2, 16, 512, 65536};
  auto s = series_of(c);
  CHECK(s.order() == 4);
  CHECK(coefficient(s, 2) == Rational(8));
  CHECK(counts(s) == c);
  CHECK(s.truncated(2).order() == 2);
  CHECK(code_of([&] { coefficient(s, 5); }) == ErrorCode::OrderExceeded);
}

TEST_CASE("non-integer counts are reported") {
  CountSeries s({Rational(0), Rational(1, 3)});
  CHECK(code_of([&] { count(s, 1); }) == ErrorCode::NonIntegerCount);
  CountSeries half({Rational(1), Rational(0), Rational(1, 2)});
  CHECK(count(half, 2) == 1);
}

TEST_CASE("multiplication is the binomial convolution of counts") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    auto f = oracle::random_counts(rng, 9, false);
    auto g = oracle::random_counts(rng, 9, false);
    CHECK(counts(series_of(f) * series_of(g)) == oracle::binomial_convolution(f, g));
  }
}

TEST_CASE("product order is the smaller input order") {
  auto a = CountSeries::constant(1, 5), b = CountSeries::constant(2, 3);
  CHECK((a * b).order() == 3);
  CHECK((a + b).order() == 3);
}

TEST_CASE("composition is the partitional sum") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    auto f = oracle::random_counts(rng, 8, false);
    auto g = oracle::random_counts(rng, 8, true);
    auto h = counts(compose(series_of(f), series_of(g)));
    CHECK(std::vector<Integer>(h.begin(), h.begin() + 7) == oracle::partitional_composition(f, g, 6));
  }
}

TEST_CASE("composition requires a zero constant term") {
  auto g = CountSeries::constant(1, 4);
  CHECK(code_of([&] { compose(g, g); }) == ErrorCode::NonzeroConstantTerm);
}

TEST_CASE("exp(x) composed with itself gives Bell numbers") {
  auto e = CountSeries::from_count_fn(8, [](std::size_t) { return Integer(1); });
  auto ep = CountSeries::from_count_fn(8, [](std::size_t n) { return Integer(n == 0 ? 0 : 1); });
  auto bell = counts(compose(e, ep));
  for (std::size_t n = 0; n <= 8; ++n) CHECK(bell[n] == oracle::set_partitions(n));
}

TEST_CASE("pointing is x times the derivative") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto f = series_of(oracle::random_counts(rng, 8, false));
    auto xd = CountSeries::singleton(6) * derive(f);
    CHECK(agree_up_to(point(f), xd, 6));
    auto pc = counts(point(f));
    auto fc = counts(f);
    for (std::size_t n = 0; n < fc.size(); ++n) CHECK(pc[n] == fc[n] * static_cast<unsigned long>(n));
  }
  CHECK(code_of([] { derive(CountSeries::constant(1, 0)); }) == ErrorCode::OrderExceeded);
}

TEST_CASE("division inverts multiplication") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto f = series_of(oracle::random_counts(rng, 7, false));
    auto g = oracle::random_counts(rng, 7, false);
    if (g[0] == 0) g[0] = 1;
    CHECK(divide(f, series_of(g)) * series_of(g) == f);
  }
  CHECK(code_of([] { divide(CountSeries::constant(1, 3), CountSeries::singleton(3)); }) ==
        ErrorCode::ZeroConstantDivisor);
}

TEST_CASE("mask keeps the selected degrees") {
  auto f = series_of({1, 1, 2, 6, 24});
  CHECK(counts(mask(f, [](std::size_t n) { return n >= 2; })) == std::vector<Integer>{0, 0, 2, 6, 24});
}

TEST_CASE("solve_system: binary trees") {
  auto rhs = [](const SeriesMap& m, std::size_t n) {
    const auto& b = m.at("B");
    return CountSeries::constant(1, n) + CountSeries::singleton(n) * b * b;
  };
  auto sol = solve_system({{"B", rhs}}, 12);
  const auto& b = sol.at("B");
  for (std::size_t n = 0; n <= 12; ++n) CHECK(count(b, n) == oracle::binary_trees(n));

  SUBCASE("the solution is a fixed point") { CHECK(rhs(sol, 12) == b); }
  SUBCASE("extending the order keeps the prefix") {
    auto longer = solve_system({{"B", rhs}}, 15).at("B");
    CHECK(longer.truncated(12) == b);
  }
}

TEST_CASE("solve_system: mutual recursion") {
  // Even = 1 + X*Odd, Odd = X*Even: lists of even and odd length.
  std::vector<SeriesEquation> eqs{
      {"Even", [](const SeriesMap& m, std::size_t n) {
         return CountSeries::constant(1, n) + CountSeries::singleton(n) * m.at("Odd");
       }},
      {"Odd", [](const SeriesMap& m, std::size_t n) { return CountSeries::singleton(n) * m.at("Even"); }},
  };
  auto sol = solve_system(eqs, 10);
  for (std::size_t n = 0; n <= 10; ++n) {
    CHECK(count(sol.at("Even"), n) == (n % 2 == 0 ? factorial(n) : Integer(0)));
    CHECK(count(sol.at("Odd"), n) == (n % 2 == 1 ? factorial(n) : Integer(0)));
  }
}

TEST_CASE("solve_system rejects equations without a unique solution") {
  auto identity = [](const SeriesMap& m, std::size_t) { return m.at("F"); };
  CHECK(code_of([&] { solve_system({{"F", identity}}, 6); }) == ErrorCode::IllFoundedEquation);
  auto shifted = [](const SeriesMap& m, std::size_t n) {
    return CountSeries::from_count_fn(n, [](std::size_t) { return Integer(1); }) * m.at("G");
  };
  CHECK(code_of([&] { solve_system({{"G", shifted}}, 6); }) == ErrorCode::IllFoundedEquation);
}
