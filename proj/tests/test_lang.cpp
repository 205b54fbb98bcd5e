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
#include "species/parser.hpp"
#include "species/semantics.hpp"

using namespace species;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidStructure;
}

Integer count_of(const std::string& text, std::size_t n, const Environment& env = {}) {
  return count(egf_of(parse_expr(text), env, n), n);
}

Expr random_expr(std::mt19937& rng, int depth) {
  static const std::vector<Expr> leaves{
      primitive(PrimitiveKind::Singleton), primitive(PrimitiveKind::Set),    primitive(PrimitiveKind::NonemptySet),
      primitive(PrimitiveKind::Cycle),     primitive(PrimitiveKind::List),   primitive(PrimitiveKind::KSubset, 2),
      primitive(PrimitiveKind::KSet, 3),   primitive(PrimitiveKind::One),    primitive(PrimitiveKind::Zero),
      name("A"),                           name("Tree_2"),
  };
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 0 : 7);
  switch (pick(rng)) {
    case 0: return leaves[std::uniform_int_distribution<std::size_t>(0, leaves.size() - 1)(rng)];
    case 1: return sum(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 2: return product(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 3: return substitute(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 4: return derivative(random_expr(rng, depth - 1));
    case 5: return pointing(random_expr(rng, depth - 1));
    case 6: {
      auto rel = static_cast<CardRelation>(std::uniform_int_distribution<int>(0, 2)(rng));
      return restrict_card(random_expr(rng, depth - 1), {rel, std::uniform_int_distribution<std::size_t>(0, 4)(rng)});
    }
    default: return product(random_expr(rng, depth - 1), sum(random_expr(rng, depth - 1), random_expr(rng, depth - 1)));
  }
}

}  // namespace

TEST_CASE("parser: precedence and postfix operators") {
  CHECK(parse_expr("X + X*E") == sum(primitive(PrimitiveKind::Singleton),
                                     product(primitive(PrimitiveKind::Singleton), primitive(PrimitiveKind::Set))));
  CHECK(parse_expr("E(C)") == substitute(primitive(PrimitiveKind::Set), primitive(PrimitiveKind::Cycle)));
  CHECK(parse_expr("C''") == derivative(derivative(primitive(PrimitiveKind::Cycle))));
  CHECK(parse_expr("pt(A)") == pointing(name("A")));
  CHECK(parse_expr("B^2") == product(name("B"), name("B")));
  CHECK(parse_expr("End[>=1]") ==
        restrict_card(primitive(PrimitiveKind::Endofunction), {CardRelation::AtLeast, 1}));
  CHECK(parse_expr("Pk[2]") == primitive(PrimitiveKind::KSubset, 2));
  CHECK(parse_expr("  ( X ) ") == primitive(PrimitiveKind::Singleton));
}

TEST_CASE("parser: print round-trips") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    Expr e = random_expr(rng, 4);
    const std::string text = print(e);
    INFO(text);
    CHECK(parse_expr(text) == e);
    CHECK(print(parse_expr(text)) == text);
  }
}

TEST_CASE("parser: syntax errors carry position and expectations") {
  try {
    parse_expr("X +");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.code() == ErrorCode::SyntaxError);
    CHECK(e.position() == 3);
    CHECK_FALSE(e.expected().empty());
  }
  CHECK(code_of([] { parse_expr("E(C"); }) == ErrorCode::SyntaxError);
  CHECK(code_of([] { parse_expr("X Y"); }) == ErrorCode::SyntaxError);
  CHECK(code_of([] { parse_expr("Pk"); }) == ErrorCode::SyntaxError);
  CHECK(code_of([] { parse_expr("E[>2]"); }) == ErrorCode::SyntaxError);
  CHECK(code_of([] { parse_expr(""); }) == ErrorCode::SyntaxError);
}

TEST_CASE("definitions files") {
  auto env = parse_defs("# trees\nA = X*E(A)\n\nB = 1 + X*B^2  # binary\n");
  CHECK(env.size() == 2);
  CHECK(env.contains("A"));
  CHECK(*env.find("B") == parse_expr("1 + X*(B*B)"));
  CHECK(code_of([] { parse_defs("A = X\nA = E\n"); }) == ErrorCode::DuplicateName);
  CHECK(code_of([] { parse_defs("A = X*Q\n"); }) == ErrorCode::UnboundName);
  CHECK(code_of([] { parse_defs("E = X\n"); }) == ErrorCode::SyntaxError);
  CHECK(code_of([] { parse_defs("A X\n"); }) == ErrorCode::SyntaxError);
  // Forward references are allowed.
  CHECK(parse_defs("F = G + X\nG = X*F\n").size() == 2);
}

TEST_CASE("primitive series match brute-force counts") {
  for (std::size_t n = 0; n <= 7; ++n) {
    CAPTURE(n);
    CHECK(count_of("S", n) == oracle::permutations(n));
    CHECK(count_of("L", n) == oracle::permutations(n));
    CHECK(count_of("C", n) == oracle::cyclic_permutations(n));
    CHECK(count_of("Der", n) == oracle::derangements(n));
    CHECK(count_of("Inv", n) == oracle::involutions(n));
    CHECK(count_of("End", n) == oracle::endofunctions(n));
    CHECK(count_of("Part", n) == oracle::set_partitions(n));
    CHECK(count_of("P", n) == oracle::subsets(n));
    if (n <= 6) CHECK(count_of("Gra", n) == oracle::graphs(n));
    if (n <= 4) CHECK(count_of("Gro", n) == oracle::digraphs(n));
    CHECK(count_of("E", n) == 1);
    CHECK(count_of("Ep", n) == (n > 0 ? 1 : 0));
    CHECK(count_of("Lp", n) == (n > 0 ? oracle::permutations(n) : Integer(0)));
    CHECK(count_of("Pk[3]", n) == binomial(n, 3));
    CHECK(count_of("Ek[3]", n) == (n == 3 ? 1 : 0));
  }
}

TEST_CASE("recursive definitions") {
  auto env = parse_defs("A = X*E(A)\nB = 1 + X*B^2\n");
  auto a = egf_of(name("A"), env, 7);
  auto b = egf_of(name("B"), env, 10);
  for (std::size_t n = 0; n <= 7; ++n) CHECK(count(a, n) == oracle::rooted_trees(n));
  for (std::size_t n = 0; n <= 10; ++n) CHECK(count(b, n) == oracle::binary_trees(n));

  SUBCASE("evaluation order does not change the prefix") {
    CHECK(egf_of(name("A"), env, 12).truncated(7) == a);
  }
  SUBCASE("mutually recursive definitions") {
    auto eo = parse_defs("Even = 1 + X*Odd\nOdd = X*Even\n");
    auto even = egf_of(name("Even"), eo, 8);
    for (std::size_t n = 0; n <= 8; ++n) CHECK(count(even, n) == (n % 2 == 0 ? factorial(n) : Integer(0)));
  }
}

TEST_CASE("derivatives and pointing") {
  for (std::size_t n = 0; n <= 8; ++n) {
    CHECK(count_of("C'", n) == factorial(n));
    CHECK(count_of("C''", n) == factorial(n + 1));
    CHECK(count_of("pt(E)", n) == static_cast<unsigned long>(n));
    CHECK(count_of("E'", n) == 1);
  }
}

TEST_CASE("validation") {
  Environment empty;
  CHECK(validate(parse_expr("E(C)"), empty).ok());

  auto bad = validate(parse_expr("E(E)"), empty);
  CHECK(bad.has(ErrorCode::NonemptyInnerOnEmptySet));

  auto loop = parse_defs("F = F\n");
  CHECK(validate(name("F"), loop).has(ErrorCode::IllFoundedEquation));
  CHECK(code_of([&] { egf_of(name("F"), loop, 5); }) == ErrorCode::IllFoundedEquation);

  auto grow = parse_defs("G = E*G\n");
  CHECK(validate(name("G"), grow).has(ErrorCode::IllFoundedEquation));

  auto self_derivative = parse_defs("H = X + H'\n");
  CHECK(validate(name("H"), self_derivative).has(ErrorCode::IllFoundedEquation));

  CHECK(validate(name("Q"), empty).has(ErrorCode::UnboundName));
  CHECK(code_of([&] { egf_of(name("Q"), empty, 3); }) == ErrorCode::UnboundName);

  auto trees = parse_defs("A = X*E(A)\n");
  CHECK(validate(parse_expr("S(A)"), trees).ok());
}

TEST_CASE("count overrides replace primitive counts") {
  EvalOptions options;
  options.count_overrides[PrimitiveKind::Derangement][4] = 10;
  auto s = egf_of(parse_expr("Der"), {}, 6, options);
  CHECK(count(s, 4) == 10);
  CHECK(count(s, 5) == 44);
  CHECK(count_of("Der", 4) == 9);
}
