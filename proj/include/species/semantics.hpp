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
#include <map>
#include <string>
#include <vector>

#include "species/errors.hpp"
#include "species/expr.hpp"
#include "species/series.hpp"

namespace species {

/// Knobs for series evaluation. `count_overrides` replaces individual counts
/// of primitive species and exists for fault-injection tests of the harness.
struct EvalOptions {
  std::map<PrimitiveKind, std::map<std::size_t, Integer>> count_overrides;
};

/// Series of a primitive species to the given order.
CountSeries primitive_series(const Primitive& p, std::size_t order, const EvalOptions& options = {});

/// Series of the species denoted by `e` to order N. Sums, products,
/// substitutions, derivatives and pointings map to the corresponding series
/// operations; named species are solved one strongly connected component at a
/// time. Throws UnboundName, NonemptyInnerOnEmptySet or IllFoundedEquation.
CountSeries egf_of(const Expr& e, const Environment& env, std::size_t order, const EvalOptions& options = {});

struct ValidationFailure {
  ErrorCode code;
  std::string message;
  /// Printed offending subexpression (or name list for recursive systems).
  std::string subject;
};

struct ValidationReport {
  std::vector<ValidationFailure> failures;

  bool ok() const noexcept { return failures.empty(); }
  bool has(ErrorCode code) const noexcept;
};

/// Checks that every name is bound, that every substitution's inner species
/// has no structure on the empty set, and that every recursive system reached
/// from `e` has a unique solution up to `order`.
ValidationReport validate(const Expr& e, const Environment& env, std::size_t order = kDefaultOrder);

}  // namespace species
