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
#include <cstdint>
#include <string>
#include <vector>

#include "species/expr.hpp"
#include "species/structure.hpp"

namespace species {

inline constexpr std::size_t kDefaultBudget = 10'000'000;

struct EnumerateOptions {
  /// Maximum number of structures built, summed over all intermediate
  /// enumerations. Exceeding it raises BudgetExceeded.
  std::size_t budget = kDefaultBudget;
};

/// Every structure of the species `e` on `labels`, canonical and sorted by
/// encoding.
///
/// Throws BudgetExceeded, the validation errors of the expression, and
/// RecursionGuard when a named species re-enters itself on the same label set.
std::vector<Structure> enumerate(const Expr& e, const Environment& env, const LabelSet& labels,
                                 const EnumerateOptions& options = {});

/// True when s is a structure of the species `e` on its own underlying labels.
bool conforms(const Expr& e, const Environment& env, const Structure& s);

/// Transport of s along sigma. Throws DomainMismatch unless the labels of s
/// are exactly the domain of sigma, and InvalidStructure when s is not a
/// structure of `e`.
Structure transport(const Expr& e, const Environment& env, const Structure& s, const Bijection& sigma);

/// Fixed points and derangement part of a permutation.
struct PermutationSplit {
  Structure fixed_points;  // Set term
  Structure derangement;   // Map term without fixed points
};

/// Throws NotABijection unless perm is a Map term that permutes its domain.
PermutationSplit decompose_permutation(const Structure& perm);
Structure reassemble(const PermutationSplit& split);

/// Orbit decomposition: a Comp term with a Set outer structure over the
/// orbits and the induced Cycle on each orbit.
Structure permutation_to_cycles(const Structure& perm);
/// Inverse of permutation_to_cycles.
Structure cycles_to_permutation(const Structure& cycles);

struct FunctorialityReport {
  bool passed = true;
  std::size_t trials = 0;
  std::size_t structures = 0;
  /// First counterexample, empty when passed.
  std::string failure;
};

/// Checks the functor laws for `trials` random pairs of bijections
/// sigma: A -> B, tau: B -> C: transport along the identity is the identity,
/// transport along tau∘sigma equals the two-step transport, and transport maps
/// F[A] bijectively onto F[B].
FunctorialityReport check_functoriality(const Expr& e, const Environment& env, const LabelSet& labels,
                                        std::size_t trials, std::uint64_t seed = 1);

}  // namespace species
