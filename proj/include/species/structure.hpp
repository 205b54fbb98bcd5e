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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace species {

using Label = std::string;

/// External point added by a derivative. Nested derivatives use "★★",
/// "★★★", ... so that every point is distinct.
inline const Label kStar = "★";

bool is_star(std::string_view label) noexcept;
Label star(std::size_t depth);

/// Total order on labels: star points first (by depth), then all-digit
/// labels by numeric value, then everything else lexicographically.
bool label_less(std::string_view a, std::string_view b);

struct LabelLess {
  using is_transparent = void;
  bool operator()(std::string_view a, std::string_view b) const { return label_less(a, b); }
};

/// A finite set of user labels, kept sorted by label_less.
class LabelSet {
 public:
  LabelSet() = default;
  /// Throws std::invalid_argument on duplicates, empty tokens or star labels.
  explicit LabelSet(std::vector<Label> labels);

  /// [n] = {1, ..., n}.
  static LabelSet range(std::size_t n);
  /// Either a bare integer n (meaning [n]) or a comma-separated token list.
  static LabelSet parse(std::string_view text);

  const std::vector<Label>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }
  bool contains(std::string_view label) const;

  friend bool operator==(const LabelSet&, const LabelSet&) = default;

 private:
  std::vector<Label> labels_;
};

/// A bijection between finite label sets. Star labels are fixed by every
/// bijection and never appear in its domain.
class Bijection {
 public:
  /// Throws NotABijection unless the pairs define a bijection.
  explicit Bijection(std::vector<std::pair<Label, Label>> pairs);

  static Bijection identity(const LabelSet& labels);
  /// "a->x,b->y,...".
  static Bijection parse(std::string_view text);

  LabelSet domain() const;
  LabelSet codomain() const;
  std::size_t size() const noexcept { return forward_.size(); }

  /// Image of a label; stars map to themselves. Throws DomainMismatch for
  /// labels outside the domain.
  const Label& operator()(const Label& label) const;

  Bijection inverse() const;
  /// (this ∘ first): apply `first`, then this.
  Bijection after(const Bijection& first) const;

  const std::map<Label, Label, LabelLess>& mapping() const noexcept { return forward_; }

 private:
  std::map<Label, Label, LabelLess> forward_;
};

enum class TermKind { Set, Subset, List, Cycle, Map, Graph, Digraph, Partition, Sum, Prod, Comp, Deriv, Point, Named };

std::string_view to_string(TermKind kind);

/// A labelled structure as a canonical term. Which fields are populated
/// depends on `kind`:
///
///   Set        labels (sorted)
///   Subset     labels = ground set, chosen (both sorted)
///   List       labels in list order
///   Cycle      labels in cyclic order, starting at the minimum
///   Map        pairs (x, f(x)) sorted by x
///   Graph      labels = vertices, pairs = edges {a, b} with a < b, sorted
///   Digraph    labels = vertices, pairs = arcs (a, b), sorted
///   Partition  blocks, each sorted, ordered by minimum
///   Sum        side (0 = left, 1 = right), children = {inner}
///   Prod       children = {left, right}
///   Comp       blocks ordered by minimum; children = {outer, inner_0, ...}
///              where the outer structure is labelled by block indices
///              "0", "1", ... and inner_i lives on blocks[i]
///   Deriv      children = {inner over labels plus one star point}
///   Point      point = distinguished label, children = {inner}
///   Named      name, children = {inner}
struct Structure {
  TermKind kind = TermKind::Set;
  std::vector<Label> labels;
  std::vector<Label> chosen;
  std::vector<std::pair<Label, Label>> pairs;
  std::vector<std::vector<Label>> blocks;
  std::vector<Structure> children;
  int side = 0;
  Label point;
  std::string name;

  friend bool operator==(const Structure&, const Structure&) = default;
};

namespace term {
Structure set(std::vector<Label> labels);
Structure subset(std::vector<Label> ground, std::vector<Label> chosen);
Structure list(std::vector<Label> sequence);
Structure cycle(std::vector<Label> sequence);
Structure map(std::vector<std::pair<Label, Label>> pairs);
Structure graph(std::vector<Label> vertices, std::vector<std::pair<Label, Label>> edges);
Structure digraph(std::vector<Label> vertices, std::vector<std::pair<Label, Label>> arcs);
Structure partition(std::vector<std::vector<Label>> blocks);
Structure sum(int side, Structure inner);
Structure prod(Structure left, Structure right);
/// Parts are (block, inner structure) pairs in any order; the outer structure
/// is labelled by the indices of the blocks once ordered by minimum.
Structure comp(Structure outer, std::vector<Structure> inner);
Structure deriv(Structure inner);
Structure point(Label point, Structure inner);
Structure named(std::string name, Structure inner);
}  // namespace term

/// Brings a term into canonical form (sorting sets, rotating cycles, ...).
Structure canonical(Structure s);

/// Multiset of the labels s is built on. Star points of enclosing
/// derivatives are included; the point a Deriv term adds for its own inner
/// structure is not, and neither are the block indices of a Comp outer
/// structure.
std::vector<Label> labels_of(const Structure& s);

/// labels_of(s) without star points, sorted.
std::vector<Label> underlying_labels(const Structure& s);

/// Relabels every label through f (stars are passed through unchanged) and
/// returns the canonical form of the result.
Structure relabel(const Structure& s, const std::function<Label(const Label&)>& f);

nlohmann::ordered_json to_json(const Structure& s);
/// Compact ASCII JSON; non-ASCII characters are \u-escaped. This string is
/// the sort key for deterministic output.
std::string encode(const Structure& s);
/// Throws InvalidStructure for malformed input. The result is canonical.
Structure structure_from_json(const nlohmann::json& j);
Structure decode(std::string_view text);

/// Compact human-readable rendering, e.g. {{a,b},{c}} for a partition.
std::string render(const Structure& s);

/// Sorts by encoding.
void sort_structures(std::vector<Structure>& v);

}  // namespace species
