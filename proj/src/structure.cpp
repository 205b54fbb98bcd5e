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

#include "species/structure.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

#include "species/errors.hpp"

namespace species {

namespace {

constexpr std::string_view kStarBytes = "\xE2\x98\x85";

std::size_t star_depth(std::string_view label) {
  std::size_t depth = 0;
  while (label.substr(depth * kStarBytes.size(), kStarBytes.size()) == kStarBytes) ++depth;
  return depth * kStarBytes.size() == label.size() ? depth : 0;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::string_view strip_zeros(std::string_view s) {
  std::size_t i = 0;
  while (i + 1 < s.size() && s[i] == '0') ++i;
  return s.substr(i);
}

}  // namespace

bool is_star(std::string_view label) noexcept { return label.starts_with(kStarBytes); }

Label star(std::size_t depth) {
  Label out;
  for (std::size_t i = 0; i < depth; ++i) out += kStarBytes;
  return out;
}

bool label_less(std::string_view a, std::string_view b) {
  const bool sa = is_star(a), sb = is_star(b);
  if (sa != sb) return sa;
  if (sa) return a.size() != b.size() ? a.size() < b.size() : a < b;
  const bool da = all_digits(a), db = all_digits(b);
  if (da != db) return da;
  if (da) {
    auto na = strip_zeros(a), nb = strip_zeros(b);
    if (na.size() != nb.size()) return na.size() < nb.size();
    if (na != nb) return na < nb;
  }
  return a < b;
}

LabelSet::LabelSet(std::vector<Label> labels) : labels_(std::move(labels)) {
  std::sort(labels_.begin(), labels_.end(), LabelLess{});
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].empty()) throw std::invalid_argument("empty label");
    if (is_star(labels_[i])) throw std::invalid_argument("label " + labels_[i] + " is reserved");
    if (i > 0 && labels_[i] == labels_[i - 1]) throw std::invalid_argument("duplicate label " + labels_[i]);
  }
}

LabelSet LabelSet::range(std::size_t n) {
  std::vector<Label> v;
  for (std::size_t i = 1; i <= n; ++i) v.push_back(std::to_string(i));
  return LabelSet(std::move(v));
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

LabelSet LabelSet::parse(std::string_view text) {
  text = trim(text);
  if (text.empty()) return LabelSet();
  if (all_digits(text) && text.find(',') == std::string_view::npos) return range(std::stoul(std::string(text)));
  std::vector<Label> v;
  for (auto tok : split(text, ',')) v.emplace_back(tok);
  return LabelSet(std::move(v));
}

bool LabelSet::contains(std::string_view label) const {
  return std::binary_search(labels_.begin(), labels_.end(), label, LabelLess{});
}

Bijection::Bijection(std::vector<std::pair<Label, Label>> pairs) {
  std::set<Label> image;
  for (auto& [from, to] : pairs) {
    if (is_star(from) || is_star(to)) throw Error(ErrorCode::NotABijection, "star labels cannot be mapped");
    if (!forward_.emplace(from, to).second) throw Error(ErrorCode::NotABijection, "label " + from + " mapped twice");
    if (!image.insert(to).second) throw Error(ErrorCode::NotABijection, "label " + to + " hit twice");
  }
}

Bijection Bijection::identity(const LabelSet& labels) {
  std::vector<std::pair<Label, Label>> pairs;
  for (const auto& l : labels.labels()) pairs.emplace_back(l, l);
  return Bijection(std::move(pairs));
}

Bijection Bijection::parse(std::string_view text) {
  std::vector<std::pair<Label, Label>> pairs;
  if (trim(text).empty()) return Bijection(std::move(pairs));
  for (auto item : split(text, ',')) {
    auto arrow = item.find("->");
    if (arrow == std::string_view::npos) {
      throw Error(ErrorCode::NotABijection, "expected 'from->to', got '" + std::string(item) + "'");
    }
    auto from = trim(item.substr(0, arrow));
    auto to = trim(item.substr(arrow + 2));
    if (from.empty() || to.empty()) throw Error(ErrorCode::NotABijection, "empty label in '" + std::string(item) + "'");
    pairs.emplace_back(std::string(from), std::string(to));
  }
  return Bijection(std::move(pairs));
}

LabelSet Bijection::domain() const {
  std::vector<Label> v;
  for (const auto& [from, to] : forward_) v.push_back(from);
  return LabelSet(std::move(v));
}

LabelSet Bijection::codomain() const {
  std::vector<Label> v;
  for (const auto& [from, to] : forward_) v.push_back(to);
  return LabelSet(std::move(v));
}

const Label& Bijection::operator()(const Label& label) const {
  if (is_star(label)) return label;
  auto it = forward_.find(label);
  if (it == forward_.end()) throw Error(ErrorCode::DomainMismatch, "label " + label + " is outside the domain");
  return it->second;
}

Bijection Bijection::inverse() const {
  std::vector<std::pair<Label, Label>> pairs;
  for (const auto& [from, to] : forward_) pairs.emplace_back(to, from);
  return Bijection(std::move(pairs));
}

Bijection Bijection::after(const Bijection& first) const {
  std::vector<std::pair<Label, Label>> pairs;
  for (const auto& [from, mid] : first.forward_) pairs.emplace_back(from, (*this)(mid));
  return Bijection(std::move(pairs));
}

std::string_view to_string(TermKind kind) {
  switch (kind) {
    case TermKind::Set: return "set";
    case TermKind::Subset: return "subset";
    case TermKind::List: return "list";
    case TermKind::Cycle: return "cycle";
    case TermKind::Map: return "map";
    case TermKind::Graph: return "graph";
    case TermKind::Digraph: return "digraph";
    case TermKind::Partition: return "partition";
    case TermKind::Sum: return "sum";
    case TermKind::Prod: return "prod";
    case TermKind::Comp: return "comp";
    case TermKind::Deriv: return "deriv";
    case TermKind::Point: return "point";
    case TermKind::Named: return "named";
  }
  return "?";
}

namespace {

void sort_labels(std::vector<Label>& v) { std::sort(v.begin(), v.end(), LabelLess{}); }

bool pair_less(const std::pair<Label, Label>& a, const std::pair<Label, Label>& b) {
  if (a.first != b.first) return label_less(a.first, b.first);
  return label_less(a.second, b.second);
}

Label index_label(std::size_t i) { return std::to_string(i); }

// Reorders the parts of a Comp term by block minimum and reindexes the
// outer structure to match. Children must already be canonical.
void canonical_comp(Structure& s) {
  const std::size_t k = s.children.size() - 1;
  std::vector<std::vector<Label>> blocks(k);
  for (std::size_t i = 0; i < k; ++i) {
    blocks[i] = labels_of(s.children[i + 1]);
    sort_labels(blocks[i]);
  }
  std::vector<std::size_t> order(k);
  for (std::size_t i = 0; i < k; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (blocks[a].empty() || blocks[b].empty()) return blocks[a].size() < blocks[b].size();
    return label_less(blocks[a].front(), blocks[b].front());
  });
  std::vector<std::size_t> new_index(k);
  for (std::size_t j = 0; j < k; ++j) new_index[order[j]] = j;

  Structure outer = relabel(s.children[0], [&](const Label& l) { return index_label(new_index.at(std::stoul(l))); });
  std::vector<Structure> children{std::move(outer)};
  std::vector<std::vector<Label>> sorted_blocks;
  for (std::size_t j = 0; j < k; ++j) {
    children.push_back(std::move(s.children[order[j] + 1]));
    sorted_blocks.push_back(std::move(blocks[order[j]]));
  }
  s.children = std::move(children);
  s.blocks = std::move(sorted_blocks);
}

}  // namespace

Structure canonical(Structure s) {
  switch (s.kind) {
    case TermKind::Set: sort_labels(s.labels); break;
    case TermKind::Subset:
      sort_labels(s.labels);
      sort_labels(s.chosen);
      break;
    case TermKind::List: break;
    case TermKind::Cycle:
      if (!s.labels.empty()) {
        auto min = std::min_element(s.labels.begin(), s.labels.end(), LabelLess{});
        std::rotate(s.labels.begin(), min, s.labels.end());
      }
      break;
    case TermKind::Map: std::sort(s.pairs.begin(), s.pairs.end(), pair_less); break;
    case TermKind::Graph:
      sort_labels(s.labels);
      for (auto& [a, b] : s.pairs) {
        if (label_less(b, a)) std::swap(a, b);
      }
      std::sort(s.pairs.begin(), s.pairs.end(), pair_less);
      break;
    case TermKind::Digraph:
      sort_labels(s.labels);
      std::sort(s.pairs.begin(), s.pairs.end(), pair_less);
      break;
    case TermKind::Partition:
      for (auto& b : s.blocks) sort_labels(b);
      std::sort(s.blocks.begin(), s.blocks.end(), [](const auto& a, const auto& b) {
        if (a.empty() || b.empty()) return a.size() < b.size();
        return label_less(a.front(), b.front());
      });
      break;
    case TermKind::Comp:
      for (auto& c : s.children) c = canonical(std::move(c));
      canonical_comp(s);
      break;
    default:
      for (auto& c : s.children) c = canonical(std::move(c));
      break;
  }
  return s;
}

namespace term {
Structure set(std::vector<Label> labels) { return canonical({.kind = TermKind::Set, .labels = std::move(labels)}); }
Structure subset(std::vector<Label> ground, std::vector<Label> chosen) {
  return canonical({.kind = TermKind::Subset, .labels = std::move(ground), .chosen = std::move(chosen)});
}
Structure list(std::vector<Label> sequence) { return {.kind = TermKind::List, .labels = std::move(sequence)}; }
Structure cycle(std::vector<Label> sequence) {
  return canonical({.kind = TermKind::Cycle, .labels = std::move(sequence)});
}
Structure map(std::vector<std::pair<Label, Label>> pairs) {
  return canonical({.kind = TermKind::Map, .pairs = std::move(pairs)});
}
Structure graph(std::vector<Label> vertices, std::vector<std::pair<Label, Label>> edges) {
  return canonical({.kind = TermKind::Graph, .labels = std::move(vertices), .pairs = std::move(edges)});
}
Structure digraph(std::vector<Label> vertices, std::vector<std::pair<Label, Label>> arcs) {
  return canonical({.kind = TermKind::Digraph, .labels = std::move(vertices), .pairs = std::move(arcs)});
}
Structure partition(std::vector<std::vector<Label>> blocks) {
  return canonical({.kind = TermKind::Partition, .blocks = std::move(blocks)});
}
Structure sum(int side, Structure inner) { return {.kind = TermKind::Sum, .children = {std::move(inner)}, .side = side}; }
Structure prod(Structure left, Structure right) {
  return {.kind = TermKind::Prod, .children = {std::move(left), std::move(right)}};
}
Structure comp(Structure outer, std::vector<Structure> inner) {
  Structure s{.kind = TermKind::Comp};
  s.children.push_back(std::move(outer));
  for (auto& i : inner) s.children.push_back(std::move(i));
  canonical_comp(s);
  return s;
}
Structure deriv(Structure inner) { return {.kind = TermKind::Deriv, .children = {std::move(inner)}}; }
Structure point(Label point, Structure inner) {
  return {.kind = TermKind::Point, .children = {std::move(inner)}, .point = std::move(point)};
}
Structure named(std::string name, Structure inner) {
  return {.kind = TermKind::Named, .children = {std::move(inner)}, .name = std::move(name)};
}
}  // namespace term

namespace {

void collect_labels(const Structure& s, std::vector<Label>& out) {
  switch (s.kind) {
    case TermKind::Set:
    case TermKind::Subset:
    case TermKind::List:
    case TermKind::Cycle:
    case TermKind::Graph:
    case TermKind::Digraph: out.insert(out.end(), s.labels.begin(), s.labels.end()); break;
    case TermKind::Map:
      for (const auto& [x, fx] : s.pairs) out.push_back(x);
      break;
    case TermKind::Partition:
      for (const auto& b : s.blocks) out.insert(out.end(), b.begin(), b.end());
      break;
    case TermKind::Comp:
      for (std::size_t i = 1; i < s.children.size(); ++i) collect_labels(s.children[i], out);
      break;
    case TermKind::Prod:
      collect_labels(s.children[0], out);
      collect_labels(s.children[1], out);
      break;
    case TermKind::Deriv: {
      std::vector<Label> inner;
      collect_labels(s.children[0], inner);
      // The deepest star is the point this derivative added.
      auto bound = std::max_element(inner.begin(), inner.end(), [](const Label& a, const Label& b) {
        return star_depth(a) < star_depth(b);
      });
      if (bound != inner.end() && is_star(*bound)) inner.erase(bound);
      out.insert(out.end(), inner.begin(), inner.end());
      break;
    }
    case TermKind::Sum:
    case TermKind::Point:
    case TermKind::Named: collect_labels(s.children[0], out); break;
  }
}

}  // namespace

std::vector<Label> labels_of(const Structure& s) {
  std::vector<Label> out;
  collect_labels(s, out);
  return out;
}

std::vector<Label> underlying_labels(const Structure& s) {
  std::vector<Label> out = labels_of(s);
  std::erase_if(out, [](const Label& l) { return is_star(l); });
  sort_labels(out);
  return out;
}

Structure relabel(const Structure& s, const std::function<Label(const Label&)>& f) {
  auto g = [&](const Label& l) { return is_star(l) ? l : f(l); };
  auto all = [&](std::vector<Label> v) {
    for (auto& l : v) l = g(l);
    return v;
  };
  Structure out = s;
  switch (s.kind) {
    case TermKind::Set:
    case TermKind::Subset:
    case TermKind::List:
    case TermKind::Cycle:
    case TermKind::Map:
    case TermKind::Graph:
    case TermKind::Digraph:
    case TermKind::Partition:
      out.labels = all(s.labels);
      out.chosen = all(s.chosen);
      for (auto& [a, b] : out.pairs) {
        a = g(a);
        b = g(b);
      }
      for (auto& b : out.blocks) b = all(b);
      return canonical(std::move(out));
    case TermKind::Comp: {
      // The outer structure lives on block indices and is reindexed by the
      // canonicalization, not by f.
      for (std::size_t i = 1; i < out.children.size(); ++i) out.children[i] = relabel(s.children[i], f);
      canonical_comp(out);
      return out;
    }
    case TermKind::Point:
      out.point = g(s.point);
      [[fallthrough]];
    default:
      for (auto& c : out.children) c = relabel(c, f);
      return out;
  }
}

namespace {

using ojson = nlohmann::ordered_json;

ojson pairs_json(const std::vector<std::pair<Label, Label>>& pairs) {
  ojson arr = ojson::array();
  for (const auto& [a, b] : pairs) arr.push_back(ojson::array({a, b}));
  return arr;
}

}  // namespace

nlohmann::ordered_json to_json(const Structure& s) {
  ojson j;
  j["kind"] = std::string(to_string(s.kind));
  switch (s.kind) {
    case TermKind::Set:
    case TermKind::List:
    case TermKind::Cycle: j["labels"] = s.labels; break;
    case TermKind::Subset:
      j["ground"] = s.labels;
      j["chosen"] = s.chosen;
      break;
    case TermKind::Map: j["pairs"] = pairs_json(s.pairs); break;
    case TermKind::Graph:
      j["vertices"] = s.labels;
      j["edges"] = pairs_json(s.pairs);
      break;
    case TermKind::Digraph:
      j["vertices"] = s.labels;
      j["arcs"] = pairs_json(s.pairs);
      break;
    case TermKind::Partition: j["blocks"] = s.blocks; break;
    case TermKind::Sum:
      j["side"] = s.side == 0 ? "left" : "right";
      j["inner"] = to_json(s.children[0]);
      break;
    case TermKind::Prod:
      j["left"] = to_json(s.children[0]);
      j["right"] = to_json(s.children[1]);
      break;
    case TermKind::Comp: {
      j["outer"] = to_json(s.children[0]);
      ojson parts = ojson::array();
      for (std::size_t i = 1; i < s.children.size(); ++i) {
        ojson part;
        part["block"] = s.blocks[i - 1];
        part["inner"] = to_json(s.children[i]);
        parts.push_back(std::move(part));
      }
      j["parts"] = std::move(parts);
      break;
    }
    case TermKind::Deriv: j["inner"] = to_json(s.children[0]); break;
    case TermKind::Point:
      j["label"] = s.point;
      j["inner"] = to_json(s.children[0]);
      break;
    case TermKind::Named:
      j["name"] = s.name;
      j["inner"] = to_json(s.children[0]);
      break;
  }
  return j;
}

std::string encode(const Structure& s) { return to_json(s).dump(-1, ' ', true); }

namespace {

[[noreturn]] void invalid(const std::string& why) { throw Error(ErrorCode::InvalidStructure, why); }

const nlohmann::json& field(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) invalid(std::string("missing field '") + key + "'");
  return *it;
}

std::vector<Label> label_array(const nlohmann::json& j) {
  if (!j.is_array()) invalid("expected an array of labels");
  std::vector<Label> out;
  for (const auto& x : j) {
    if (!x.is_string()) invalid("labels must be strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

std::vector<std::pair<Label, Label>> pair_array(const nlohmann::json& j) {
  if (!j.is_array()) invalid("expected an array of pairs");
  std::vector<std::pair<Label, Label>> out;
  for (const auto& x : j) {
    auto p = label_array(x);
    if (p.size() != 2) invalid("pairs must have two labels");
    out.emplace_back(p[0], p[1]);
  }
  return out;
}

void require_distinct(std::vector<Label> v) {
  sort_labels(v);
  if (std::adjacent_find(v.begin(), v.end()) != v.end()) invalid("label occurs twice");
}

}  // namespace

Structure structure_from_json(const nlohmann::json& j) {
  if (!j.is_object()) invalid("structure must be a JSON object");
  const auto& kind_field = field(j, "kind");
  if (!kind_field.is_string()) invalid("'kind' must be a string");
  const std::string kind = kind_field.get<std::string>();
  Structure s;
  if (kind == "set") {
    s = term::set(label_array(field(j, "labels")));
  } else if (kind == "subset") {
    s = term::subset(label_array(field(j, "ground")), label_array(field(j, "chosen")));
    for (const auto& c : s.chosen) {
      if (std::find(s.labels.begin(), s.labels.end(), c) == s.labels.end()) invalid("chosen label outside ground set");
    }
    require_distinct(s.chosen);
  } else if (kind == "list") {
    s = term::list(label_array(field(j, "labels")));
  } else if (kind == "cycle") {
    s = term::cycle(label_array(field(j, "labels")));
  } else if (kind == "map") {
    s = term::map(pair_array(field(j, "pairs")));
    std::vector<Label> dom;
    for (const auto& [x, fx] : s.pairs) dom.push_back(x);
    require_distinct(dom);
    for (const auto& [x, fx] : s.pairs) {
      if (std::find(dom.begin(), dom.end(), fx) == dom.end()) invalid("map value outside its domain");
    }
  } else if (kind == "graph" || kind == "digraph") {
    auto vertices = label_array(field(j, "vertices"));
    auto edges = pair_array(field(j, kind == "graph" ? "edges" : "arcs"));
    s = kind == "graph" ? term::graph(vertices, edges) : term::digraph(vertices, edges);
    for (const auto& [a, b] : s.pairs) {
      if (std::find(vertices.begin(), vertices.end(), a) == vertices.end() ||
          std::find(vertices.begin(), vertices.end(), b) == vertices.end()) {
        invalid("edge endpoint outside the vertex set");
      }
      if (kind == "graph" && a == b) invalid("simple graphs have no loops");
    }
    if (std::adjacent_find(s.pairs.begin(), s.pairs.end()) != s.pairs.end()) invalid("edge occurs twice");
  } else if (kind == "partition") {
    const auto& arr = field(j, "blocks");
    if (!arr.is_array()) invalid("'blocks' must be an array");
    std::vector<std::vector<Label>> blocks;
    for (const auto& b : arr) {
      blocks.push_back(label_array(b));
      if (blocks.back().empty()) invalid("partition blocks are nonempty");
    }
    s = term::partition(std::move(blocks));
  } else if (kind == "sum") {
    const auto& side = field(j, "side");
    if (side != "left" && side != "right") invalid("'side' must be left or right");
    s = term::sum(side == "left" ? 0 : 1, structure_from_json(field(j, "inner")));
  } else if (kind == "prod") {
    s = term::prod(structure_from_json(field(j, "left")), structure_from_json(field(j, "right")));
  } else if (kind == "comp") {
    Structure outer = structure_from_json(field(j, "outer"));
    const auto& parts = field(j, "parts");
    if (!parts.is_array()) invalid("'parts' must be an array");
    std::vector<Structure> inner;
    for (const auto& p : parts) {
      inner.push_back(structure_from_json(field(p, "inner")));
      auto block = label_array(field(p, "block"));
      sort_labels(block);
      auto actual = labels_of(inner.back());
      sort_labels(actual);
      if (block != actual) invalid("block does not match the labels of its inner structure");
    }
    auto outer_labels = underlying_labels(outer);
    std::vector<Label> expected;
    for (std::size_t i = 0; i < inner.size(); ++i) expected.push_back(index_label(i));
    if (outer_labels != expected) invalid("outer structure must be labelled by block indices 0..k-1");
    s = term::comp(std::move(outer), std::move(inner));
  } else if (kind == "deriv") {
    s = term::deriv(structure_from_json(field(j, "inner")));
  } else if (kind == "point") {
    const auto& l = field(j, "label");
    if (!l.is_string()) invalid("'label' must be a string");
    s = term::point(l.get<std::string>(), structure_from_json(field(j, "inner")));
    auto under = labels_of(s.children[0]);
    if (std::find(under.begin(), under.end(), s.point) == under.end()) invalid("pointed label is not in the structure");
  } else if (kind == "named") {
    const auto& n = field(j, "name");
    if (!n.is_string()) invalid("'name' must be a string");
    s = term::named(n.get<std::string>(), structure_from_json(field(j, "inner")));
  } else {
    invalid("unknown structure kind '" + kind + "'");
  }
  require_distinct(labels_of(s));
  return s;
}

Structure decode(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    invalid(std::string("malformed JSON: ") + e.what());
  }
  return structure_from_json(j);
}

namespace {

std::string join(const std::vector<Label>& v, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += sep;
    out += v[i];
  }
  return out;
}

}  // namespace

std::string render(const Structure& s) {
  switch (s.kind) {
    case TermKind::Set: return "{" + join(s.labels, ",") + "}";
    case TermKind::Subset: return "{" + join(s.chosen, ",") + "} of {" + join(s.labels, ",") + "}";
    case TermKind::List: return "[" + join(s.labels, ",") + "]";
    case TermKind::Cycle: return "(" + join(s.labels, " ") + ")";
    case TermKind::Map: {
      std::vector<Label> items;
      for (const auto& [a, b] : s.pairs) items.push_back(a + "->" + b);
      return "{" + join(items, ",") + "}";
    }
    case TermKind::Graph:
    case TermKind::Digraph: {
      std::vector<Label> items;
      const char* link = s.kind == TermKind::Graph ? "-" : ">";
      for (const auto& [a, b] : s.pairs) items.push_back(a + link + b);
      return "{" + join(items, ",") + "} on {" + join(s.labels, ",") + "}";
    }
    case TermKind::Partition: {
      std::vector<Label> items;
      for (const auto& b : s.blocks) items.push_back("{" + join(b, ",") + "}");
      return "{" + join(items, ",") + "}";
    }
    case TermKind::Sum: return (s.side == 0 ? "left:" : "right:") + render(s.children[0]);
    case TermKind::Prod: return "<" + render(s.children[0]) + " | " + render(s.children[1]) + ">";
    case TermKind::Comp: {
      std::vector<Label> items;
      for (std::size_t i = 1; i < s.children.size(); ++i) items.push_back(std::to_string(i - 1) + "=" + render(s.children[i]));
      return render(s.children[0]) + " over [" + join(items, "; ") + "]";
    }
    case TermKind::Deriv: return "d" + render(s.children[0]);
    case TermKind::Point: return s.point + "^" + render(s.children[0]);
    case TermKind::Named: return s.name + ":" + render(s.children[0]);
  }
  return "?";
}

void sort_structures(std::vector<Structure>& v) {
  std::vector<std::pair<std::string, std::size_t>> keys;
  keys.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) keys.emplace_back(encode(v[i]), i);
  std::sort(keys.begin(), keys.end());
  std::vector<Structure> sorted;
  sorted.reserve(v.size());
  for (const auto& [key, i] : keys) sorted.push_back(std::move(v[i]));
  v = std::move(sorted);
}

}  // namespace species
