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

#include "species/enumerate.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <tuple>

#include "species/errors.hpp"
#include "species/semantics.hpp"

namespace species {

namespace {

using Labels = std::vector<Label>;

std::size_t stars_in(const Labels& labels) {
  return static_cast<std::size_t>(std::count_if(labels.begin(), labels.end(), [](const Label& l) { return is_star(l); }));
}

Labels sorted(Labels v) {
  std::sort(v.begin(), v.end(), LabelLess{});
  return v;
}

Labels index_labels(std::size_t k) {
  Labels v;
  for (std::size_t i = 0; i < k; ++i) v.push_back(std::to_string(i));
  return v;
}

/// Calls f with every set partition of `labels` (blocks ordered by minimum,
/// labels assumed sorted), generated as restricted growth strings.
template <typename F>
void for_each_partition(const Labels& labels, F&& f) {
  const std::size_t n = labels.size();
  if (n == 0) {
    f(std::vector<Labels>{});
    return;
  }
  std::vector<std::size_t> rgs(n, 0), max_prefix(n, 0);
  for (;;) {
    std::size_t blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
    std::vector<Labels> parts(blocks);
    for (std::size_t i = 0; i < n; ++i) parts[rgs[i]].push_back(labels[i]);
    f(parts);
    // Next restricted growth string: increment the rightmost position that
    // may still grow, reset everything after it.
    std::size_t i = n - 1;
    while (i > 0 && rgs[i] > max_prefix[i - 1]) --i;
    if (i == 0) return;
    ++rgs[i];
    for (std::size_t j = i + 1; j < n; ++j) rgs[j] = 0;
    for (std::size_t j = i; j < n; ++j) max_prefix[j] = std::max(max_prefix[j - 1], rgs[j]);
  }
}

template <typename F>
void for_each_permutation(std::size_t n, F&& f) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    f(p);
  } while (std::next_permutation(p.begin(), p.end()));
}

class Enumerator {
 public:
  Enumerator(const Environment& env, std::size_t budget) : env_(env), budget_(budget) {}

  const std::vector<Structure>& run(const Expr& e, const Labels& labels) {
    if (const auto* n = e.as<node::Name>()) return run_name(n->id, labels);
    auto key = std::make_tuple(e.id(), std::string(), labels);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    auto out = generate(e, labels);
    return memo_.emplace(std::move(key), std::move(out)).first->second;
  }

 private:
  void charge(std::size_t k) {
    used_ += k;
    if (used_ > budget_) {
      throw Error(ErrorCode::BudgetExceeded, "more than " + std::to_string(budget_) + " structures requested");
    }
  }

  void precharge(const Primitive& p, std::size_t n) {
    Integer expected = count(primitive_series(p, n), n);
    if (expected > Integer(static_cast<unsigned long>(budget_ - std::min(budget_, used_)))) {
      throw Error(ErrorCode::BudgetExceeded, to_string(p) + " has " + expected.get_str() + " structures on " +
                                                 std::to_string(n) + " labels");
    }
  }

  const std::vector<Structure>& run_name(const std::string& id, const Labels& labels) {
    const Expr* rhs = env_.find(id);
    if (rhs == nullptr) throw Error(ErrorCode::UnboundName, "name " + id + " is not defined");
    auto key = std::make_tuple(static_cast<const void*>(nullptr), id, labels);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    auto guard = std::make_pair(id, labels);
    if (!active_.insert(guard).second) {
      throw Error(ErrorCode::RecursionGuard, id + " re-enters itself on the same " + std::to_string(labels.size()) +
                                                 " labels");
    }
    std::vector<Structure> out;
    try {
      for (const auto& s : run(*rhs, labels)) out.push_back(term::named(id, s));
    } catch (...) {
      active_.erase(guard);
      throw;
    }
    active_.erase(guard);
    charge(out.size());
    return memo_.emplace(std::move(key), std::move(out)).first->second;
  }

  std::vector<Structure> generate(const Expr& e, const Labels& labels) {
    return std::visit(
        [&](const auto& x) -> std::vector<Structure> {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Primitive>) {
            precharge(x, labels.size());
            auto out = primitive(x, labels);
            charge(out.size());
            return out;
          } else if constexpr (std::is_same_v<T, node::Name>) {
            return run_name(x.id, labels);
          } else if constexpr (std::is_same_v<T, node::Sum>) {
            std::vector<Structure> out;
            for (const auto& s : run(*x.left, labels)) out.push_back(term::sum(0, s));
            for (const auto& s : run(*x.right, labels)) out.push_back(term::sum(1, s));
            charge(out.size());
            return out;
          } else if constexpr (std::is_same_v<T, node::Product>) {
            return product(*x.left, *x.right, labels);
          } else if constexpr (std::is_same_v<T, node::Substitute>) {
            return substitution(*x.outer, *x.inner, labels);
          } else if constexpr (std::is_same_v<T, node::Derivative>) {
            Labels extended = labels;
            extended.push_back(star(stars_in(labels) + 1));
            std::vector<Structure> out;
            for (const auto& s : run(*x.inner, sorted(std::move(extended)))) out.push_back(term::deriv(s));
            charge(out.size());
            return out;
          } else if constexpr (std::is_same_v<T, node::Pointing>) {
            const auto& inner = run(*x.inner, labels);
            std::vector<Structure> out;
            for (const auto& l : labels) {
              for (const auto& s : inner) out.push_back(term::point(l, s));
            }
            charge(out.size());
            return out;
          } else if constexpr (std::is_same_v<T, node::RestrictCard>) {
            if (!x.predicate(labels.size())) return {};
            return run(*x.inner, labels);
          }
        },
        e.node());
  }

  std::vector<Structure> product(const Expr& left, const Expr& right, const Labels& labels) {
    const std::size_t n = labels.size();
    std::vector<Structure> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      Labels b, c;
      for (std::size_t i = 0; i < n; ++i) (mask >> i & 1 ? b : c).push_back(labels[i]);
      // The side on fewer labels goes first; an empty side makes the other
      // one irrelevant, which keeps recursive definitions from re-entering.
      const std::vector<Structure>* ls = nullptr;
      const std::vector<Structure>* rs = nullptr;
      if (b.size() <= c.size()) {
        ls = &run(left, b);
        if (ls->empty()) continue;
        rs = &run(right, c);
      } else {
        rs = &run(right, c);
        if (rs->empty()) continue;
        ls = &run(left, b);
      }
      charge(ls->size() * rs->size());
      for (const auto& l : *ls) {
        for (const auto& r : *rs) out.push_back(term::prod(l, r));
      }
    }
    return out;
  }

  std::vector<Structure> substitution(const Expr& outer, const Expr& inner, const Labels& labels) {
    std::vector<Structure> out;
    for_each_partition(labels, [&](const std::vector<Labels>& blocks) {
      std::vector<const std::vector<Structure>*> choices;
      for (const auto& block : blocks) {
        choices.push_back(&run(inner, block));
        if (choices.back()->empty()) return;
      }
      const auto& outers = run(outer, index_labels(blocks.size()));
      if (outers.empty()) return;
      std::size_t total = outers.size();
      for (const auto* c : choices) total *= c->size();
      charge(total);
      std::vector<std::size_t> pick(blocks.size(), 0);
      for (const auto& o : outers) {
        std::fill(pick.begin(), pick.end(), 0);
        for (;;) {
          std::vector<Structure> parts;
          for (std::size_t i = 0; i < blocks.size(); ++i) parts.push_back((*choices[i])[pick[i]]);
          out.push_back(term::comp(o, std::move(parts)));
          std::size_t i = 0;
          while (i < pick.size() && ++pick[i] == choices[i]->size()) pick[i++] = 0;
          if (i == pick.size()) break;
        }
      }
    });
    return out;
  }

  static std::vector<Structure> primitive(const Primitive& p, const Labels& a) {
    const std::size_t n = a.size();
    std::vector<Structure> out;
    auto maps = [&](auto keep) {
      for_each_permutation(n, [&](const std::vector<std::size_t>& perm) {
        if (!keep(perm)) return;
        std::vector<std::pair<Label, Label>> pairs;
        for (std::size_t i = 0; i < n; ++i) pairs.emplace_back(a[i], a[perm[i]]);
        out.push_back(term::map(std::move(pairs)));
      });
    };
    switch (p.kind) {
      case PrimitiveKind::Zero: break;
      case PrimitiveKind::One:
        if (n == 0) out.push_back(term::set({}));
        break;
      case PrimitiveKind::Singleton:
        if (n == 1) out.push_back(term::set(a));
        break;
      case PrimitiveKind::Set: out.push_back(term::set(a)); break;
      case PrimitiveKind::NonemptySet:
        if (n >= 1) out.push_back(term::set(a));
        break;
      case PrimitiveKind::KSet:
        if (n == p.k) out.push_back(term::set(a));
        break;
      case PrimitiveKind::List:
      case PrimitiveKind::NonemptyList:
        if (p.kind == PrimitiveKind::NonemptyList && n == 0) break;
        for_each_permutation(n, [&](const std::vector<std::size_t>& perm) {
          Labels seq;
          for (auto i : perm) seq.push_back(a[i]);
          out.push_back(term::list(std::move(seq)));
        });
        break;
      case PrimitiveKind::Cycle:
        if (n == 0) break;
        for_each_permutation(n - 1, [&](const std::vector<std::size_t>& perm) {
          Labels seq{a[0]};
          for (auto i : perm) seq.push_back(a[i + 1]);
          out.push_back(term::cycle(std::move(seq)));
        });
        break;
      case PrimitiveKind::Permutation: maps([](const auto&) { return true; }); break;
      case PrimitiveKind::Derangement:
        maps([](const auto& perm) {
          for (std::size_t i = 0; i < perm.size(); ++i) {
            if (perm[i] == i) return false;
          }
          return true;
        });
        break;
      case PrimitiveKind::Involution:
        maps([](const auto& perm) {
          for (std::size_t i = 0; i < perm.size(); ++i) {
            if (perm[perm[i]] != i) return false;
          }
          return true;
        });
        break;
      case PrimitiveKind::Endofunction: {
        std::vector<std::size_t> f(n, 0);
        for (;;) {
          std::vector<std::pair<Label, Label>> pairs;
          for (std::size_t i = 0; i < n; ++i) pairs.emplace_back(a[i], a[f[i]]);
          out.push_back(term::map(std::move(pairs)));
          std::size_t i = 0;
          while (i < n && ++f[i] == n) f[i++] = 0;
          if (i == n) break;
        }
        break;
      }
      case PrimitiveKind::Partition:
        for_each_partition(a, [&](const std::vector<Labels>& blocks) { out.push_back(term::partition(blocks)); });
        break;
      case PrimitiveKind::Subset:
      case PrimitiveKind::KSubset:
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
          if (p.kind == PrimitiveKind::KSubset && static_cast<std::size_t>(std::popcount(mask)) != p.k) continue;
          Labels chosen;
          for (std::size_t i = 0; i < n; ++i) {
            if (mask >> i & 1) chosen.push_back(a[i]);
          }
          out.push_back(term::subset(a, std::move(chosen)));
        }
        break;
      case PrimitiveKind::Graph:
      case PrimitiveKind::Digraph: {
        std::vector<std::pair<Label, Label>> slots;
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            if (p.kind == PrimitiveKind::Digraph || i < j) slots.emplace_back(a[i], a[j]);
          }
        }
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
          std::vector<std::pair<Label, Label>> chosen;
          for (std::size_t i = 0; i < slots.size(); ++i) {
            if (mask >> i & 1) chosen.push_back(slots[i]);
          }
          out.push_back(p.kind == PrimitiveKind::Graph ? term::graph(a, std::move(chosen))
                                                       : term::digraph(a, std::move(chosen)));
        }
        break;
      }
    }
    return out;
  }

  const Environment& env_;
  std::size_t budget_;
  std::size_t used_ = 0;
  std::map<std::tuple<const void*, std::string, Labels>, std::vector<Structure>> memo_;
  std::set<std::pair<std::string, Labels>> active_;
};

bool is_bijective_map(const Structure& s) {
  if (s.kind != TermKind::Map) return false;
  Labels dom, img;
  for (const auto& [x, fx] : s.pairs) {
    dom.push_back(x);
    img.push_back(fx);
  }
  return sorted(dom) == sorted(img) && std::adjacent_find(dom.begin(), dom.end()) == dom.end();
}

bool values_in_domain(const Structure& s) {
  std::set<Label> dom;
  for (const auto& [x, fx] : s.pairs) dom.insert(x);
  return std::all_of(s.pairs.begin(), s.pairs.end(), [&](const auto& p) { return dom.contains(p.second); });
}

bool conforms_primitive(const Primitive& p, const Structure& s) {
  const std::size_t n = labels_of(s).size();
  switch (p.kind) {
    case PrimitiveKind::Zero: return false;
    case PrimitiveKind::One: return s.kind == TermKind::Set && n == 0;
    case PrimitiveKind::Singleton: return s.kind == TermKind::Set && n == 1;
    case PrimitiveKind::Set: return s.kind == TermKind::Set;
    case PrimitiveKind::NonemptySet: return s.kind == TermKind::Set && n >= 1;
    case PrimitiveKind::KSet: return s.kind == TermKind::Set && n == p.k;
    case PrimitiveKind::List: return s.kind == TermKind::List;
    case PrimitiveKind::NonemptyList: return s.kind == TermKind::List && n >= 1;
    case PrimitiveKind::Cycle: return s.kind == TermKind::Cycle && n >= 1;
    case PrimitiveKind::Permutation: return is_bijective_map(s);
    case PrimitiveKind::Derangement:
      return is_bijective_map(s) &&
             std::none_of(s.pairs.begin(), s.pairs.end(), [](const auto& q) { return q.first == q.second; });
    case PrimitiveKind::Involution: {
      if (!is_bijective_map(s)) return false;
      std::map<Label, Label> f(s.pairs.begin(), s.pairs.end());
      return std::all_of(f.begin(), f.end(), [&](const auto& q) { return f.at(q.second) == q.first; });
    }
    case PrimitiveKind::Endofunction: return s.kind == TermKind::Map && values_in_domain(s);
    case PrimitiveKind::Partition:
      return s.kind == TermKind::Partition &&
             std::none_of(s.blocks.begin(), s.blocks.end(), [](const auto& b) { return b.empty(); });
    case PrimitiveKind::Subset: return s.kind == TermKind::Subset;
    case PrimitiveKind::KSubset: return s.kind == TermKind::Subset && s.chosen.size() == p.k;
    case PrimitiveKind::Graph:
      return s.kind == TermKind::Graph &&
             std::none_of(s.pairs.begin(), s.pairs.end(), [](const auto& q) { return q.first == q.second; });
    case PrimitiveKind::Digraph: return s.kind == TermKind::Digraph;
  }
  return false;
}

bool conforms_rec(const Expr& e, const Environment& env, const Structure& s, std::size_t depth) {
  if (depth > 10'000) throw Error(ErrorCode::RecursionGuard, "structure check does not terminate");
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Primitive>) {
          return conforms_primitive(x, s);
        } else if constexpr (std::is_same_v<T, node::Name>) {
          const Expr* rhs = env.find(x.id);
          if (rhs == nullptr) throw Error(ErrorCode::UnboundName, "name " + x.id + " is not defined");
          return s.kind == TermKind::Named && s.name == x.id && conforms_rec(*rhs, env, s.children[0], depth + 1);
        } else if constexpr (std::is_same_v<T, node::Sum>) {
          return s.kind == TermKind::Sum && conforms_rec(s.side == 0 ? *x.left : *x.right, env, s.children[0], depth + 1);
        } else if constexpr (std::is_same_v<T, node::Product>) {
          return s.kind == TermKind::Prod && conforms_rec(*x.left, env, s.children[0], depth + 1) &&
                 conforms_rec(*x.right, env, s.children[1], depth + 1);
        } else if constexpr (std::is_same_v<T, node::Substitute>) {
          if (s.kind != TermKind::Comp || !conforms_rec(*x.outer, env, s.children[0], depth + 1)) return false;
          for (std::size_t i = 1; i < s.children.size(); ++i) {
            if (s.blocks[i - 1].empty() || !conforms_rec(*x.inner, env, s.children[i], depth + 1)) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, node::Derivative>) {
          return s.kind == TermKind::Deriv && stars_in(labels_of(s.children[0])) == stars_in(labels_of(s)) + 1 &&
                 conforms_rec(*x.inner, env, s.children[0], depth + 1);
        } else if constexpr (std::is_same_v<T, node::Pointing>) {
          if (s.kind != TermKind::Point) return false;
          auto inner = labels_of(s.children[0]);
          return std::find(inner.begin(), inner.end(), s.point) != inner.end() &&
                 conforms_rec(*x.inner, env, s.children[0], depth + 1);
        } else if constexpr (std::is_same_v<T, node::RestrictCard>) {
          return x.predicate(labels_of(s).size()) && conforms_rec(*x.inner, env, s, depth + 1);
        }
      },
      e.node());
}

}  // namespace

std::vector<Structure> enumerate(const Expr& e, const Environment& env, const LabelSet& labels,
                                 const EnumerateOptions& options) {
  const std::size_t n = labels.size();
  const Integer expected = count(egf_of(e, env, n), n);
  if (expected > Integer(static_cast<unsigned long>(options.budget))) {
    throw Error(ErrorCode::BudgetExceeded, print(e) + " has " + expected.get_str() + " structures on " +
                                               std::to_string(n) + " labels, budget is " +
                                               std::to_string(options.budget));
  }
  Enumerator en(env, options.budget);
  auto out = en.run(e, labels.labels());
  sort_structures(out);
  return out;
}

bool conforms(const Expr& e, const Environment& env, const Structure& s) {
  const Labels all = sorted(labels_of(s));
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) return false;
  return conforms_rec(e, env, s, 0);
}

Structure transport(const Expr& e, const Environment& env, const Structure& s, const Bijection& sigma) {
  if (underlying_labels(s) != sigma.domain().labels()) {
    throw Error(ErrorCode::DomainMismatch, "structure labels do not match the domain of the bijection");
  }
  if (!conforms(e, env, s)) {
    throw Error(ErrorCode::InvalidStructure, "structure " + render(s) + " does not belong to " + print(e));
  }
  return relabel(s, [&](const Label& l) { return sigma(l); });
}

PermutationSplit decompose_permutation(const Structure& perm) {
  if (!is_bijective_map(perm)) throw Error(ErrorCode::NotABijection, render(perm) + " is not a permutation");
  Labels fixed;
  std::vector<std::pair<Label, Label>> moved;
  for (const auto& [x, fx] : perm.pairs) {
    if (x == fx) fixed.push_back(x);
    else moved.emplace_back(x, fx);
  }
  return {term::set(std::move(fixed)), term::map(std::move(moved))};
}

Structure reassemble(const PermutationSplit& split) {
  auto pairs = split.derangement.pairs;
  for (const auto& x : split.fixed_points.labels) pairs.emplace_back(x, x);
  return term::map(std::move(pairs));
}

Structure permutation_to_cycles(const Structure& perm) {
  if (!is_bijective_map(perm)) throw Error(ErrorCode::NotABijection, render(perm) + " is not a permutation");
  std::map<Label, Label, LabelLess> f(perm.pairs.begin(), perm.pairs.end());
  std::set<Label, LabelLess> seen;
  std::vector<Structure> cycles;
  for (const auto& [start, image] : f) {
    if (seen.contains(start)) continue;
    Labels orbit;
    for (Label x = start; !seen.contains(x); x = f.at(x)) {
      seen.insert(x);
      orbit.push_back(x);
    }
    cycles.push_back(term::cycle(std::move(orbit)));
  }
  Structure outer = term::set(index_labels(cycles.size()));
  return term::comp(std::move(outer), std::move(cycles));
}

Structure cycles_to_permutation(const Structure& cycles) {
  if (cycles.kind != TermKind::Comp) throw Error(ErrorCode::NotABijection, "expected a set of cycles");
  std::vector<std::pair<Label, Label>> pairs;
  for (std::size_t i = 1; i < cycles.children.size(); ++i) {
    const auto& c = cycles.children[i];
    if (c.kind != TermKind::Cycle) throw Error(ErrorCode::NotABijection, "expected a set of cycles");
    for (std::size_t j = 0; j < c.labels.size(); ++j) pairs.emplace_back(c.labels[j], c.labels[(j + 1) % c.labels.size()]);
  }
  return term::map(std::move(pairs));
}

FunctorialityReport check_functoriality(const Expr& e, const Environment& env, const LabelSet& labels,
                                        std::size_t trials, std::uint64_t seed) {
  FunctorialityReport report;
  const auto structures = enumerate(e, env, labels);
  report.structures = structures.size();
  auto fail = [&](std::string why) {
    report.passed = false;
    report.failure = std::move(why);
    return report;
  };

  const Bijection id = Bijection::identity(labels);
  for (const auto& s : structures) {
    if (transport(e, env, s, id) != s) return fail("identity transport moved " + render(s));
  }

  std::mt19937_64 rng(seed);
  auto random_bijection = [&](const LabelSet& from, const std::string& prefix) {
    Labels targets = from.labels();
    if (!prefix.empty()) {
      for (std::size_t i = 0; i < targets.size(); ++i) targets[i] = prefix + std::to_string(i + 1);
    }
    std::shuffle(targets.begin(), targets.end(), rng);
    std::vector<std::pair<Label, Label>> pairs;
    for (std::size_t i = 0; i < targets.size(); ++i) pairs.emplace_back(from.labels()[i], targets[i]);
    return Bijection(std::move(pairs));
  };
  auto describe = [](const Bijection& b) {
    std::string out;
    for (const auto& [x, y] : b.mapping()) out += (out.empty() ? "" : ",") + x + "->" + y;
    return out;
  };

  for (std::size_t t = 0; t < trials; ++t) {
    ++report.trials;
    // Odd trials permute A onto itself, even ones move to fresh label sets.
    const bool onto_self = t % 2 == 1;
    const Bijection sigma = random_bijection(labels, onto_self ? "" : "b");
    const LabelSet b = sigma.codomain();
    const Bijection tau = random_bijection(b, onto_self ? "" : "c");
    const Bijection composite = tau.after(sigma);

    std::vector<Structure> image;
    for (const auto& s : structures) {
      Structure once = transport(e, env, s, sigma);
      Structure twice = transport(e, env, once, tau);
      if (transport(e, env, s, composite) != twice) {
        return fail("transport along tau.sigma differs from two steps on " + render(s) + " with sigma = " +
                    describe(sigma) + ", tau = " + describe(tau));
      }
      image.push_back(std::move(once));
    }
    sort_structures(image);
    if (std::adjacent_find(image.begin(), image.end()) != image.end()) {
      return fail("transport along " + describe(sigma) + " is not injective");
    }
    if (image != enumerate(e, env, b)) return fail("transport along " + describe(sigma) + " is not onto F[B]");
  }
  return report;
}

}  // namespace species
