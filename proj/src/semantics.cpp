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

#include "species/semantics.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <utility>

namespace species {

namespace {

CountSeries closed_form(const Primitive& p, std::size_t order, const EvalOptions& options) {
  auto by_count = [order](auto f) { return CountSeries::from_count_fn(order, f); };
  switch (p.kind) {
    case PrimitiveKind::Zero: return CountSeries::zero(order);
    case PrimitiveKind::One: return CountSeries::constant(1, order);
    case PrimitiveKind::Singleton: return CountSeries::singleton(order);
    case PrimitiveKind::Set: return by_count([](std::size_t) { return Integer(1); });
    case PrimitiveKind::NonemptySet: return by_count([](std::size_t n) { return Integer(n >= 1 ? 1 : 0); });
    case PrimitiveKind::KSet: return by_count([k = p.k](std::size_t n) { return Integer(n == k ? 1 : 0); });
    case PrimitiveKind::List:
    case PrimitiveKind::Permutation: return by_count([](std::size_t n) { return factorial(n); });
    case PrimitiveKind::NonemptyList:
      return by_count([](std::size_t n) { return n >= 1 ? factorial(n) : Integer(0); });
    case PrimitiveKind::Cycle: return by_count([](std::size_t n) { return n >= 1 ? factorial(n - 1) : Integer(0); });
    case PrimitiveKind::Derangement:
      // S = E . Der
      return divide(primitive_series({PrimitiveKind::Permutation}, order, options),
                    primitive_series({PrimitiveKind::Set}, order, options));
    case PrimitiveKind::Involution:
      // Inv = E(X + E_2)
      return compose(primitive_series({PrimitiveKind::Set}, order, options),
                     add(primitive_series({PrimitiveKind::Singleton}, order, options),
                         primitive_series({PrimitiveKind::KSet, 2}, order, options)));
    case PrimitiveKind::Endofunction: return by_count([](std::size_t n) { return power(Integer(n), n); });
    case PrimitiveKind::Partition:
      return compose(primitive_series({PrimitiveKind::Set}, order, options),
                     primitive_series({PrimitiveKind::NonemptySet}, order, options));
    case PrimitiveKind::Subset: return by_count([](std::size_t n) { return power(Integer(2), n); });
    case PrimitiveKind::KSubset: return by_count([k = p.k](std::size_t n) { return binomial(n, k); });
    case PrimitiveKind::Graph: return by_count([](std::size_t n) { return power(Integer(2), n * (n - (n > 0)) / 2); });
    case PrimitiveKind::Digraph: return by_count([](std::size_t n) { return power(Integer(2), n * n); });
  }
  return CountSeries::zero(order);
}

/// Strongly connected components of the name dependency graph.
class Components {
 public:
  explicit Components(const Environment& env) : env_(env) {
    for (const auto& [id, rhs] : env.bindings()) {
      if (!index_.contains(id)) connect(id);
    }
  }

  std::size_t component_of(const std::string& id) const { return component_.at(id); }
  const std::vector<std::string>& members(std::size_t c) const { return members_[c]; }
  bool recursive(std::size_t c) const { return recursive_[c]; }

 private:
  // Tarjan's algorithm; unbound references are skipped here and reported
  // when evaluation reaches them.
  void connect(const std::string& id) {
    index_[id] = low_[id] = counter_++;
    stack_.push_back(id);
    on_stack_.insert(id);
    for (const auto& ref : referenced_names(*env_.find(id))) {
      if (!env_.contains(ref)) continue;
      if (!index_.contains(ref)) {
        connect(ref);
        low_[id] = std::min(low_[id], low_[ref]);
      } else if (on_stack_.contains(ref)) {
        low_[id] = std::min(low_[id], index_[ref]);
      }
    }
    if (low_[id] != index_[id]) return;
    std::vector<std::string> group;
    std::string member;
    do {
      member = stack_.back();
      stack_.pop_back();
      on_stack_.erase(member);
      component_[member] = members_.size();
      group.push_back(member);
    } while (member != id);
    std::sort(group.begin(), group.end());
    bool self_loop = false;
    if (group.size() == 1) {
      auto refs = referenced_names(*env_.find(id));
      self_loop = std::find(refs.begin(), refs.end(), id) != refs.end();
    }
    recursive_.push_back(group.size() > 1 || self_loop);
    members_.push_back(std::move(group));
  }

  const Environment& env_;
  std::map<std::string, std::size_t> index_, low_, component_;
  std::vector<std::string> stack_;
  std::set<std::string> on_stack_;
  std::vector<std::vector<std::string>> members_;
  std::vector<bool> recursive_;
  std::size_t counter_ = 0;
};

class Evaluator {
 public:
  Evaluator(const Environment& env, const EvalOptions& options) : env_(env), options_(options), components_(env) {}

  CountSeries eval(const Expr& e, std::size_t order) { return eval(e, order, nullptr); }

  const Components& components() const { return components_; }

  void solve_component(std::size_t c, std::size_t order) {
    std::vector<SeriesEquation> equations;
    for (const auto& id : components_.members(c)) {
      const Expr& rhs = *env_.find(id);
      equations.push_back({id, [this, rhs, c](const SeriesMap& current, std::size_t n) {
                             Solving ctx{c, n, &current};
                             return eval(rhs, n, &ctx);
                           }});
    }
    for (auto& [id, s] : solve_system(equations, order)) memo_.insert_or_assign({id, order}, std::move(s));
  }

 private:
  struct Solving {
    std::size_t component;
    std::size_t order;
    const SeriesMap* current;
  };

  CountSeries named(const std::string& id, std::size_t order, const Solving* ctx) {
    if (!env_.contains(id)) throw Error(ErrorCode::UnboundName, "name " + id + " is not defined");
    const std::size_t c = components_.component_of(id);
    if (ctx != nullptr && ctx->component == c) {
      if (order != ctx->order) {
        throw Error(ErrorCode::IllFoundedEquation,
                    "derivative of " + id + " inside its own recursive definition is not supported");
      }
      return ctx->current->at(id);
    }
    if (auto it = memo_.find({id, order}); it != memo_.end()) return it->second;
    if (components_.recursive(c)) {
      solve_component(c, order);
      return memo_.at({id, order});
    }
    CountSeries s = eval(*env_.find(id), order, nullptr);
    memo_.insert_or_assign({id, order}, s);
    return s;
  }

  CountSeries eval(const Expr& e, std::size_t order, const Solving* ctx) {
    return std::visit(
        [&](const auto& x) -> CountSeries {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Primitive>) {
            return primitive_series(x, order, options_);
          } else if constexpr (std::is_same_v<T, node::Name>) {
            return named(x.id, order, ctx);
          } else if constexpr (std::is_same_v<T, node::Sum>) {
            return add(eval(*x.left, order, ctx), eval(*x.right, order, ctx));
          } else if constexpr (std::is_same_v<T, node::Product>) {
            return multiply(eval(*x.left, order, ctx), eval(*x.right, order, ctx));
          } else if constexpr (std::is_same_v<T, node::Substitute>) {
            CountSeries inner = eval(*x.inner, order, ctx);
            if (sgn(inner.coefficients()[0]) != 0) {
              throw Error(ErrorCode::NonemptyInnerOnEmptySet,
                          "inner species " + print(*x.inner) + " has " + count(inner, 0).get_str() +
                              " structure(s) on the empty set");
            }
            return compose(eval(*x.outer, order, ctx), inner);
          } else if constexpr (std::is_same_v<T, node::Derivative>) {
            return derive(eval(*x.inner, order + 1, ctx));
          } else if constexpr (std::is_same_v<T, node::Pointing>) {
            return point(eval(*x.inner, order, ctx));
          } else if constexpr (std::is_same_v<T, node::RestrictCard>) {
            return mask(eval(*x.inner, order, ctx), x.predicate);
          }
        },
        e.node());
  }

  const Environment& env_;
  const EvalOptions& options_;
  Components components_;
  std::map<std::pair<std::string, std::size_t>, CountSeries> memo_;
};

void walk(const Expr& e, const std::function<void(const Expr&)>& visit) {
  visit(e);
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Primitive> || std::is_same_v<T, node::Name>) {
        } else if constexpr (std::is_same_v<T, node::Sum> || std::is_same_v<T, node::Product>) {
          walk(*x.left, visit);
          walk(*x.right, visit);
        } else if constexpr (std::is_same_v<T, node::Substitute>) {
          walk(*x.outer, visit);
          walk(*x.inner, visit);
        } else {
          walk(*x.inner, visit);
        }
      },
      e.node());
}

/// Bound names reachable from e (sorted) and unbound references found on the way.
std::pair<std::vector<std::string>, std::vector<std::string>> reachable(const Expr& e, const Environment& env) {
  std::set<std::string> seen, missing;
  std::vector<std::string> todo = referenced_names(e);
  while (!todo.empty()) {
    std::string id = todo.back();
    todo.pop_back();
    if (seen.contains(id) || missing.contains(id)) continue;
    const Expr* rhs = env.find(id);
    if (rhs == nullptr) {
      missing.insert(id);
      continue;
    }
    seen.insert(id);
    for (auto& ref : referenced_names(*rhs)) todo.push_back(ref);
  }
  return {{seen.begin(), seen.end()}, {missing.begin(), missing.end()}};
}

}  // namespace

CountSeries primitive_series(const Primitive& p, std::size_t order, const EvalOptions& options) {
  CountSeries s = closed_form(p, order, options);
  auto it = options.count_overrides.find(p.kind);
  if (it == options.count_overrides.end() || it->second.empty()) return s;
  std::vector<Integer> c = counts(s);
  for (const auto& [n, value] : it->second) {
    if (n <= order) c[n] = value;
  }
  return CountSeries::from_counts(c);
}

CountSeries egf_of(const Expr& e, const Environment& env, std::size_t order, const EvalOptions& options) {
  Evaluator ev(env, options);
  return ev.eval(e, order);
}

bool ValidationReport::has(ErrorCode code) const noexcept {
  return std::any_of(failures.begin(), failures.end(), [code](const auto& f) { return f.code == code; });
}

ValidationReport validate(const Expr& e, const Environment& env, std::size_t order) {
  ValidationReport report;
  auto [names, missing] = reachable(e, env);
  for (const auto& id : missing) {
    report.failures.push_back({ErrorCode::UnboundName, "name " + id + " is not defined", id});
  }
  if (!report.ok()) return report;

  const EvalOptions options;
  Evaluator ev(env, options);

  // Recursive systems first: substitution checks below need their solutions.
  std::set<std::size_t> done;
  for (const auto& id : names) {
    const std::size_t c = ev.components().component_of(id);
    if (!ev.components().recursive(c) || !done.insert(c).second) continue;
    try {
      ev.solve_component(c, order);
    } catch (const Error& err) {
      std::string subject;
      for (const auto& m : ev.components().members(c)) subject += (subject.empty() ? "" : ",") + m;
      report.failures.push_back({err.code(), err.what(), subject});
    }
  }

  std::vector<Expr> roots{e};
  for (const auto& id : names) roots.push_back(*env.find(id));
  std::set<std::string> flagged;
  for (const auto& root : roots) {
    walk(root, [&](const Expr& sub) {
      const auto* s = sub.as<node::Substitute>();
      if (s == nullptr) return;
      try {
        CountSeries inner = ev.eval(*s->inner, 0);
        if (sgn(inner.coefficients()[0]) != 0 && flagged.insert(print(*s->inner)).second) {
          report.failures.push_back({ErrorCode::NonemptyInnerOnEmptySet,
                                     "substitution " + print(sub) + " has an inner species with structures on the empty set",
                                     print(*s->inner)});
        }
      } catch (const Error&) {
        // Reported through the recursive-system check.
      }
    });
  }
  if (!report.ok()) return report;

  try {
    ev.eval(e, order);
  } catch (const Error& err) {
    report.failures.push_back({err.code(), err.what(), print(e)});
  }
  return report;
}

}  // namespace species
