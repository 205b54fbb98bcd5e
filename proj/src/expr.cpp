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

#include "species/expr.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "species/errors.hpp"

namespace species {

namespace {

struct NamedPrimitive {
  std::string_view name;
  PrimitiveKind kind;
};

constexpr std::array kPrimitiveNames{
    NamedPrimitive{"O", PrimitiveKind::Zero},          NamedPrimitive{"X", PrimitiveKind::Singleton},
    NamedPrimitive{"E", PrimitiveKind::Set},           NamedPrimitive{"Ep", PrimitiveKind::NonemptySet},
    NamedPrimitive{"L", PrimitiveKind::List},          NamedPrimitive{"Lp", PrimitiveKind::NonemptyList},
    NamedPrimitive{"C", PrimitiveKind::Cycle},         NamedPrimitive{"S", PrimitiveKind::Permutation},
    NamedPrimitive{"Der", PrimitiveKind::Derangement}, NamedPrimitive{"Inv", PrimitiveKind::Involution},
    NamedPrimitive{"End", PrimitiveKind::Endofunction}, NamedPrimitive{"Part", PrimitiveKind::Partition},
    NamedPrimitive{"P", PrimitiveKind::Subset},        NamedPrimitive{"Gra", PrimitiveKind::Graph},
    NamedPrimitive{"Gro", PrimitiveKind::Digraph},
};

}  // namespace

std::string to_string(const Primitive& p) {
  switch (p.kind) {
    case PrimitiveKind::One: return "1";
    case PrimitiveKind::KSubset: return "Pk[" + std::to_string(p.k) + "]";
    case PrimitiveKind::KSet: return "Ek[" + std::to_string(p.k) + "]";
    default: break;
  }
  for (const auto& np : kPrimitiveNames) {
    if (np.kind == p.kind) return std::string(np.name);
  }
  return "?";
}

std::optional<PrimitiveKind> primitive_from_name(std::string_view name) {
  for (const auto& np : kPrimitiveNames) {
    if (np.name == name) return np.kind;
  }
  return std::nullopt;
}

bool is_reserved(std::string_view name) {
  return primitive_from_name(name).has_value() || name == "Pk" || name == "Ek" || name == "pt";
}

bool CardPredicate::operator()(std::size_t n) const {
  switch (relation) {
    case CardRelation::Equal: return n == k;
    case CardRelation::AtLeast: return n >= k;
    case CardRelation::AtMost: return n <= k;
  }
  return false;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.node().index() != b.node().index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = *b.as<T>();
        if constexpr (std::is_same_v<T, Primitive>) {
          return x == y;
        } else if constexpr (std::is_same_v<T, node::Name>) {
          return x.id == y.id;
        } else if constexpr (std::is_same_v<T, node::Sum> || std::is_same_v<T, node::Product>) {
          return *x.left == *y.left && *x.right == *y.right;
        } else if constexpr (std::is_same_v<T, node::Substitute>) {
          return *x.outer == *y.outer && *x.inner == *y.inner;
        } else if constexpr (std::is_same_v<T, node::RestrictCard>) {
          return x.predicate == y.predicate && *x.inner == *y.inner;
        } else {
          return *x.inner == *y.inner;
        }
      },
      a.node());
}

Expr primitive(PrimitiveKind kind, std::size_t k) { return Expr(Primitive{kind, k}); }
Expr name(std::string id) { return Expr(node::Name{std::move(id)}); }

namespace {
std::shared_ptr<const Expr> share(Expr e) { return std::make_shared<const Expr>(std::move(e)); }
}  // namespace

Expr sum(Expr left, Expr right) { return Expr(node::Sum{share(std::move(left)), share(std::move(right))}); }
Expr product(Expr left, Expr right) { return Expr(node::Product{share(std::move(left)), share(std::move(right))}); }
Expr substitute(Expr outer, Expr inner) {
  return Expr(node::Substitute{share(std::move(outer)), share(std::move(inner))});
}
Expr derivative(Expr inner) { return Expr(node::Derivative{share(std::move(inner))}); }
Expr pointing(Expr inner) { return Expr(node::Pointing{share(std::move(inner))}); }
Expr restrict_card(Expr inner, CardPredicate predicate) {
  return Expr(node::RestrictCard{share(std::move(inner)), predicate});
}

namespace {

// Binding strength: sums < products < postfix operators < atoms.
enum Prec { kSum = 0, kProduct = 1, kPostfix = 3, kAtom = 4 };

int precedence(const Expr& e) {
  return std::visit(
      [](const auto& x) -> int {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, node::Sum>) return kSum;
        else if constexpr (std::is_same_v<T, node::Product>) return kProduct;
        else if constexpr (std::is_same_v<T, node::Derivative> || std::is_same_v<T, node::Substitute> ||
                           std::is_same_v<T, node::RestrictCard>)
          return kPostfix;
        else return kAtom;
      },
      e.node());
}

void print_into(const Expr& e, int min_prec, std::string& out) {
  const bool wrap = precedence(e) < min_prec;
  if (wrap) out += '(';
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Primitive>) {
          out += to_string(x);
        } else if constexpr (std::is_same_v<T, node::Name>) {
          out += x.id;
        } else if constexpr (std::is_same_v<T, node::Sum>) {
          print_into(*x.left, kSum, out);
          out += " + ";
          print_into(*x.right, kProduct, out);
        } else if constexpr (std::is_same_v<T, node::Product>) {
          print_into(*x.left, kProduct, out);
          out += '*';
          print_into(*x.right, kPostfix, out);
        } else if constexpr (std::is_same_v<T, node::Substitute>) {
          print_into(*x.outer, kPostfix, out);
          out += '(';
          print_into(*x.inner, kSum, out);
          out += ')';
        } else if constexpr (std::is_same_v<T, node::Derivative>) {
          print_into(*x.inner, kPostfix, out);
          out += '\'';
        } else if constexpr (std::is_same_v<T, node::Pointing>) {
          out += "pt(";
          print_into(*x.inner, kSum, out);
          out += ')';
        } else if constexpr (std::is_same_v<T, node::RestrictCard>) {
          print_into(*x.inner, kPostfix, out);
          out += '[';
          switch (x.predicate.relation) {
            case CardRelation::Equal: out += '='; break;
            case CardRelation::AtLeast: out += ">="; break;
            case CardRelation::AtMost: out += "<="; break;
          }
          out += std::to_string(x.predicate.k) + ']';
        }
      },
      e.node());
  if (wrap) out += ')';
}

void collect_names(const Expr& e, std::vector<std::string>& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Primitive>) {
        } else if constexpr (std::is_same_v<T, node::Name>) {
          if (std::find(out.begin(), out.end(), x.id) == out.end()) out.push_back(x.id);
        } else if constexpr (std::is_same_v<T, node::Sum> || std::is_same_v<T, node::Product>) {
          collect_names(*x.left, out);
          collect_names(*x.right, out);
        } else if constexpr (std::is_same_v<T, node::Substitute>) {
          collect_names(*x.outer, out);
          collect_names(*x.inner, out);
        } else {
          collect_names(*x.inner, out);
        }
      },
      e.node());
}

}  // namespace

std::string print(const Expr& e) {
  std::string out;
  print_into(e, kSum, out);
  return out;
}

std::vector<std::string> referenced_names(const Expr& e) {
  std::vector<std::string> out;
  collect_names(e, out);
  return out;
}

void Environment::bind(const std::string& id, Expr rhs) {
  if (!bindings_.emplace(id, std::move(rhs)).second) {
    throw Error(ErrorCode::DuplicateName, "name " + id + " is defined more than once");
  }
}

const Expr* Environment::find(std::string_view id) const {
  auto it = bindings_.find(id);
  return it == bindings_.end() ? nullptr : &it->second;
}

}  // namespace species
