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
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace species {

enum class PrimitiveKind {
  Zero,           // O
  One,            // 1
  Singleton,      // X
  Set,            // E
  NonemptySet,    // Ep
  List,           // L
  NonemptyList,   // Lp
  Cycle,          // C
  Permutation,    // S
  Derangement,    // Der
  Involution,     // Inv
  Endofunction,   // End
  Partition,      // Part
  Subset,         // P
  KSubset,        // Pk[k]
  KSet,           // Ek[k]
  Graph,          // Gra
  Digraph,        // Gro
};

struct Primitive {
  PrimitiveKind kind;
  std::size_t k = 0;  // only meaningful for KSubset and KSet

  friend bool operator==(const Primitive&, const Primitive&) = default;
};

/// Concrete syntax of a primitive, e.g. "Ep" or "Pk[2]".
std::string to_string(const Primitive& p);

/// Primitive named by a reserved identifier that takes no parameter.
std::optional<PrimitiveKind> primitive_from_name(std::string_view name);

/// True for every identifier the grammar reserves.
bool is_reserved(std::string_view name);

enum class CardRelation { Equal, AtLeast, AtMost };

struct CardPredicate {
  CardRelation relation;
  std::size_t k;

  bool operator()(std::size_t n) const;
  friend bool operator==(const CardPredicate&, const CardPredicate&) = default;
};

class Expr;

namespace node {
struct Name {
  std::string id;
};
struct Sum {
  std::shared_ptr<const Expr> left, right;
};
struct Product {
  std::shared_ptr<const Expr> left, right;
};
struct Substitute {
  std::shared_ptr<const Expr> outer, inner;
};
struct Derivative {
  std::shared_ptr<const Expr> inner;
};
struct Pointing {
  std::shared_ptr<const Expr> inner;
};
struct RestrictCard {
  std::shared_ptr<const Expr> inner;
  CardPredicate predicate;
};
}  // namespace node

/// Immutable species expression tree. Copies share structure.
class Expr {
 public:
  using Node = std::variant<Primitive, node::Name, node::Sum, node::Product, node::Substitute, node::Derivative,
                            node::Pointing, node::RestrictCard>;

  explicit Expr(Node node) : node_(std::make_shared<const Node>(std::move(node))) {}

  const Node& node() const noexcept { return *node_; }

  template <typename T>
  const T* as() const noexcept {
    return std::get_if<T>(node_.get());
  }

  /// Identity of the shared node; stable for the lifetime of the tree.
  const void* id() const noexcept { return node_.get(); }

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  std::shared_ptr<const Node> node_;
};

Expr primitive(PrimitiveKind kind, std::size_t k = 0);
Expr name(std::string id);
Expr sum(Expr left, Expr right);
Expr product(Expr left, Expr right);
Expr substitute(Expr outer, Expr inner);
Expr derivative(Expr inner);
Expr pointing(Expr inner);
Expr restrict_card(Expr inner, CardPredicate predicate);

/// Renders an expression in the concrete grammar; parse_expr(print(e)) == e.
std::string print(const Expr& e);

/// Names referenced anywhere in e, in first-occurrence order.
std::vector<std::string> referenced_names(const Expr& e);

/// Ordered name -> right-hand side bindings; references may be mutually
/// recursive and in any order.
class Environment {
 public:
  using Bindings = std::map<std::string, Expr, std::less<>>;

  Environment() = default;

  /// Throws DuplicateName when `id` is already bound.
  void bind(const std::string& id, Expr rhs);

  const Expr* find(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id) != nullptr; }
  const Bindings& bindings() const noexcept { return bindings_; }
  std::size_t size() const noexcept { return bindings_.size(); }
  bool empty() const noexcept { return bindings_.empty(); }

 private:
  Bindings bindings_;
};

}  // namespace species
