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

#include <string_view>

#include "species/expr.hpp"

namespace species {

/// Parses one species expression.
///
///   expr    := term { "+" term }
///   term    := factor { "*" factor }
///   factor  := postfix { "^" integer }
///   postfix := atom { "'" | "(" expr ")" | "[" ("=" | ">=" | "<=") integer "]" }
///   atom    := "pt" "(" expr ")" | ("Pk" | "Ek") "[" integer "]"
///            | "(" expr ")" | ident | "0" | "1"
///
/// A call F(G) is substitution, F' the derivative and F[>=k] restricts F to
/// label sets of the given cardinality. F^k expands to a k-fold product.
/// Throws SyntaxError with the offending position and the expected tokens.
Expr parse_expr(std::string_view text);

/// Parses a definitions file: one `Name = expr` per line, `#` starts a
/// comment. Throws SyntaxError, DuplicateName or UnboundName.
Environment parse_defs(std::string_view text);

}  // namespace species
