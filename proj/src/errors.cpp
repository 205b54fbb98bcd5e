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

#include "species/errors.hpp"

#include <utility>

namespace species {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OrderExceeded: return "OrderExceeded";
    case ErrorCode::NonIntegerCount: return "NonIntegerCount";
    case ErrorCode::NonzeroConstantTerm: return "NonzeroConstantTerm";
    case ErrorCode::ZeroConstantDivisor: return "ZeroConstantDivisor";
    case ErrorCode::IllFoundedEquation: return "IllFoundedEquation";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::UnboundName: return "UnboundName";
    case ErrorCode::NonemptyInnerOnEmptySet: return "NonemptyInnerOnEmptySet";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::RecursionGuard: return "RecursionGuard";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::NotABijection: return "NotABijection";
    case ErrorCode::InvalidStructure: return "InvalidStructure";
  }
  return "Unknown";
}

namespace {

std::string describe(std::size_t position, const std::vector<std::string>& expected,
                     const std::string& found) {
  std::string msg = "at position " + std::to_string(position) + ": expected ";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i > 0) msg += i + 1 == expected.size() ? " or " : ", ";
    msg += expected[i];
  }
  msg += ", found " + found;
  return msg;
}

}  // namespace

SyntaxError::SyntaxError(std::size_t position, std::vector<std::string> expected,
                         const std::string& found)
    : Error(ErrorCode::SyntaxError, describe(position, expected, found)),
      position_(position),
      expected_(std::move(expected)) {}

}  // namespace species
