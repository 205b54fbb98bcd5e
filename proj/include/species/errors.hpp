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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace species {

enum class ErrorCode {
  OrderExceeded,
  NonIntegerCount,
  NonzeroConstantTerm,
  ZeroConstantDivisor,
  IllFoundedEquation,
  SyntaxError,
  DuplicateName,
  UnboundName,
  NonemptyInnerOnEmptySet,
  BudgetExceeded,
  RecursionGuard,
  DomainMismatch,
  NotABijection,
  InvalidStructure,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every failure raised by the library. The code tells
/// callers (the CLI in particular) which error class occurred.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, std::vector<std::string> expected, const std::string& found);

  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::vector<std::string> expected_;
};

}  // namespace species
