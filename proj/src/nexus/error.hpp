// Copyright 2026 The Nexus Authors
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

#include <stdexcept>
#include <string>
#include <string_view>

namespace nexus {

enum class ErrorCode {
  Parse,
  Io,
  InvalidName,
  EmptyInput,
  ArityConflict,
  NonGround,
  TupleOutsideDomain,
  SelectorViolation,
  MixedArity,
  NotProper,
  UnknownConstant,
  EmptyUnit,
  ArityMismatch,
  Budget,
  TupleSpaceTooLarge,
  OverlapWithUnit,
  ReservedSymbolCollision,
  TooLarge,
  InvalidArgument,
  InvariantViolation,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Parse failure with 1-based line number (0 when not line-oriented).
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message)
      : Error(ErrorCode::Parse, format(line, message)), line_(line) {}

  int line() const { return line_; }

 private:
  static std::string format(int line, const std::string& message) {
    if (line <= 0) return message;
    return "line " + std::to_string(line) + ": " + message;
  }
  int line_;
};

}  // namespace nexus
