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

#include "nexus/term.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "nexus/error.hpp"

namespace nexus {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Io: return "Io";
    case ErrorCode::InvalidName: return "InvalidName";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::ArityConflict: return "ArityConflict";
    case ErrorCode::NonGround: return "NonGround";
    case ErrorCode::TupleOutsideDomain: return "TupleOutsideDomain";
    case ErrorCode::SelectorViolation: return "SelectorViolation";
    case ErrorCode::MixedArity: return "MixedArity";
    case ErrorCode::NotProper: return "NotProper";
    case ErrorCode::UnknownConstant: return "UnknownConstant";
    case ErrorCode::EmptyUnit: return "Empty";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::Budget: return "Budget";
    case ErrorCode::TupleSpaceTooLarge: return "TupleSpaceTooLarge";
    case ErrorCode::OverlapWithUnit: return "OverlapWithUnit";
    case ErrorCode::ReservedSymbolCollision: return "ReservedSymbolCollision";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

bool Atom::is_ground() const {
  return std::all_of(args.begin(), args.end(),
                     [](const Term& t) { return t.is_constant(); });
}

bool Atom::mentions(const Term& t) const {
  return std::find(args.begin(), args.end(), t) != args.end();
}

Atom make_atom(std::string predicate, std::initializer_list<Term> args) {
  return Atom{std::move(predicate), std::vector<Term>(args)};
}

bool is_valid_identifier(std::string_view name) {
  if (name.empty() || name.front() == '#') return false;
  for (char c : name) {
    if (std::isspace(static_cast<unsigned char>(c))) return false;
    switch (c) {
      case '(': case ')': case ',': case '|': case '?':
        return false;
      default:
        break;
    }
  }
  return true;
}

void check_term_name(std::string_view name, std::string_view what) {
  if (!is_valid_identifier(name)) {
    throw Error(ErrorCode::InvalidName,
                "invalid " + std::string(what) + " name '" + std::string(name) + "'");
  }
  if (name == kTopPredicate) {
    throw Error(ErrorCode::InvalidName,
                "'top' is reserved and cannot be used as a " + std::string(what));
  }
}

void check_predicate_name(std::string_view name) {
  if (!is_valid_identifier(name)) {
    throw Error(ErrorCode::InvalidName,
                "invalid predicate name '" + std::string(name) + "'");
  }
}

std::string to_string(const Term& t) { return t.name; }

std::string to_string(const Atom& a) {
  std::string out = a.predicate;
  out += '(';
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) out += ',';
    out += a.args[i].name;
  }
  out += ')';
  return out;
}

std::string to_string(const Tuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.entries.size(); ++i) {
    if (i) out += ',';
    out += t.entries[i];
  }
  out += ')';
  return out;
}

std::string to_string(const TupleSet& tuples) {
  std::string out = "{";
  bool first = true;
  for (const auto& t : tuples) {
    if (!first) out += ", ";
    first = false;
    out += to_string(t);
  }
  out += '}';
  return out;
}

void normalize(std::vector<Atom>& atoms) {
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
}

std::vector<Term> terms_of(const std::vector<Atom>& atoms) {
  std::vector<Term> out;
  for (const auto& a : atoms) out.insert(out.end(), a.args.begin(), a.args.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace nexus
