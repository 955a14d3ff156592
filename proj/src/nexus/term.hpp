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

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace nexus {

// Name of the unary predicate every dataset is closed under.
inline constexpr std::string_view kTopPredicate = "top";

enum class TermKind : std::uint8_t { Constant = 0, Variable = 1 };

struct Term {
  TermKind kind = TermKind::Constant;
  std::string name;

  static Term constant(std::string name) {
    return Term{TermKind::Constant, std::move(name)};
  }
  static Term variable(std::string name) {
    return Term{TermKind::Variable, std::move(name)};
  }

  bool is_constant() const { return kind == TermKind::Constant; }
  bool is_variable() const { return kind == TermKind::Variable; }

  auto operator<=>(const Term&) const = default;
};

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  int arity() const { return static_cast<int>(args.size()); }
  bool is_ground() const;
  bool mentions(const Term& t) const;

  auto operator<=>(const Atom&) const = default;
};

Atom make_atom(std::string predicate, std::initializer_list<Term> args);

// A tuple of constants. Entries are constant names.
struct Tuple {
  std::vector<std::string> entries;

  Tuple() = default;
  explicit Tuple(std::vector<std::string> e) : entries(std::move(e)) {}
  Tuple(std::initializer_list<std::string> e) : entries(e) {}

  int arity() const { return static_cast<int>(entries.size()); }
  const std::string& operator[](std::size_t i) const { return entries[i]; }

  auto operator<=>(const Tuple&) const = default;
};

using TupleSet = std::set<Tuple>;

// Identifier rules shared by constants, variables and predicates: nonempty,
// no whitespace, none of "(),|?" and no leading '#'.
bool is_valid_identifier(std::string_view name);

// Throws InvalidName when the name is unusable for a user constant/variable
// (includes the reserved "top" and the "d|" product prefix).
void check_term_name(std::string_view name, std::string_view what);
void check_predicate_name(std::string_view name);

// Textual forms: p(a,b) for atoms, (a,b) for tuples.
std::string to_string(const Term& t);
std::string to_string(const Atom& a);
std::string to_string(const Tuple& t);
std::string to_string(const TupleSet& tuples);

// Sorts and removes duplicates in place.
void normalize(std::vector<Atom>& atoms);

// Distinct terms of the given atoms, sorted.
std::vector<Term> terms_of(const std::vector<Atom>& atoms);

}  // namespace nexus
