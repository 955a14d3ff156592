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

#include <string>
#include <vector>

#include "nexus/term.hpp"

namespace nexus {

// Conjunctive formula  x1,...,xn <- atoms.  Atoms are kept sorted and unique.
class Formula {
 public:
  // InvalidArgument when atoms are empty or a free variable occurs in no atom.
  Formula(std::vector<std::string> free_vars, std::vector<Atom> atoms);

  const std::vector<std::string>& free_vars() const { return free_vars_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  int arity() const { return static_cast<int>(free_vars_.size()); }
  std::size_t size() const { return atoms_.size(); }
  bool is_open() const { return !free_vars_.empty(); }

  std::vector<Term> free_terms() const;
  // Variables that are not free, sorted.
  std::vector<Term> bound_variables() const;
  std::vector<std::string> constants() const;

  bool operator==(const Formula&) const = default;

 private:
  std::vector<std::string> free_vars_;
  std::vector<Atom> atoms_;
};

enum class Connectivity { Connected, NearlyConnectedOnly, Disconnected };

std::string_view to_string(Connectivity c);

// Whether a set of atoms is connected through shared terms.
bool is_connected(const std::vector<Atom>& atoms);

Connectivity classify_connectivity(const Formula& f);

// Open and at least nearly connected.
bool in_nxl(const Formula& f);

// Restricts f to the atoms reachable from its free variables through shared
// terms.
Formula nearly_connected_part(const Formula& f);

// Conjunction with the j-th free variables unified as zj and bound variables
// tagged "@1" / "@2" by side. ArityMismatch on different arities.
Formula conjoin(const Formula& lhs, const Formula& rhs);

// x1,...,xn <- top(x1),...,top(xn)
Formula top_formula(int n);

// Renames variables (free and bound) through the given map; unmapped names
// are left alone.
Formula rename_variables(const Formula& f,
                         const std::vector<std::pair<std::string, std::string>>& renaming);

}  // namespace nexus
