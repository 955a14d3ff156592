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

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "nexus/term.hpp"

namespace nexus {

// Read-only index over a set of atoms, used as the target side of
// homomorphism searches. Term ids follow sorted term order, so iterating ids
// ascending visits terms in sorted order.
class AtomIndex {
 public:
  struct Relation {
    int arity = 0;
    std::vector<int> flat;  // tuple i occupies [i*arity, (i+1)*arity)
    // by_value[pos][term] lists the tuples having that term at pos.
    std::vector<std::vector<std::vector<std::uint32_t>>> by_value;

    std::size_t size() const { return arity ? flat.size() / arity : 0; }
    const int* tuple(std::size_t i) const { return flat.data() + i * arity; }
    bool contains(std::span<const int> args) const;
  };

  AtomIndex() = default;
  explicit AtomIndex(std::span<const Atom> atoms);

  // -1 when absent.
  int id_of(const Term& t) const;
  const Term& term(int id) const { return terms_[id]; }
  int num_terms() const { return static_cast<int>(terms_.size()); }
  const std::vector<Term>& terms() const { return terms_; }

  const Relation* find(const std::string& predicate, int arity) const;
  std::size_t num_atoms() const { return num_atoms_; }

 private:
  std::vector<Term> terms_;
  std::map<Term, int> ids_;
  std::map<std::pair<std::string, int>, Relation> relations_;
  std::size_t num_atoms_ = 0;
};

}  // namespace nexus
