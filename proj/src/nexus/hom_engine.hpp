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
#include <optional>
#include <span>
#include <vector>

#include "nexus/atom_index.hpp"
#include "nexus/kb_model.hpp"
#include "nexus/nxl.hpp"
#include "nexus/term.hpp"

namespace nexus {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

using TermMap = std::map<Term, Term>;

struct SearchOptions {
  std::uint64_t budget = kDefaultBudget;
  // Variables must take pairwise distinct variable values that are not
  // already used by a pin. Used for isomorphism tests.
  bool injective = false;
  // Value tried first for a variable when it is still in its domain.
  const TermMap* preferred = nullptr;
};

// Backtracking search for homomorphisms from a set of atoms into an indexed
// target. Constants of the source map to themselves; pinned terms map to
// their pins. Arc consistency is maintained on every atom and the variable
// with the fewest remaining values is branched on first, ties broken by
// name. Throws Budget when the node count exceeds the configured cap.
class HomSearch {
 public:
  HomSearch(std::span<const Atom> source, const AtomIndex& target,
            const TermMap& pinned, const SearchOptions& options = {});
  ~HomSearch();
  HomSearch(const HomSearch&) = delete;
  HomSearch& operator=(const HomSearch&) = delete;

  // Full assignment for every source term.
  std::optional<TermMap> first();

  // Distinct value vectors for the given source terms over all
  // homomorphisms, sorted.
  std::vector<std::vector<Term>> project(const std::vector<Term>& terms);

  std::uint64_t nodes() const;

 private:
  struct Impl;
  Impl* impl_;
};

std::optional<TermMap> find_hom(std::span<const Atom> source,
                                const AtomIndex& target, const TermMap& pinned,
                                const SearchOptions& options = {});

// Answers of f over d. Arity-0 formulas yield {()} when they hold.
TupleSet evaluate(const Formula& f, const AtomIndex& d,
                  std::uint64_t budget = kDefaultBudget);
TupleSet evaluate(const Formula& f, const Dataset& d,
                  std::uint64_t budget = kDefaultBudget);
bool holds(const Formula& f, const Dataset& d,
           std::uint64_t budget = kDefaultBudget);

// Whether t satisfies f in its own summary.
bool is_instance(const Formula& f, const SelectiveKB& kb, const Tuple& t);

// Every tuple over the domain whose summary satisfies f. Uses the thread count
// of the knowledge base; the result is the same for any count.
TupleSet instances(const Formula& f, const SelectiveKB& kb,
                   std::uint64_t tuple_cap = 10'000'000);

// A homomorphism from lhs to rhs that sends the i-th free variable of lhs to
// the i-th free variable of rhs.
bool maps_to(const Formula& lhs, const Formula& rhs,
             std::uint64_t budget = kDefaultBudget);
bool equivalent(const Formula& a, const Formula& b,
                std::uint64_t budget = kDefaultBudget);
// Identical up to a bijective renaming of variables that fixes the free
// positions.
bool isomorphic(const Formula& a, const Formula& b,
                std::uint64_t budget = kDefaultBudget);

// Minimal equivalent subformula, canonically renamed.
Formula core_of_formula(const Formula& f, std::uint64_t budget = kDefaultBudget);

// Free variables become x1..xn; the others y1,y2,... in breadth-first order
// from the free variables, visiting atoms in sorted order. Prefixes are
// extended with underscores if a constant would clash with a generated name.
Formula canonical_rename(const Formula& f);

// Equivalence class of a formula, represented by its canonical core.
class FormulaClass {
 public:
  explicit FormulaClass(const Formula& f, std::uint64_t budget = kDefaultBudget);
  const Formula& representative() const { return rep_; }
  bool operator==(const FormulaClass& other) const;

 private:
  Formula rep_;
};

}  // namespace nexus
