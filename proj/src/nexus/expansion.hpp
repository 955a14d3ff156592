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
#include <string_view>
#include <utility>
#include <vector>

#include "nexus/kb_model.hpp"
#include "nexus/nxl.hpp"

namespace nexus {

inline constexpr std::uint64_t kDefaultTupleCap = 100'000;

// Whether the instances of the canonical characterization are exactly U.
bool is_definable(const Unit& unit, const SelectiveKB& kb);

// Whether t is an instance of the canonical characterization of U.
bool ess_member(const Unit& unit, const SelectiveKB& kb, const Tuple& t);

// Smallest definable superset of U.
TupleSet ess_set(const Unit& unit, const SelectiveKB& kb);

// U with one more tuple. NotProper cannot arise: adding tuples to a proper
// unit only separates columns further.
Unit extend_unit(const Unit& unit, const SelectiveKB& kb, const Tuple& t);

// t in ess(U + t2) and t2 in ess(U + t) respectively. Both throw
// OverlapWithUnit when t or t2 belongs to U.
bool gad1(const SelectiveKB& kb, const Unit& unit, const Tuple& t, const Tuple& t2);
bool gad2(const SelectiveKB& kb, const Unit& unit, const Tuple& t, const Tuple& t2);

enum class Verdict { Prec, PrecInv, Sim, Inc };
std::string_view to_string(Verdict v);

// Prec when only the first gadget accepts, PrecInv when only the second
// does, Sim when both do and Inc when neither does.
Verdict compare(const SelectiveKB& kb, const Unit& unit, const Tuple& t, const Tuple& t2);

struct ExpansionNode {
  Formula core;
  TupleSet instances;  // of the core
  TupleSet direct;     // instances not covered by any predecessor
};

// Nodes are sorted by instance count and then by printed core. An arc (a, b)
// means the core of b maps into the core of a and nothing lies strictly
// between them; b is the more general class.
struct ExpansionGraph {
  int arity = 0;
  std::vector<ExpansionNode> nodes;
  std::vector<std::pair<int, int>> arcs;  // sorted
  int source = 0;
};

// Throws TupleSpaceTooLarge when the candidate tuple space exceeds the cap,
// and InvariantViolation if the result fails a structural check.
ExpansionGraph build_expansion_graph(const Unit& unit, const SelectiveKB& kb,
                                     std::uint64_t tuple_cap = kDefaultTupleCap);

// Acyclicity, partition of the tuple space by the direct instances, a unique
// source equal to the core of U, and direct instances of the source equal to
// ess(U). Returns the first violated check, or an empty string.
std::string check_expansion_graph(const ExpansionGraph& g, const Unit& unit,
                                  const SelectiveKB& kb,
                                  std::uint64_t tuple_cap = kDefaultTupleCap);

}  // namespace nexus
