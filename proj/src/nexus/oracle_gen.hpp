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
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nexus/kb_model.hpp"
#include "nexus/nxl.hpp"

namespace nexus {

// Node cap for the exhaustive oracles; TooLarge beyond it.
inline constexpr std::uint64_t kBruteNodeCap = 10'000'000;

// Instances of f found by exhaustive join-project evaluation over each
// tuple's summary: one relation per atom, bound variables joined out one at
// a time. Shares no code with the homomorphism engine. TooLarge when an
// intermediate relation exceeds node_cap rows.
TupleSet brute_instances(const Formula& f, const SelectiveKB& kb,
                         std::uint64_t node_cap = kBruteNodeCap);

struct DefinableUnit {
  TupleSet tuples;
  Formula witness;  // canonical characterization whose instances are tuples
};

// All proper units over the tuple space of the given arity whose canonical
// characterization has exactly them as brute-force instances. When within is
// given only its supersets are considered. TooLarge when the tuple space has
// more than 12 tuples.
std::vector<DefinableUnit> brute_definable_units(const SelectiveKB& kb, int arity,
                                                 const TupleSet* within = nullptr);

inline constexpr std::size_t kBruteEssExtraCap = 20;

// Intersection of the definable supersets of U. TooLarge when more than
// kBruteEssExtraCap tuples of the space lie outside U.
TupleSet brute_ess(const Unit& unit, const SelectiveKB& kb);

struct PredicateSig {
  std::string name;
  int arity;
};

struct RandomSkbConfig {
  int max_constants = 5;  // at most 6
  std::vector<PredicateSig> predicates{{"p", 2}, {"q", 2}};
  double atom_density = 0.3;  // chance that each possible non-top atom is present
  std::vector<std::string> selectors{"full", "neighborhood:1", "sigma0"};
  std::uint64_t seed = 1;
};

struct GeneratedInstance {
  SelectiveKB kb;
  Unit unit;
  std::string selector;          // textual form, empty for table selectors
  std::optional<Tuple> query;    // set by the 3-colorability generator
};

// Dataset over c1..cN with N in [2, max_constants], a selector from the
// configured list, and a unit of the requested arity with at most max_unit
// tuples. Deterministic per seed.
GeneratedInstance random_instance(const RandomSkbConfig& config, int unit_arity,
                                  int max_unit);

// Configuration for seeded cross-checks against the exhaustive oracles.
// Binary units get two constants, so the tuple space stays small enough for
// the exhaustive definability search.
RandomSkbConfig oracle_config(std::uint64_t seed, int unit_arity);

// Random formula of the given arity over a signature and constant pool, with
// body size in [1, max_atoms]; every free variable occurs.
Formula random_formula(std::mt19937_64& rng, const std::vector<PredicateSig>& sig,
                       const std::vector<std::string>& constants, int arity,
                       int max_atoms, int max_bound_vars);

// Every open, nearly connected formula of the given arity with at most
// max_atoms atoms whose arguments come from the free variables, up to
// max_bound_vars bound variables and the given constants. Intended for tiny
// signatures only.
std::vector<Formula> enumerate_formulas(const std::vector<PredicateSig>& sig,
                                        const std::vector<std::string>& constants,
                                        int arity, int max_atoms, int max_bound_vars);

// Disjoint r-cycles of the first m prime lengths with a unary unit holding the
// first element of each cycle. The selector picks each tuple's own cycle.
// m in [1, 4].
GeneratedInstance gen_prime_cycles(int m);

struct Graph {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
};

// One "u v" edge or lone "v" vertex per line, '#' comments.
Graph parse_edge_list(std::string_view text);
Graph complete_graph(int n);
Graph cycle_graph(int n);
Graph random_graph(int n, double edge_probability, std::uint64_t seed);

// Instance whose query tuple is in the essential expansion of the unit iff
// the graph is 3-colorable, lifted to arity k. Full selector.
GeneratedInstance gen_3col_instance(const Graph& g, int k);

// Independent backtracking 3-coloring check.
bool is_three_colorable(const Graph& g);

// top(c^s), twin_s(c, c^s) for every c and s in [2, k].
std::vector<Atom> gadget_tw(const std::vector<std::string>& constants, int k);
// focus(c) for every c.
std::vector<Atom> gadget_fc(const std::vector<std::string>& constants);
// Adds a copy of every atom with a replaced by "alias" in any subset of the
// positions holding a.
Dataset gadget_double(const Dataset& d, const std::string& a);
// Replaces every lifted c^s by c and "alias" by a.
Tuple gadget_off(const Tuple& t, const std::string& a);

// Name of the s-th lifted copy of c.
std::string lifted_name(const std::string& c, int s);

// ReservedSymbolCollision when atoms use focus, twin_s, alias or a lifted
// constant name.
void check_no_reserved_symbols(const std::vector<Atom>& atoms);

}  // namespace nexus
