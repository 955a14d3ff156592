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

#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <random>

#include "nexus/characterize.hpp"
#include "nexus/error.hpp"
#include "nexus/hom_engine.hpp"
#include "nexus/oracle_gen.hpp"
#include "test_support.hpp"

namespace nexus {
namespace {

using testing::fig1_kb;
using testing::phi_a;
using testing::tup;

Formula f(const char* text) { return parse_formula(text); }

// Exhaustive answers: every assignment of every variable over the domain.
TupleSet answers_by_assignment(const Formula& phi, const Dataset& d) {
  std::vector<std::string> vars;
  for (const auto& t : terms_of(phi.atoms())) {
    if (t.is_variable()) vars.push_back(t.name);
  }
  std::set<Atom> facts(d.atoms().begin(), d.atoms().end());
  std::map<std::string, std::string> value;
  TupleSet out;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == vars.size()) {
      for (const auto& a : phi.atoms()) {
        Atom g{a.predicate, {}};
        for (const auto& t : a.args) g.args.push_back(t.is_variable() ? Term::constant(value[t.name]) : t);
        if (!facts.count(g)) return;
      }
      Tuple t;
      for (const auto& x : phi.free_vars()) t.entries.push_back(value[x]);
      out.insert(t);
      return;
    }
    for (const auto& c : d.domain()) {
      value[vars[i]] = c;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

// Smallest subset of the atoms that is equivalent to phi, by trying subsets
// in order of size.
std::size_t minimal_equivalent_size(const Formula& phi) {
  const auto& atoms = phi.atoms();
  const std::size_t n = atoms.size();
  for (std::size_t size = 1; size <= n; ++size) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != size) continue;
      std::vector<Atom> sub;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask >> i & 1) sub.push_back(atoms[i]);
      }
      bool covers = true;
      for (const auto& x : phi.free_terms()) {
        covers = covers && std::any_of(sub.begin(), sub.end(), [&](const Atom& a) { return a.mentions(x); });
      }
      if (!covers) continue;
      const Formula candidate(phi.free_vars(), sub);
      if (maps_to(phi, candidate)) return size;
    }
  }
  return n;
}

Dataset random_dataset(std::mt19937_64& rng, int constants, int atoms) {
  std::vector<Atom> out;
  for (int i = 0; i < atoms; ++i) {
    const bool binary = rng() % 3 != 0;
    Atom a{binary ? (rng() % 2 ? "p" : "q") : "u", {}};
    for (int j = 0; j < (binary ? 2 : 1); ++j) {
      a.args.push_back(Term::constant("c" + std::to_string(rng() % constants)));
    }
    out.push_back(a);
  }
  return Dataset::close_under_top(out);
}

TEST(FindHom, AlignedWithPins) {
  const Formula phi1 = f("x <- isa(x,ap), located(x,?y), partOf(?y,US)");
  const AtomIndex target(phi_a().atoms());
  const TermMap pin{{Term::variable("x"), Term::variable("x")}};
  const auto h = find_hom(phi1.atoms(), target, pin);
  ASSERT_TRUE(h);
  EXPECT_EQ(h->at(Term::variable("y")), Term::constant("Florida"));
  EXPECT_FALSE(find_hom(phi_a().atoms(), AtomIndex(phi1.atoms()), pin));
}

TEST(FindHom, IdentityOnItself) {
  const Formula phi = phi_a();
  const auto h = find_hom(phi.atoms(), AtomIndex(phi.atoms()), {});
  ASSERT_TRUE(h);
  for (const auto& [from, to] : *h) EXPECT_EQ(from, to);
}

TEST(FindHom, BudgetExhaustion) {
  // A 5-clique has no homomorphism into a 4-clique, and the refutation needs
  // many nodes.
  std::vector<Atom> k5, k4;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      if (i != j) {
        k5.push_back(make_atom("e", {Term::variable("v" + std::to_string(i)), Term::variable("v" + std::to_string(j))}));
        if (i < 4 && j < 4) k4.push_back(make_atom("e", {Term::constant("c" + std::to_string(i)), Term::constant("c" + std::to_string(j))}));
      }
  const AtomIndex target(k4);
  EXPECT_FALSE(find_hom(k5, target, {}));
  try {
    find_hom(k5, target, {}, SearchOptions{3, false, nullptr});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Budget);
  }
}

TEST(Evaluate, Outputs) {
  const Dataset d = testing::fig1_dataset();
  EXPECT_EQ(evaluate(f("y <- located(?x,y), partOf(y,US)"), d), (TupleSet{tup("(California)"), tup("(Florida)")}));
  EXPECT_EQ(evaluate(top_formula(1), d).size(), d.domain().size());
  EXPECT_TRUE(evaluate(f("x <- isa(x,nowhere)"), d).empty());
}

TEST(Evaluate, MatchesExhaustiveAssignments) {
  std::mt19937_64 rng(3);
  const std::vector<PredicateSig> sig{{"p", 2}, {"q", 2}, {"u", 1}};
  for (int i = 0; i < 300; ++i) {
    const Dataset d = random_dataset(rng, 2 + static_cast<int>(rng() % 4), 4 + static_cast<int>(rng() % 6));
    const Formula phi = random_formula(rng, sig, {"c0", "c1"}, 1 + i % 2, 6, 3);
    EXPECT_EQ(evaluate(phi, d), answers_by_assignment(phi, d)) << format_formula(phi);
  }
}

TEST(Instances, RunningExample) {
  const auto kb = fig1_kb("sigma0");
  EXPECT_TRUE(instances(f("y <- located(?x,y), partOf(y,US)"), kb).empty());
  EXPECT_EQ(instances(phi_a(), kb), testing::u0(kb).as_set());
}

TEST(Instances, ContainedInAnswersAndIndependentOfThreads) {
  auto kb = fig1_kb("sigma0");
  const Formula phi = f("x <- isa(x,ap), located(x,?y)");
  const TupleSet one = instances(phi, kb);
  EXPECT_TRUE(std::includes(evaluate(phi, kb.dataset()).begin(), evaluate(phi, kb.dataset()).end(),
                            one.begin(), one.end()));
  kb.set_options({kDefaultBudget, 4});
  EXPECT_EQ(instances(phi, kb), one);
}

TEST(Instances, ArityMismatchOnMembership) {
  const auto kb = fig1_kb();
  try {
    is_instance(phi_a(), kb, tup("(Epcot,US)"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ArityMismatch);
  }
}

TEST(MapsTo, HomOrder) {
  const Formula phi5 = f("x <- isa(x,tp), located(x,Florida)");
  EXPECT_TRUE(maps_to(phi5, phi_a()));
  EXPECT_FALSE(maps_to(phi_a(), phi5));
  EXPECT_TRUE(maps_to(phi_a(), phi_a()));
  try {
    maps_to(phi5, f("x,y <- p(x,y)"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ArityMismatch);
  }
}

TEST(MapsTo, EquivalentFormulasAgreeEverywhere) {
  std::mt19937_64 rng(5);
  const std::vector<PredicateSig> sig{{"p", 2}, {"u", 1}};
  int pairs = 0;
  for (int i = 0; i < 3000 && pairs < 100; ++i) {
    const Formula a = random_formula(rng, sig, {"c0"}, 1, 4, 2);
    const Formula b = random_formula(rng, sig, {"c0"}, 1, 4, 2);
    if (!equivalent(a, b)) continue;
    ++pairs;
    for (int k = 0; k < 5; ++k) {
      const Dataset d = random_dataset(rng, 3, 6);
      EXPECT_EQ(evaluate(a, d), evaluate(b, d));
      SelectiveKB kb(d, SelectorSpec::parse("neighborhood:1"));
      EXPECT_EQ(instances(a, kb), instances(b, kb));
    }
  }
  EXPECT_GE(pairs, 20);
}

TEST(MapsTo, Composition) {
  std::mt19937_64 rng(9);
  const std::vector<PredicateSig> sig{{"p", 2}};
  for (int i = 0; i < 300; ++i) {
    const Formula a = random_formula(rng, sig, {}, 1, 3, 2);
    const Formula b = random_formula(rng, sig, {}, 1, 3, 2);
    const Formula c = random_formula(rng, sig, {}, 1, 3, 2);
    if (maps_to(a, b) && maps_to(b, c)) EXPECT_TRUE(maps_to(a, c));
  }
}

TEST(Core, DropsRedundantAtoms) {
  const Formula core = core_of_formula(f("x <- isa(x,tp), located(x,?y), located(x,Florida)"));
  EXPECT_TRUE(isomorphic(core, f("x <- isa(x,tp), located(x,Florida)")));
  EXPECT_EQ(core_of_formula(f("x <- p(x,x)")), f("x1 <- p(x1,x1)"));
}

TEST(Core, MinimalAgainstSubsetSearch) {
  std::mt19937_64 rng(13);
  const std::vector<PredicateSig> sig{{"p", 2}, {"q", 2}};
  for (int i = 0; i < 150; ++i) {
    const Formula phi = random_formula(rng, sig, {"a"}, 1 + i % 2, 5, 3);
    const Formula core = core_of_formula(phi);
    EXPECT_TRUE(equivalent(core, phi));
    EXPECT_EQ(core.size(), minimal_equivalent_size(phi)) << format_formula(phi);
    for (std::size_t k = 0; k < core.size(); ++k) {
      std::vector<Atom> rest = core.atoms();
      rest.erase(rest.begin() + static_cast<long>(k));
      bool covers = true;
      for (const auto& x : core.free_terms()) {
        covers = covers && std::any_of(rest.begin(), rest.end(), [&](const Atom& a) { return a.mentions(x); });
      }
      if (covers && !rest.empty()) EXPECT_FALSE(maps_to(core, Formula(core.free_vars(), rest)));
    }
  }
}

TEST(Isomorphic, RenamingInvariant) {
  const Formula phi = f("x <- p(x,?y), q(?y,?z), p(?z,a)");
  EXPECT_TRUE(isomorphic(phi, f("x <- p(x,?u), q(?u,?w), p(?w,a)")));
  EXPECT_FALSE(isomorphic(phi, f("x <- p(x,?u), q(?u,?u), p(?u,a)")));
  EXPECT_FALSE(isomorphic(f("x <- p(x,?y)"), f("x <- p(x,a)")));
}

TEST(FormulaClass, EqualIffEquivalent) {
  EXPECT_EQ(FormulaClass(f("x <- p(x,?y), p(x,?z)")), FormulaClass(f("x <- p(x,?w)")));
  EXPECT_EQ(FormulaClass(f("x <- p(x,?y)")), FormulaClass(f("u <- p(u,?v)")));
  EXPECT_FALSE(FormulaClass(f("x <- p(x,?y)")) == FormulaClass(f("x <- q(x,?y)")));
  const auto kb = fig1_kb("sigma0");
  const Formula can = build_can(testing::u0(kb), kb);
  EXPECT_EQ(FormulaClass(phi_a()), FormulaClass(can));
}

TEST(CanonicalRename, BreadthFirstNames) {
  EXPECT_EQ(canonical_rename(f("u <- p(u,?b), p(?b,?a)")), f("x1 <- p(x1,?y1), p(?y1,?y2)"));
  // A constant that looks like a generated name pushes the prefix aside.
  EXPECT_EQ(canonical_rename(f("u <- p(u,y1)")).free_vars(), std::vector<std::string>{"x1"});
  EXPECT_EQ(canonical_rename(f("u <- p(u,x1)")).free_vars(), std::vector<std::string>{"x_1"});
}

}  // namespace
}  // namespace nexus
