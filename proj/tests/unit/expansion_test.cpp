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

#include "nexus/characterize.hpp"
#include "nexus/error.hpp"
#include "nexus/expansion.hpp"
#include "nexus/hom_engine.hpp"
#include "nexus/oracle_gen.hpp"
#include "test_support.hpp"

namespace nexus {
namespace {

using testing::fig1_kb;
using testing::fig1_unit;
using testing::tup;
using testing::u0;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidArgument;
}

TEST(Definable, RunningExample) {
  const auto kb = fig1_kb("sigma0");
  EXPECT_TRUE(is_definable(u0(kb), kb));
  EXPECT_FALSE(is_definable(fig1_unit(kb, "(DiscoveryCove)\n(Epcot)\n(Florida)"), kb));
}

TEST(Definable, WholeTupleSpace) {
  const auto kb = fig1_kb("sigma0");
  const auto space = kb.tuple_space(1, 100);
  EXPECT_TRUE(is_definable(validate_unit(TupleSet(space.begin(), space.end()), kb.dataset()), kb));
}

TEST(Ess, Membership) {
  const auto kb = fig1_kb("sigma0");
  EXPECT_FALSE(ess_member(u0(kb), kb, tup("(Gardaland)")));
  EXPECT_TRUE(ess_member(u0(kb), kb, tup("(Epcot)")));
  EXPECT_EQ(ess_set(u0(kb), kb), u0(kb).as_set());
}

TEST(Ess, ParksWithAPlace) {
  const auto kb = fig1_kb("sigma0");
  EXPECT_EQ(ess_set(fig1_unit(kb, "(Prater)\n(Leolandia)"), kb),
            (TupleSet{tup("(Prater)"), tup("(Leolandia)"), tup("(PacificPark)"), tup("(Gardaland)"),
                      tup("(DiscoveryCove)"), tup("(Epcot)")}));
}

TEST(Ess, WholeTupleSpaceIsItsOwnExpansion) {
  const auto kb = fig1_kb("sigma0");
  const auto space = kb.tuple_space(1, 100);
  const TupleSet all(space.begin(), space.end());
  EXPECT_EQ(ess_set(validate_unit(all, kb.dataset()), kb), all);
}

TEST(Ess, ContainsUnitAndIsDefinable) {
  for (int seed = 1; seed <= 40; ++seed) {
    const int arity = 1 + seed % 2;
    const auto gi = random_instance(oracle_config(seed, arity), arity, 2);
    const TupleSet ess = ess_set(gi.unit, gi.kb);
    const TupleSet unit = gi.unit.as_set();
    EXPECT_TRUE(std::includes(ess.begin(), ess.end(), unit.begin(), unit.end()));
    if (!duplicate_columns(ess)) EXPECT_TRUE(is_definable(validate_unit(ess, gi.kb.dataset()), gi.kb));
  }
}

TEST(Ess, UnitsBetweenShareTheCore) {
  const auto kb = fig1_kb("sigma0");
  const Unit u = fig1_unit(kb, "(Prater)\n(Leolandia)");
  const FormulaClass cls(build_core_char(u, kb));
  const TupleSet ess = ess_set(u, kb);
  for (const auto& t : ess) {
    if (u.contains(t)) continue;
    EXPECT_EQ(FormulaClass(build_core_char(extend_unit(u, kb, t), kb)), cls) << to_string(t);
  }
}

TEST(Gadgets, RunningExample) {
  const auto kb = fig1_kb("sigma0");
  const Unit u = u0(kb);
  EXPECT_TRUE(gad1(kb, u, tup("(Prater)"), tup("(Leolandia)")));
  EXPECT_FALSE(gad1(kb, u, tup("(Gardaland)"), tup("(PacificPark)")));
  EXPECT_TRUE(gad1(kb, u, tup("(Prater)"), tup("(Prater)")));
  EXPECT_TRUE(gad2(kb, u, tup("(Prater)"), tup("(Prater)")));
  EXPECT_EQ(code_of([&] { gad1(kb, u, tup("(Epcot)"), tup("(Prater)")); }), ErrorCode::OverlapWithUnit);
  EXPECT_EQ(code_of([&] { gad2(kb, u, tup("(Prater)"), tup("(Epcot)")); }), ErrorCode::OverlapWithUnit);
}

TEST(Compare, RunningExample) {
  const auto kb = fig1_kb("sigma0");
  const Unit u = u0(kb);
  EXPECT_EQ(compare(kb, u, tup("(Gardaland)"), tup("(Leolandia)")), Verdict::Prec);
  EXPECT_EQ(compare(kb, u, tup("(Leolandia)"), tup("(Gardaland)")), Verdict::PrecInv);
  EXPECT_EQ(compare(kb, u, tup("(Prater)"), tup("(Leolandia)")), Verdict::Sim);
  EXPECT_EQ(compare(kb, u, tup("(Gardaland)"), tup("(PacificPark)")), Verdict::Inc);
  EXPECT_EQ(to_string(Verdict::PrecInv), "prec_inv");
}

TEST(Compare, SwappingArgumentsSwapsPrecedence) {
  const auto kb = fig1_kb("sigma0");
  const Unit u = u0(kb);
  const auto space = kb.tuple_space(1, 100);
  for (const auto& a : space) {
    for (const auto& b : space) {
      if (u.contains(a) || u.contains(b)) continue;
      const Verdict ab = compare(kb, u, a, b);
      const Verdict ba = compare(kb, u, b, a);
      if (ab == Verdict::Prec) EXPECT_EQ(ba, Verdict::PrecInv);
      if (ab == Verdict::PrecInv) EXPECT_EQ(ba, Verdict::Prec);
      if (ab == Verdict::Sim || ab == Verdict::Inc) EXPECT_EQ(ba, ab);
    }
  }
}

TEST(ExpansionGraph, RunningExample) {
  const auto kb = fig1_kb("sigma0");
  const ExpansionGraph g = build_expansion_graph(u0(kb), kb);
  ASSERT_EQ(g.nodes.size(), 6u);
  const std::vector<Formula> cores{testing::phi_a(), testing::phi_c(), testing::phi_b(),
                                   testing::phi_d(), testing::phi_e(), testing::phi_f()};
  for (std::size_t i = 0; i < cores.size(); ++i) {
    EXPECT_TRUE(isomorphic(g.nodes[i].core, cores[i])) << i << ": " << format_formula(g.nodes[i].core);
  }
  EXPECT_EQ(g.arcs, (std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4}, {4, 5}}));
  EXPECT_EQ(g.source, 0);
  EXPECT_EQ(g.nodes[0].direct, u0(kb).as_set());
  EXPECT_EQ(g.nodes[1].direct, TupleSet{tup("(Gardaland)")});
  EXPECT_EQ(g.nodes[2].direct, TupleSet{tup("(PacificPark)")});
  EXPECT_EQ(g.nodes[3].direct, (TupleSet{tup("(Prater)"), tup("(Leolandia)")}));
  EXPECT_EQ(g.nodes[4].direct, TupleSet{tup("(tp)")});
  EXPECT_EQ(g.nodes[5].direct, (TupleSet{tup("(Austria)"), tup("(California)"), tup("(Florida)"),
                                          tup("(Italy)"), tup("(US)"), tup("(ap)")}));
  EXPECT_EQ(check_expansion_graph(g, u0(kb), kb), "");
}

TEST(ExpansionGraph, WholeSpaceIsOneNode) {
  const auto kb = fig1_kb("sigma0");
  const auto space = kb.tuple_space(1, 100);
  const ExpansionGraph g =
      build_expansion_graph(validate_unit(TupleSet(space.begin(), space.end()), kb.dataset()), kb);
  ASSERT_EQ(g.nodes.size(), 1u);
  EXPECT_EQ(g.nodes[0].direct.size(), space.size());
  EXPECT_TRUE(g.arcs.empty());
}

TEST(ExpansionGraph, TupleCap) {
  const auto kb = fig1_kb("sigma0");
  EXPECT_EQ(code_of([&] { build_expansion_graph(u0(kb), kb, 5); }), ErrorCode::TupleSpaceTooLarge);
}

TEST(ExpansionGraph, CheckCatchesDamage) {
  const auto kb = fig1_kb("sigma0");
  const ExpansionGraph g = build_expansion_graph(u0(kb), kb);
  ExpansionGraph missing_arc = g;
  missing_arc.arcs.erase(missing_arc.arcs.begin());
  EXPECT_NE(check_expansion_graph(missing_arc, u0(kb), kb), "");
  ExpansionGraph cycle = g;
  cycle.arcs.push_back({5, 0});
  EXPECT_NE(check_expansion_graph(cycle, u0(kb), kb), "");
  ExpansionGraph overlap = g;
  overlap.nodes[5].direct.insert(tup("(Epcot)"));
  EXPECT_NE(check_expansion_graph(overlap, u0(kb), kb), "");
}

TEST(ExpansionGraph, ThreadCountDoesNotMatter) {
  auto kb = fig1_kb("sigma0");
  const ExpansionGraph one = build_expansion_graph(u0(kb), kb);
  kb.set_options({kDefaultBudget, 4});
  const ExpansionGraph four = build_expansion_graph(u0(kb), kb);
  ASSERT_EQ(one.nodes.size(), four.nodes.size());
  for (std::size_t i = 0; i < one.nodes.size(); ++i) {
    EXPECT_EQ(one.nodes[i].core, four.nodes[i].core);
    EXPECT_EQ(one.nodes[i].direct, four.nodes[i].direct);
  }
  EXPECT_EQ(one.arcs, four.arcs);
}

TEST(ExpansionGraph, BinaryUnitsPassStructuralChecks) {
  for (int seed = 2; seed <= 40; seed += 2) {
    const auto gi = random_instance(oracle_config(seed, 2), 2, 2);
    const ExpansionGraph g = build_expansion_graph(gi.unit, gi.kb);
    EXPECT_EQ(check_expansion_graph(g, gi.unit, gi.kb), "") << seed;
  }
}

}  // namespace
}  // namespace nexus
