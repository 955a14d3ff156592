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

#include <algorithm>

#include <gtest/gtest.h>

#include "nexus/characterize.hpp"
#include "nexus/error.hpp"
#include "nexus/hom_engine.hpp"
#include "nexus/oracle_gen.hpp"
#include "test_support.hpp"

namespace nexus {
namespace {

using testing::fig1_kb;
using testing::tup;

Formula f(const char* text) { return parse_formula(text); }

std::vector<Atom> atoms(const std::string& text) {
  auto v = parse_facts(text);
  normalize(v);
  return v;
}

// Facts whose constants are written d_a_b and stand for the product constant d|a|b.
std::vector<Atom> product_atoms(const std::string& text) {
  auto v = atoms(text);
  for (auto& a : v) {
    for (auto& t : a.args) std::replace(t.name.begin(), t.name.end(), '_', '|');
  }
  normalize(v);
  return v;
}

// The two-tuple knowledge base with hand-picked summaries.
struct TwoSummaries {
  Dataset d = load_facts("r(1,2)\nr(2,1)\ns(2,1)\ns(1,2)");
  SelectiveKB kb{d, SelectorSpec::table({{tup("(1,1)"), atoms("r(1,2)\ns(1,2)\ntop(1)\ntop(2)")},
                                         {tup("(1,2)"), atoms("r(1,2)\ns(2,1)\ntop(1)\ntop(2)")}})};
  Unit unit = validate_unit({tup("(1,1)"), tup("(1,2)")}, d);
};

std::vector<std::string> names(const std::vector<ProductConstant>& cs) {
  std::vector<std::string> out;
  for (const auto& c : cs) out.push_back(c.name());
  return out;
}

TEST(ProductTuples, PositionWise) {
  EXPECT_EQ(names(product_tuples({tup("(1,2)"), tup("(3,4)"), tup("(5,6)")})),
            (std::vector<std::string>{"d|1|3|5", "d|2|4|6"}));
  EXPECT_EQ(names(product_tuples({tup("(a,b)")})), (std::vector<std::string>{"d|a", "d|b"}));
  EXPECT_EQ(names(product_tuples({tup("(DiscoveryCove)"), tup("(Epcot)")})),
            std::vector<std::string>{"d|DiscoveryCove|Epcot"});
  EXPECT_TRUE(product_tuples({tup("(a,b)"), tup("(a,b)")})[0].is_gene());
  EXPECT_FALSE(product_tuples({tup("(a,b)"), tup("(b,a)")})[0].is_gene());
}

TEST(ProductTuples, Errors) {
  for (auto bad : {+[] { product_tuples({}); }, +[] { product_tuples({tup("(a)"), tup("(a,b)")}); }}) {
    EXPECT_THROW(bad(), Error);
  }
}

TEST(ProductDatasets, PairsAtomsOfEachPredicate) {
  TwoSummaries ex;
  const Dataset p = product_datasets({ex.kb.summarize(tup("(1,1)"))->data, ex.kb.summarize(tup("(1,2)"))->data});
  EXPECT_EQ(p.atoms(), product_atoms("r(d_1_1,d_2_2)\ns(d_1_2,d_2_1)\ntop(d_1_1)\ntop(d_1_2)\ntop(d_2_1)\ntop(d_2_2)"));
  const Dataset one = load_facts("top(1)");
  EXPECT_EQ(product_datasets({one, one}).atoms(), product_atoms("top(d_1_1)"));
}

TEST(ProductDatasets, ContainsDiagonalAndIsClosed) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 30; ++i) {
    RandomSkbConfig config;
    config.seed = rng();
    config.max_constants = 3;
    const Dataset d = random_instance(config, 1, 1).kb.dataset();
    const int k = 2 + i % 2;
    const Dataset p = product_datasets(std::vector<Dataset>(k, d));
    EXPECT_TRUE(Dataset::is_closed_under_top(p.atoms()));
    for (const auto& a : d.atoms()) {
      Atom diag{a.predicate, {}};
      for (const auto& t : a.args) diag.args.push_back(Term::constant(product_name(std::vector<std::string>(k, t.name))));
      EXPECT_TRUE(p.contains(diag)) << to_string(diag);
    }
  }
}

TEST(BuildCan, HandPickedSummaries) {
  TwoSummaries ex;
  const Formula expected =
      f("x11,x12 <- r(x11,2), s(x12,?y21), top(x11), top(x12), top(?y21), top(2), r(1,2), top(1)");
  const Formula can = build_can(ex.unit, ex.kb);
  EXPECT_EQ(can.size(), 8u);
  EXPECT_TRUE(isomorphic(can, expected)) << format_formula(can);
  EXPECT_EQ(build_can(ex.unit, ex.kb, true), can);
}

TEST(BuildCan, LoneCloneIsPruned) {
  const Dataset d = load_facts("top(1)");
  SelectiveKB kb(d, SelectorSpec::full());
  EXPECT_EQ(build_can(validate_unit({tup("(1)")}, d), kb), f("x1 <- top(x1)"));
}

TEST(BuildCan, RunningExample) {
  const auto kb = fig1_kb("sigma0");
  const Unit u = testing::u0(kb);
  const Formula expected = f(
      "x <- isa(x,tp), isa(x,ap), top(x), top(ap), located(x,Florida), partOf(Florida,US), "
      "top(tp), top(Florida), top(US), isa(x,?y1), isa(x,?y2), top(?y1), top(?y2)");
  EXPECT_TRUE(isomorphic(build_can(u, kb), expected)) << format_formula(build_can(u, kb));
  EXPECT_TRUE(isomorphic(build_core_char(u, kb), testing::phi_a()));
  EXPECT_EQ(build_can(u, kb, true), build_can(u, kb));
}

TEST(BuildCore, PrimeCycles) {
  const auto gi = gen_prime_cycles(2);
  const Formula core = build_core_char(gi.unit, gi.kb);
  EXPECT_EQ(core.size(), 12u);
  EXPECT_EQ(build_can(gi.unit, gi.kb).size(), 12u);
  int edges = 0;
  for (const auto& a : core.atoms()) edges += a.predicate == "r";
  EXPECT_EQ(edges, 6);
}

TEST(BuildCore, AlreadyACore) {
  const auto kb = fig1_kb("sigma0");
  const Unit u = testing::fig1_unit(kb, "(Florida)");
  const Formula can = build_can(u, kb);
  EXPECT_EQ(build_core_char(u, kb), core_of_formula(can));
}

TEST(BuildCan, RequiresKnownTuples) {
  const auto kb = fig1_kb("sigma0");
  const Dataset other = load_facts("p(Narnia)");
  EXPECT_THROW(build_can(validate_unit({tup("(Narnia)")}, other), kb), Error);
}

// Properties over seeded random knowledge bases.
class CanProperties : public ::testing::TestWithParam<int> {};

TEST_P(CanProperties, InterpretsCharacterizesAndIsBounded) {
  const int seed = GetParam();
  const int arity = 1 + seed % 2;
  const GeneratedInstance gi = random_instance(oracle_config(seed, arity), arity, 2);
  const Formula can = build_can(gi.unit, gi.kb);
  const Formula core = build_core_char(gi.unit, gi.kb);
  EXPECT_TRUE(in_nxl(can));
  EXPECT_EQ(build_can(gi.unit, gi.kb, true), can);
  const TupleSet inst = instances(can, gi.kb);
  for (const auto& t : gi.unit.tuples()) EXPECT_TRUE(inst.count(t)) << to_string(t);
  EXPECT_EQ(FormulaClass(can), FormulaClass(core));
  EXPECT_LE(core.size(), can.size());
  EXPECT_LE(can.size(), can_size_bound(gi.unit, gi.kb));
  for (std::size_t k = 0; k < core.size(); ++k) {
    std::vector<Atom> rest = core.atoms();
    rest.erase(rest.begin() + static_cast<long>(k));
    bool covers = !rest.empty();
    for (const auto& x : core.free_terms()) {
      covers = covers && std::any_of(rest.begin(), rest.end(), [&](const Atom& a) { return a.mentions(x); });
    }
    if (covers) EXPECT_FALSE(maps_to(core, Formula(core.free_vars(), rest)));
  }
}

TEST_P(CanProperties, EveryInterpretingFormulaMapsIn) {
  const int seed = GetParam();
  const int arity = 1 + seed % 2;
  const GeneratedInstance gi = random_instance(oracle_config(seed, arity), arity, 2);
  const Formula can = build_can(gi.unit, gi.kb);
  const auto& domain = gi.kb.dataset().domain();
  const std::vector<std::string> constants(domain.begin(), domain.begin() + 1);
  const RandomSkbConfig defaults;
  int interpreting = 0;
  for (const auto& phi : enumerate_formulas(defaults.predicates, constants, arity, arity == 1 ? 3 : 2, 1)) {
    const TupleSet inst = instances(phi, gi.kb);
    const bool interprets = std::all_of(gi.unit.tuples().begin(), gi.unit.tuples().end(),
                                        [&](const Tuple& t) { return inst.count(t) > 0; });
    if (!interprets) continue;
    ++interpreting;
    EXPECT_TRUE(maps_to(phi, can)) << format_formula(phi);
  }
  EXPECT_GT(interpreting, 0);
}

INSTANTIATE_TEST_SUITE_P(Seeds, CanProperties, ::testing::Range(1, 31));

TEST(SizeBound, SaturatesAndMatchesFormula) {
  const auto kb = fig1_kb("sigma0");
  const Unit u = testing::u0(kb);
  const std::uint64_t a = kb.summarize(tup("(DiscoveryCove)"))->data.size();
  const std::uint64_t b = kb.summarize(tup("(Epcot)"))->data.size();
  EXPECT_EQ(can_size_bound(u, kb), 4 * a * b);
}

}  // namespace
}  // namespace nexus
