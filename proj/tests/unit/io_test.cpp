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

#include <random>

#include "nexus/error.hpp"
#include "nexus/expansion.hpp"
#include "nexus/io.hpp"
#include "nexus/oracle_gen.hpp"
#include "test_support.hpp"

namespace nexus {
namespace {

int parse_error_line(const std::string& text) {
  try {
    parse_facts(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

TEST(Facts, CommentsAndBlankLines) {
  const auto atoms = parse_facts("# header\n\np(a,b)  # trailing\n  q(c)\n");
  ASSERT_EQ(atoms.size(), 2u);
  EXPECT_EQ(to_string(atoms[0]), "p(a,b)");
  EXPECT_EQ(to_string(atoms[1]), "q(c)");
}

TEST(Facts, ErrorsCarryLineNumbers) {
  EXPECT_EQ(parse_error_line("p(a)\nq(b\n"), 2);
  EXPECT_EQ(parse_error_line("p(a)\n\nq(?x)\n"), 3);
  EXPECT_EQ(parse_error_line("p()\n"), 1);
  EXPECT_EQ(parse_error_line("p(a) q(b)\n"), 1);
  EXPECT_EQ(parse_error_line("p(top)\n"), 1);
  EXPECT_EQ(parse_error_line("p(d|x)\n"), 1);
}

TEST(Facts, DuplicatesCollapseAndRoundTrip) {
  const Dataset d = load_facts("p(a,b)\np(a,b)\nq(a)\n");
  EXPECT_EQ(d.size(), 4u);
  EXPECT_EQ(load_facts(format_facts(d)), d);
  const Dataset fig1 = testing::fig1_dataset();
  EXPECT_EQ(load_facts(format_facts(fig1)), fig1);
}

TEST(Tuples, ParseAndFormat) {
  EXPECT_EQ(parse_tuple(" (a, b) "), (Tuple{"a", "b"}));
  const TupleSet ts = parse_tuples("# unit\n(a,b)\n(c,d)\n");
  EXPECT_EQ(ts.size(), 2u);
  EXPECT_EQ(format_tuples(ts), "(a,b)\n(c,d)\n");
  EXPECT_EQ(parse_tuples(format_tuples(ts)), ts);
  EXPECT_THROW(parse_tuple("(a,"), ParseError);
  EXPECT_THROW(parse_tuple("()"), ParseError);
}

TEST(Formulas, TextRoundTrip) {
  const Formula phi = parse_formula("x1,x2 <- p(x1,c), q(?y,x2)");
  EXPECT_EQ(format_formula(phi), "x1,x2 <- p(x1,c), q(?y,x2)");
  EXPECT_EQ(parse_formula(format_formula(phi)), phi);
  EXPECT_EQ(format_formula(parse_formula("<- p(a)")), "<- p(a)");
  std::mt19937_64 rng(21);
  const std::vector<PredicateSig> sig{{"p", 2}, {"u", 1}};
  for (int i = 0; i < 200; ++i) {
    const Formula r = random_formula(rng, sig, {"a", "b"}, 1 + i % 3, 5, 3);
    EXPECT_EQ(parse_formula(format_formula(r)), r);
  }
}

TEST(Formulas, Errors) {
  EXPECT_THROW(parse_formula("x p(x)"), ParseError);
  EXPECT_THROW(parse_formula("x <- "), Error);
  EXPECT_THROW(parse_formula("x <- p(y)"), Error);
}

TEST(Formulas, JsonRoundTrip) {
  const Formula phi = parse_formula("x1 <- p(x1,c), q(?y,x1)");
  const auto j = formula_to_json(phi);
  EXPECT_EQ(j.at("free_vars"), nlohmann::json::array({"x1"}));
  EXPECT_EQ(j.at("atoms")[0].at("pred"), "p");
  EXPECT_EQ(j.at("atoms")[0].at("args")[1].at("kind"), "constant");
  EXPECT_EQ(formula_from_json(j), phi);
  EXPECT_THROW(formula_from_json(nlohmann::json{{"free_vars", 3}}), ParseError);
}

TEST(GraphExport, DotAndJson) {
  const auto kb = testing::fig1_kb("sigma0");
  const auto g = build_expansion_graph(testing::u0(kb), kb);
  const std::string dot = format_graph_dot(g);
  EXPECT_EQ(dot.rfind("digraph expansion {", 0), 0u);
  EXPECT_NE(dot.find("n0 ["), std::string::npos);
  EXPECT_NE(dot.find("shape=doublecircle"), std::string::npos);
  EXPECT_NE(dot.find("n4 -> n5;"), std::string::npos);
  EXPECT_EQ(format_graph_dot(build_expansion_graph(testing::u0(kb), kb)), dot);
  const auto j = graph_to_json(g);
  EXPECT_EQ(j.at("nodes").size(), 6u);
  EXPECT_EQ(j.at("arcs").size(), 6u);
  EXPECT_EQ(j.at("source"), 0);
}

TEST(Files, MissingFileIsAnIoError) {
  try {
    read_file("/nonexistent/facts.nxf");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Io);
  }
}

}  // namespace
}  // namespace nexus
