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

#include "nexus/nexus.h"

#include <cstdlib>
#include <cstring>
#include <set>
#include <string>

#include <json.hpp>

#include "nexus/characterize.hpp"
#include "nexus/error.hpp"
#include "nexus/expansion.hpp"
#include "nexus/hom_engine.hpp"
#include "nexus/io.hpp"
#include "nexus/kb_model.hpp"
#include "nexus/oracle_gen.hpp"
#include "nexus/selftest.hpp"

struct nx_kb {
  nexus::SelectiveKB kb;
};

struct nx_unit {
  nexus::Unit unit;
};

struct nx_formula {
  nexus::Formula formula;
};

struct nx_graph {
  nexus::ExpansionGraph graph;
};

namespace {

thread_local std::string last_error;

nx_status status_of(nexus::ErrorCode code) {
  using nexus::ErrorCode;
  switch (code) {
    case ErrorCode::Parse: return NX_ERR_PARSE;
    case ErrorCode::Io: return NX_ERR_IO;
    case ErrorCode::InvalidName: return NX_ERR_INVALID_NAME;
    case ErrorCode::EmptyInput: return NX_ERR_EMPTY_INPUT;
    case ErrorCode::ArityConflict: return NX_ERR_ARITY_CONFLICT;
    case ErrorCode::NonGround: return NX_ERR_NON_GROUND;
    case ErrorCode::TupleOutsideDomain: return NX_ERR_TUPLE_OUTSIDE_DOMAIN;
    case ErrorCode::SelectorViolation: return NX_ERR_SELECTOR_VIOLATION;
    case ErrorCode::MixedArity: return NX_ERR_MIXED_ARITY;
    case ErrorCode::NotProper: return NX_ERR_NOT_PROPER;
    case ErrorCode::UnknownConstant: return NX_ERR_UNKNOWN_CONSTANT;
    case ErrorCode::EmptyUnit: return NX_ERR_EMPTY_UNIT;
    case ErrorCode::ArityMismatch: return NX_ERR_ARITY_MISMATCH;
    case ErrorCode::Budget: return NX_ERR_BUDGET;
    case ErrorCode::TupleSpaceTooLarge: return NX_ERR_TUPLE_SPACE_TOO_LARGE;
    case ErrorCode::OverlapWithUnit: return NX_ERR_OVERLAP_WITH_UNIT;
    case ErrorCode::ReservedSymbolCollision: return NX_ERR_RESERVED_SYMBOL;
    case ErrorCode::TooLarge: return NX_ERR_TOO_LARGE;
    case ErrorCode::InvalidArgument: return NX_ERR_INVALID_ARGUMENT;
    case ErrorCode::InvariantViolation: return NX_ERR_INVARIANT;
  }
  return NX_ERR_INTERNAL;
}

nx_status fail(nx_status status, const std::string& code, const std::string& message, int line = 0) {
  nlohmann::json j{{"code", code}, {"message", message}};
  if (line > 0) j["line"] = line;
  last_error = j.dump();
  return status;
}

// Runs body, translating exceptions into a status and the error record.
template <typename F>
nx_status guarded(F&& body) {
  last_error.clear();
  try {
    body();
    return NX_OK;
  } catch (const nexus::ParseError& e) {
    return fail(NX_ERR_PARSE, "Parse", e.what(), e.line());
  } catch (const nexus::Error& e) {
    return fail(status_of(e.code()), std::string(nexus::error_code_name(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(NX_ERR_INTERNAL, "Internal", "out of memory");
  } catch (const std::exception& e) {
    return fail(NX_ERR_INTERNAL, "Internal", e.what());
  }
}

nx_status null_argument(const char* name) {
  return fail(NX_ERR_NULL_ARGUMENT, "NullArgument", std::string(name) + " must not be null");
}

#define NX_REQUIRE(arg)                  \
  do {                                   \
    if (!(arg)) return null_argument(#arg); \
  } while (0)

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

nexus::SelectiveKB make_kb(nexus::Dataset d, const char* selector) {
  const auto spec = nexus::SelectorSpec::parse(selector ? selector : "full");
  return nexus::SelectiveKB(std::move(d), spec);
}

nexus::Tuple tuple_on(const nx_kb* kb, const char* text) {
  nexus::Tuple t = nexus::parse_tuple(text);
  for (const auto& c : t.entries) {
    if (!kb->kb.dataset().has_constant(c)) {
      throw nexus::Error(nexus::ErrorCode::TupleOutsideDomain,
                         "constant " + c + " of " + nexus::to_string(t) + " is not in the dataset");
    }
  }
  return t;
}

std::string generated_json(const nexus::GeneratedInstance& gi) {
  nlohmann::json j{{"facts", nexus::format_facts(gi.kb.dataset())},
                   {"unit", nexus::format_tuples(gi.unit.as_set())},
                   {"selector", gi.selector}};
  if (gi.query) j["query"] = nexus::to_string(*gi.query);
  return j.dump(2);
}

nlohmann::json report_json(const nexus::SelftestReport& r) {
  return {{"samples", r.samples}, {"checks", r.checks}, {"failures", r.failures}};
}

}  // namespace

extern "C" {

const char* nx_version(void) { return "1.0.0"; }

const char* nx_last_error_json(void) { return last_error.c_str(); }

void nx_string_free(char* s) { std::free(s); }

nx_status nx_kb_parse(const char* facts, const char* selector, nx_kb** out) {
  NX_REQUIRE(facts);
  NX_REQUIRE(out);
  return guarded([&] { *out = new nx_kb{make_kb(nexus::load_facts(facts), selector)}; });
}

nx_status nx_kb_load(const char* path, const char* selector, nx_kb** out) {
  NX_REQUIRE(path);
  NX_REQUIRE(out);
  return guarded(
      [&] { *out = new nx_kb{make_kb(nexus::load_facts(nexus::read_file(path)), selector)}; });
}

void nx_kb_free(nx_kb* kb) { delete kb; }

nx_status nx_kb_set_budget(nx_kb* kb, uint64_t nodes) {
  NX_REQUIRE(kb);
  return guarded([&] {
    if (nodes == 0) throw nexus::Error(nexus::ErrorCode::InvalidArgument, "budget must be positive");
    auto o = kb->kb.options();
    o.budget = nodes;
    kb->kb.set_options(o);
  });
}

nx_status nx_kb_set_threads(nx_kb* kb, unsigned threads) {
  NX_REQUIRE(kb);
  return guarded([&] {
    if (threads == 0) throw nexus::Error(nexus::ErrorCode::InvalidArgument, "threads must be positive");
    auto o = kb->kb.options();
    o.threads = threads;
    kb->kb.set_options(o);
  });
}

nx_status nx_kb_describe(const nx_kb* kb, char** out_json) {
  NX_REQUIRE(kb);
  NX_REQUIRE(out_json);
  return guarded([&] {
    const auto& d = kb->kb.dataset();
    std::set<std::string> preds;
    for (const auto& a : d.atoms()) preds.insert(a.predicate);
    nlohmann::json j{{"atoms", d.size()},
                     {"constants", d.domain().size()},
                     {"predicates", preds.size()},
                     {"max_arity", d.max_arity()},
                     {"selector", kb->kb.selector().describe()}};
    *out_json = copy_string(j.dump());
  });
}

nx_status nx_kb_summarize(const nx_kb* kb, const char* tuple, char** out) {
  NX_REQUIRE(kb);
  NX_REQUIRE(tuple);
  NX_REQUIRE(out);
  return guarded([&] {
    const auto summary = kb->kb.summarize(nexus::parse_tuple(tuple));
    *out = copy_string(nexus::format_facts(summary->data));
  });
}

nx_status nx_unit_parse(const nx_kb* kb, const char* tuples, nx_unit** out) {
  NX_REQUIRE(kb);
  NX_REQUIRE(tuples);
  NX_REQUIRE(out);
  return guarded([&] {
    *out = new nx_unit{nexus::validate_unit(nexus::parse_tuples(tuples), kb->kb.dataset())};
  });
}

nx_status nx_unit_load(const nx_kb* kb, const char* path, nx_unit** out) {
  NX_REQUIRE(kb);
  NX_REQUIRE(path);
  NX_REQUIRE(out);
  return guarded([&] {
    *out = new nx_unit{
        nexus::validate_unit(nexus::parse_tuples(nexus::read_file(path)), kb->kb.dataset())};
  });
}

void nx_unit_free(nx_unit* unit) { delete unit; }

nx_status nx_unit_text(const nx_unit* unit, char** out) {
  NX_REQUIRE(unit);
  NX_REQUIRE(out);
  return guarded([&] { *out = copy_string(nexus::format_tuples(unit->unit.as_set())); });
}

nx_status nx_formula_parse(const char* text, nx_formula** out) {
  NX_REQUIRE(text);
  NX_REQUIRE(out);
  return guarded([&] { *out = new nx_formula{nexus::parse_formula(text)}; });
}

nx_status nx_formula_from_json(const char* json, nx_formula** out) {
  NX_REQUIRE(json);
  NX_REQUIRE(out);
  return guarded([&] {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(json);
    } catch (const nlohmann::json::exception& e) {
      throw nexus::ParseError(0, e.what());
    }
    *out = new nx_formula{nexus::formula_from_json(j)};
  });
}

void nx_formula_free(nx_formula* f) { delete f; }

nx_status nx_formula_text(const nx_formula* f, char** out) {
  NX_REQUIRE(f);
  NX_REQUIRE(out);
  return guarded([&] { *out = copy_string(nexus::format_formula(f->formula)); });
}

nx_status nx_formula_json(const nx_formula* f, char** out) {
  NX_REQUIRE(f);
  NX_REQUIRE(out);
  return guarded([&] { *out = copy_string(nexus::formula_to_json(f->formula).dump(2)); });
}

size_t nx_formula_size(const nx_formula* f) { return f ? f->formula.size() : 0; }

nx_status nx_formula_core(const nx_formula* f, uint64_t budget, nx_formula** out) {
  NX_REQUIRE(f);
  NX_REQUIRE(out);
  return guarded([&] {
    *out = new nx_formula{nexus::core_of_formula(f->formula, budget ? budget : nexus::kDefaultBudget)};
  });
}

nx_status nx_isomorphic(const nx_formula* a, const nx_formula* b, int* out) {
  NX_REQUIRE(a);
  NX_REQUIRE(b);
  NX_REQUIRE(out);
  return guarded([&] { *out = nexus::isomorphic(a->formula, b->formula) ? 1 : 0; });
}

nx_status nx_maps_to(const nx_formula* a, const nx_formula* b, int* out) {
  NX_REQUIRE(a);
  NX_REQUIRE(b);
  NX_REQUIRE(out);
  return guarded([&] { *out = nexus::maps_to(a->formula, b->formula) ? 1 : 0; });
}

nx_status nx_instances(const nx_kb* kb, const nx_formula* f, char** out) {
  NX_REQUIRE(kb);
  NX_REQUIRE(f);
  NX_REQUIRE(out);
  return guarded([&] { *out = copy_string(nexus::format_tuples(nexus::instances(f->formula, kb->kb))); });
}

nx_status nx_can(const nx_kb* kb, const nx_unit* unit, int stream, nx_formula** out) {
  NX_REQUIRE(kb);
  NX_REQUIRE(unit);
  NX_REQUIRE(out);
  return guarded([&] { *out = new nx_formula{nexus::build_can(unit->unit, kb->kb, stream != 0)}; });
}

nx_status nx_core(const nx_kb* kb, const nx_unit* unit, int stream, nx_formula** out) {
  NX_REQUIRE(kb);
  NX_REQUIRE(unit);
  NX_REQUIRE(out);
  return guarded(
      [&] { *out = new nx_formula{nexus::build_core_char(unit->unit, kb->kb, stream != 0)}; });
}

nx_status nx_def(const nx_kb* kb, const nx_unit* unit, int* out) {
  NX_REQUIRE(kb);
  NX_REQUIRE(unit);
  NX_REQUIRE(out);
  return guarded([&] { *out = nexus::is_definable(unit->unit, kb->kb) ? 1 : 0; });
}

nx_status nx_ess_member(const nx_kb* kb, const nx_unit* unit, const char* tuple, int* out) {
  NX_REQUIRE(kb);
  NX_REQUIRE(unit);
  NX_REQUIRE(tuple);
  NX_REQUIRE(out);
  return guarded([&] { *out = nexus::ess_member(unit->unit, kb->kb, tuple_on(kb, tuple)) ? 1 : 0; });
}

nx_status nx_compare(const nx_kb* kb, const nx_unit* unit, const char* t, const char* t2,
                     nx_verdict* out) {
  NX_REQUIRE(kb);
  NX_REQUIRE(unit);
  NX_REQUIRE(t);
  NX_REQUIRE(t2);
  NX_REQUIRE(out);
  return guarded([&] {
    switch (nexus::compare(kb->kb, unit->unit, tuple_on(kb, t), tuple_on(kb, t2))) {
      case nexus::Verdict::Prec: *out = NX_VERDICT_PREC; break;
      case nexus::Verdict::PrecInv: *out = NX_VERDICT_PREC_INV; break;
      case nexus::Verdict::Sim: *out = NX_VERDICT_SIM; break;
      case nexus::Verdict::Inc: *out = NX_VERDICT_INC; break;
    }
  });
}

nx_status nx_ess(const nx_kb* kb, const nx_unit* unit, char** out) {
  NX_REQUIRE(kb);
  NX_REQUIRE(unit);
  NX_REQUIRE(out);
  return guarded([&] { *out = copy_string(nexus::format_tuples(nexus::ess_set(unit->unit, kb->kb))); });
}

nx_status nx_eg(const nx_kb* kb, const nx_unit* unit, uint64_t cap, nx_graph** out) {
  NX_REQUIRE(kb);
  NX_REQUIRE(unit);
  NX_REQUIRE(out);
  return guarded([&] {
    *out = new nx_graph{
        nexus::build_expansion_graph(unit->unit, kb->kb, cap ? cap : nexus::kDefaultTupleCap)};
  });
}

void nx_graph_free(nx_graph* g) { delete g; }

size_t nx_graph_node_count(const nx_graph* g) { return g ? g->graph.nodes.size() : 0; }

nx_status nx_graph_dot(const nx_graph* g, char** out) {
  NX_REQUIRE(g);
  NX_REQUIRE(out);
  return guarded([&] { *out = copy_string(nexus::format_graph_dot(g->graph)); });
}

nx_status nx_graph_json(const nx_graph* g, char** out) {
  NX_REQUIRE(g);
  NX_REQUIRE(out);
  return guarded([&] { *out = copy_string(nexus::graph_to_json(g->graph).dump(2)); });
}

nx_status nx_gen_prime_cycles(int m, char** out_json) {
  NX_REQUIRE(out_json);
  return guarded([&] { *out_json = copy_string(generated_json(nexus::gen_prime_cycles(m))); });
}

nx_status nx_gen_threecol(const char* edge_list, int k, char** out_json) {
  NX_REQUIRE(edge_list);
  NX_REQUIRE(out_json);
  return guarded([&] {
    *out_json = copy_string(generated_json(nexus::gen_3col_instance(nexus::parse_edge_list(edge_list), k)));
  });
}

nx_status nx_selftest(uint64_t seed, int count, char** out_json, int* failures) {
  NX_REQUIRE(out_json);
  NX_REQUIRE(failures);
  return guarded([&] {
    const auto oracle = nexus::run_selftest(seed, count);
    const auto graphs = nexus::run_graph_selftest(seed, count);
    nlohmann::json j{{"oracle", report_json(oracle)}, {"graphs", report_json(graphs)}};
    *failures = static_cast<int>(oracle.failures.size() + graphs.failures.size());
    *out_json = copy_string(j.dump(2));
  });
}

}  // extern "C"
