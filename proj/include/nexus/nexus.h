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

/* C interface to the nexus engine. All functions return NX_OK or an error
 * status; the details of the last error on the calling thread are available
 * as a JSON record from nx_last_error_json. Strings returned through char**
 * out-parameters are owned by the caller and released with nx_string_free.
 * Handles are immutable after construction except for the budget and thread
 * settings of a knowledge base, and may be shared across threads for reading. */
#ifndef NEXUS_NEXUS_H_
#define NEXUS_NEXUS_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define NX_API __declspec(dllexport)
#else
#define NX_API __attribute__((visibility("default")))
#endif

typedef enum nx_status {
  NX_OK = 0,
  NX_ERR_PARSE = 1,
  NX_ERR_IO = 2,
  NX_ERR_INVALID_NAME = 3,
  NX_ERR_EMPTY_INPUT = 4,
  NX_ERR_ARITY_CONFLICT = 5,
  NX_ERR_NON_GROUND = 6,
  NX_ERR_TUPLE_OUTSIDE_DOMAIN = 7,
  NX_ERR_SELECTOR_VIOLATION = 8,
  NX_ERR_MIXED_ARITY = 9,
  NX_ERR_NOT_PROPER = 10,
  NX_ERR_UNKNOWN_CONSTANT = 11,
  NX_ERR_EMPTY_UNIT = 12,
  NX_ERR_ARITY_MISMATCH = 13,
  NX_ERR_BUDGET = 14,
  NX_ERR_TUPLE_SPACE_TOO_LARGE = 15,
  NX_ERR_OVERLAP_WITH_UNIT = 16,
  NX_ERR_RESERVED_SYMBOL = 17,
  NX_ERR_TOO_LARGE = 18,
  NX_ERR_INVALID_ARGUMENT = 19,
  NX_ERR_INVARIANT = 20,
  NX_ERR_NULL_ARGUMENT = 21,
  NX_ERR_INTERNAL = 22
} nx_status;

typedef enum nx_verdict {
  NX_VERDICT_PREC = 0,     /* only t is in ess(U + t2) */
  NX_VERDICT_PREC_INV = 1, /* only t2 is in ess(U + t) */
  NX_VERDICT_SIM = 2,      /* both */
  NX_VERDICT_INC = 3       /* neither */
} nx_verdict;

typedef struct nx_kb nx_kb;
typedef struct nx_unit nx_unit;
typedef struct nx_formula nx_formula;
typedef struct nx_graph nx_graph;

NX_API const char* nx_version(void);
/* {"code": "...", "message": "...", "line": n}; "" when the last call on this
 * thread succeeded. Valid until the next call on the same thread. */
NX_API const char* nx_last_error_json(void);
NX_API void nx_string_free(char* s);

/* Knowledge bases. selector is full, neighborhood:<r> or sigma0. */
NX_API nx_status nx_kb_parse(const char* facts, const char* selector, nx_kb** out);
NX_API nx_status nx_kb_load(const char* path, const char* selector, nx_kb** out);
NX_API void nx_kb_free(nx_kb* kb);
NX_API nx_status nx_kb_set_budget(nx_kb* kb, uint64_t nodes);
NX_API nx_status nx_kb_set_threads(nx_kb* kb, unsigned threads);
/* {"atoms": n, "constants": n, "predicates": n, "max_arity": n, "selector": s} */
NX_API nx_status nx_kb_describe(const nx_kb* kb, char** out_json);
/* Summary of a tuple such as "(a,b)", one fact per line. */
NX_API nx_status nx_kb_summarize(const nx_kb* kb, const char* tuple, char** out);

/* Units: one tuple per line, validated against the dataset of kb. */
NX_API nx_status nx_unit_parse(const nx_kb* kb, const char* tuples, nx_unit** out);
NX_API nx_status nx_unit_load(const nx_kb* kb, const char* path, nx_unit** out);
NX_API void nx_unit_free(nx_unit* unit);
NX_API nx_status nx_unit_text(const nx_unit* unit, char** out);

/* Formulas. */
NX_API nx_status nx_formula_parse(const char* text, nx_formula** out);
NX_API nx_status nx_formula_from_json(const char* json, nx_formula** out);
NX_API void nx_formula_free(nx_formula* f);
NX_API nx_status nx_formula_text(const nx_formula* f, char** out);
NX_API nx_status nx_formula_json(const nx_formula* f, char** out);
NX_API size_t nx_formula_size(const nx_formula* f);
NX_API nx_status nx_formula_core(const nx_formula* f, uint64_t budget, nx_formula** out);
NX_API nx_status nx_isomorphic(const nx_formula* a, const nx_formula* b, int* out);
NX_API nx_status nx_maps_to(const nx_formula* a, const nx_formula* b, int* out);
/* Instances over kb, one tuple per line. */
NX_API nx_status nx_instances(const nx_kb* kb, const nx_formula* f, char** out);

/* Characterizations. stream enumerates the product lazily. */
NX_API nx_status nx_can(const nx_kb* kb, const nx_unit* unit, int stream, nx_formula** out);
NX_API nx_status nx_core(const nx_kb* kb, const nx_unit* unit, int stream, nx_formula** out);

/* Decision tasks; *out is 1 for yes and 0 for no. */
NX_API nx_status nx_def(const nx_kb* kb, const nx_unit* unit, int* out);
NX_API nx_status nx_ess_member(const nx_kb* kb, const nx_unit* unit, const char* tuple, int* out);
NX_API nx_status nx_compare(const nx_kb* kb, const nx_unit* unit, const char* t, const char* t2,
                            nx_verdict* out);
/* Smallest definable superset, one tuple per line. */
NX_API nx_status nx_ess(const nx_kb* kb, const nx_unit* unit, char** out);

/* Expansion graphs. cap bounds the candidate tuple space; 0 uses the default. */
NX_API nx_status nx_eg(const nx_kb* kb, const nx_unit* unit, uint64_t cap, nx_graph** out);
NX_API void nx_graph_free(nx_graph* g);
NX_API size_t nx_graph_node_count(const nx_graph* g);
NX_API nx_status nx_graph_dot(const nx_graph* g, char** out);
NX_API nx_status nx_graph_json(const nx_graph* g, char** out);

/* Generators. Output is {"facts": s, "unit": s, "selector": s} plus "query"
 * for the 3-colorability instance, whose graph is an edge list. */
NX_API nx_status nx_gen_prime_cycles(int m, char** out_json);
NX_API nx_status nx_gen_threecol(const char* edge_list, int k, char** out_json);

/* Oracle agreement and expansion-graph suites over count seeds from seed.
 * Report: {"samples", "checks", "failures": [...]} per suite. */
NX_API nx_status nx_selftest(uint64_t seed, int count, char** out_json, int* failures);

#ifdef __cplusplus
}
#endif

#endif /* NEXUS_NEXUS_H_ */
