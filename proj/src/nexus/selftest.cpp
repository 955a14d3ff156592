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

#include "nexus/selftest.hpp"

#include <algorithm>
#include <iterator>
#include <random>
#include <sstream>

#include "nexus/characterize.hpp"
#include "nexus/error.hpp"
#include "nexus/expansion.hpp"
#include "nexus/hom_engine.hpp"
#include "nexus/io.hpp"
#include "nexus/oracle_gen.hpp"

namespace nexus {

namespace {

class Checker {
 public:
  Checker(SelftestReport& report, std::string context)
      : report_(report), context_(std::move(context)) {}

  void expect(bool ok, const std::string& what) {
    ++report_.checks;
    if (!ok) report_.failures.push_back(context_ + ": " + what);
  }

 private:
  SelftestReport& report_;
  std::string context_;
};

TupleSet intersect(const TupleSet& a, const TupleSet& b) {
  TupleSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

bool subset(const TupleSet& a, const TupleSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

int sample_arity(std::uint64_t s) { return s % 2 == 1 ? 1 : 2; }

void check_sample(std::uint64_t s, SelftestReport& report) {
  const int arity = sample_arity(s);
  GeneratedInstance gi = random_instance(oracle_config(s, arity), arity, 2);
  std::ostringstream ctx;
  ctx << "seed " << s << " selector " << gi.selector << " unit " << to_string(gi.unit.as_set());
  Checker check(report, ctx.str());
  const SelectiveKB& kb = gi.kb;
  const Unit& unit = gi.unit;

  // Random formulas: engine against oracle, containment in the plain
  // answers, conjunction as intersection, and core equivalence.
  std::mt19937_64 rng(s ^ 0x9e3779b97f4a7c15ULL);
  const auto& domain = kb.dataset().domain();
  std::vector<std::string> pool(domain.begin(), domain.begin() + std::min<std::size_t>(2, domain.size()));
  const RandomSkbConfig defaults;
  const Formula f1 = random_formula(rng, defaults.predicates, pool, arity, 3, 2);
  const Formula f2 = random_formula(rng, defaults.predicates, pool, arity, 3, 2);
  const std::string f1_text = format_formula(f1);
  const TupleSet i1 = instances(f1, kb);
  const TupleSet i2 = instances(f2, kb);
  check.expect(i1 == brute_instances(f1, kb), "instances differ from oracle for " + f1_text);
  check.expect(subset(i1, evaluate(f1, kb.dataset())), "instances exceed answers for " + f1_text);
  const Formula both = conjoin(f1, f2);
  const TupleSet ib = instances(both, kb);
  check.expect(ib == intersect(i1, i2), "conjunction is not intersection for " + format_formula(both));
  check.expect(ib == brute_instances(both, kb), "conjunction differs from oracle");
  const Formula c1 = core_of_formula(f1);
  check.expect(maps_to(f1, c1) && maps_to(c1, f1), "core is not equivalent to " + f1_text);
  check.expect(evaluate(c1, kb.dataset()) == evaluate(f1, kb.dataset()),
               "equivalent formulas differ in answers for " + f1_text);
  check.expect(instances(c1, kb) == i1, "equivalent formulas differ in instances for " + f1_text);

  // Canonical characterization: interpretation, definability and ess.
  const Formula can = build_can(unit, kb);
  const TupleSet brute_can = brute_instances(can, kb);
  check.expect(subset(unit.as_set(), brute_can), "can does not interpret the unit");
  check.expect(instances(can, kb) == brute_can, "can instances differ from oracle");
  check.expect(is_definable(unit, kb) == (brute_can == unit.as_set()), "definability differs from oracle");
  const TupleSet ess = ess_set(unit, kb);
  check.expect(ess == brute_ess(unit, kb), "ess differs from oracle");
  if (!duplicate_columns(ess)) {
    check.expect(is_definable(validate_unit(ess, kb.dataset()), kb), "ess is not definable");
  }
  const Formula core = build_core_char(unit, kb);
  check.expect(instances(core, kb) == brute_can, "core and can differ in instances");
}

}  // namespace

SelftestReport run_selftest(std::uint64_t seed, int count) {
  if (count < 0) throw Error(ErrorCode::InvalidArgument, "count must be nonnegative");
  SelftestReport report;
  for (int i = 0; i < count; ++i) {
    check_sample(seed + static_cast<std::uint64_t>(i), report);
    ++report.samples;
  }
  return report;
}

SelftestReport run_graph_selftest(std::uint64_t seed, int count) {
  if (count < 0) throw Error(ErrorCode::InvalidArgument, "count must be nonnegative");
  SelftestReport report;
  for (int i = 0; i < count; ++i) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
    const int arity = sample_arity(s);
    GeneratedInstance gi = random_instance(oracle_config(s, arity), arity, 2);
    Checker check(report, "seed " + std::to_string(s) + " selector " + gi.selector);
    try {
      const ExpansionGraph g = build_expansion_graph(gi.unit, gi.kb);
      const std::string problem = check_expansion_graph(g, gi.unit, gi.kb);
      check.expect(problem.empty(), problem);
    } catch (const Error& e) {
      check.expect(false, e.what());
    }
    ++report.samples;
  }
  return report;
}

}  // namespace nexus
