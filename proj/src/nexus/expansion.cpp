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

#include "nexus/expansion.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "nexus/characterize.hpp"
#include "nexus/error.hpp"
#include "nexus/hom_engine.hpp"
#include "nexus/io.hpp"
#include "nexus/parallel.hpp"

namespace nexus {

namespace {

constexpr std::uint64_t kInstanceTupleCap = 10'000'000;

void check_arity(const Unit& unit, const Tuple& t) {
  if (t.arity() != unit.arity()) {
    throw Error(ErrorCode::ArityMismatch, "tuple " + to_string(t) + " against a unit of arity " +
                                              std::to_string(unit.arity()));
  }
}

void check_outside(const Unit& unit, const Tuple& t) {
  if (unit.contains(t)) {
    throw Error(ErrorCode::OverlapWithUnit, "tuple " + to_string(t) + " belongs to the unit");
  }
}

TupleSet instances_among(const Formula& f, const SelectiveKB& kb,
                         const std::vector<Tuple>& space) {
  TupleSet out;
  for (const auto& t : space) {
    if (is_instance(f, kb, t)) out.insert(t);
  }
  return out;
}

}  // namespace

bool is_definable(const Unit& unit, const SelectiveKB& kb) {
  const Formula can = build_can(unit, kb);
  const auto space = kb.tuple_space(unit.arity(), kInstanceTupleCap);
  // Look for a tuple outside U that the characterization still accepts.
  std::vector<char> witness(space.size(), 0);
  parallel_for(space.size(), kb.options().threads, [&](std::size_t i) {
    witness[i] = !unit.contains(space[i]) && is_instance(can, kb, space[i]);
  });
  return std::find(witness.begin(), witness.end(), 1) == witness.end();
}

bool ess_member(const Unit& unit, const SelectiveKB& kb, const Tuple& t) {
  check_arity(unit, t);
  return is_instance(build_can(unit, kb), kb, t);
}

TupleSet ess_set(const Unit& unit, const SelectiveKB& kb) {
  return instances(build_can(unit, kb), kb, kInstanceTupleCap);
}

Unit extend_unit(const Unit& unit, const SelectiveKB& kb, const Tuple& t) {
  check_arity(unit, t);
  TupleSet tuples = unit.as_set();
  tuples.insert(t);
  return validate_unit(tuples, kb.dataset());
}

bool gad1(const SelectiveKB& kb, const Unit& unit, const Tuple& t, const Tuple& t2) {
  check_outside(unit, t);
  check_outside(unit, t2);
  return ess_member(extend_unit(unit, kb, t2), kb, t);
}

bool gad2(const SelectiveKB& kb, const Unit& unit, const Tuple& t, const Tuple& t2) {
  check_outside(unit, t);
  check_outside(unit, t2);
  return ess_member(extend_unit(unit, kb, t), kb, t2);
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Prec: return "prec";
    case Verdict::PrecInv: return "prec_inv";
    case Verdict::Sim: return "sim";
    case Verdict::Inc: return "inc";
  }
  return "?";
}

Verdict compare(const SelectiveKB& kb, const Unit& unit, const Tuple& t, const Tuple& t2) {
  const bool first = gad1(kb, unit, t, t2);
  const bool second = gad2(kb, unit, t, t2);
  if (first && second) return Verdict::Sim;
  if (first) return Verdict::Prec;
  if (second) return Verdict::PrecInv;
  return Verdict::Inc;
}

ExpansionGraph build_expansion_graph(const Unit& unit, const SelectiveKB& kb,
                                     std::uint64_t tuple_cap) {
  const auto space = kb.tuple_space(unit.arity(), tuple_cap);
  const std::uint64_t budget = kb.options().budget;

  // Canonical characterization and instance set of U + t for every t.
  struct Candidate {
    std::optional<Formula> can;
    TupleSet instances;
  };
  std::vector<Candidate> cands(space.size());
  parallel_for(space.size(), kb.options().threads, [&](std::size_t i) {
    cands[i].can = build_can(extend_unit(unit, kb, space[i]), kb);
    cands[i].instances = instances_among(*cands[i].can, kb, space);
  });

  // Equal instance sets almost always mean equal classes; confirm each
  // member against the class cores of its group.
  std::map<TupleSet, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < cands.size(); ++i) groups[cands[i].instances].push_back(i);
  std::vector<ExpansionNode> nodes;
  for (const auto& [inst, members] : groups) {
    const std::size_t first_class = nodes.size();
    for (std::size_t i : members) {
      bool placed = false;
      for (std::size_t c = first_class; c < nodes.size() && !placed; ++c) {
        placed = equivalent(*cands[i].can, nodes[c].core, budget);
      }
      if (!placed) nodes.push_back({core_of_formula(*cands[i].can, budget), inst, {}});
    }
  }
  std::vector<std::string> printed;
  for (const auto& n : nodes) printed.push_back(format_formula(n.core));
  std::vector<std::size_t> order(nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (nodes[a].instances.size() != nodes[b].instances.size()) {
      return nodes[a].instances.size() < nodes[b].instances.size();
    }
    return printed[a] < printed[b];
  });
  ExpansionGraph g;
  g.arity = unit.arity();
  for (std::size_t i : order) g.nodes.push_back(std::move(nodes[i]));

  // below[a][b]: the core of b maps into the core of a, so b is more general.
  // That forces inst(a) to be a subset of inst(b), which prunes most pairs.
  const std::size_t n = g.nodes.size();
  std::vector<std::vector<char>> below(n, std::vector<char>(n, 0));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      const auto& ia = g.nodes[a].instances;
      const auto& ib = g.nodes[b].instances;
      if (!std::includes(ib.begin(), ib.end(), ia.begin(), ia.end())) continue;
      below[a][b] = maps_to(g.nodes[b].core, g.nodes[a].core, budget);
    }
  }
  std::vector<char> has_pred(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (!below[a][b]) continue;
      bool covered = false;
      for (std::size_t c = 0; c < n && !covered; ++c) {
        covered = c != a && c != b && below[a][c] && below[c][b];
      }
      if (!covered) {
        g.arcs.emplace_back(static_cast<int>(a), static_cast<int>(b));
        has_pred[b] = 1;
      }
    }
  }
  for (std::size_t b = 0; b < n; ++b) {
    TupleSet covered;
    for (const auto& [from, to] : g.arcs) {
      if (to == static_cast<int>(b)) covered.insert(g.nodes[from].instances.begin(),
                                                   g.nodes[from].instances.end());
    }
    for (const auto& t : g.nodes[b].instances) {
      if (!covered.count(t)) g.nodes[b].direct.insert(t);
    }
  }
  g.source = static_cast<int>(std::find(has_pred.begin(), has_pred.end(), 0) - has_pred.begin());

  if (auto problem = check_expansion_graph(g, unit, kb, tuple_cap); !problem.empty()) {
    throw Error(ErrorCode::InvariantViolation, "expansion graph: " + problem);
  }
  return g;
}

std::string check_expansion_graph(const ExpansionGraph& g, const Unit& unit,
                                  const SelectiveKB& kb, std::uint64_t tuple_cap) {
  const std::size_t n = g.nodes.size();
  if (n == 0) return "no nodes";
  std::vector<int> indegree(n, 0);
  std::vector<std::vector<int>> out(n);
  for (const auto& [a, b] : g.arcs) {
    if (a < 0 || b < 0 || a >= static_cast<int>(n) || b >= static_cast<int>(n) || a == b) {
      return "malformed arc";
    }
    out[a].push_back(b);
    ++indegree[b];
  }
  std::vector<int> sources;
  for (std::size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) sources.push_back(static_cast<int>(i));
  }
  std::vector<int> remaining = indegree;
  std::vector<int> ready = sources;
  std::size_t visited = 0;
  while (!ready.empty()) {
    const int v = ready.back();
    ready.pop_back();
    ++visited;
    for (int w : out[v]) {
      if (--remaining[w] == 0) ready.push_back(w);
    }
  }
  if (visited != n) return "cycle among classes";

  TupleSet seen;
  std::size_t total = 0;
  for (const auto& node : g.nodes) {
    total += node.direct.size();
    seen.insert(node.direct.begin(), node.direct.end());
  }
  const auto space = kb.tuple_space(unit.arity(), tuple_cap);
  if (seen.size() != total) return "direct instances overlap";
  if (seen != TupleSet(space.begin(), space.end())) return "direct instances miss tuples";

  if (sources.size() != 1) return std::to_string(sources.size()) + " source nodes";
  if (sources.front() != g.source) return "recorded source has predecessors";
  const auto& source = g.nodes[g.source];
  if (!isomorphic(source.core, build_core_char(unit, kb), kb.options().budget)) {
    return "source is not the class of the unit's core";
  }
  if (source.direct != ess_set(unit, kb)) return "source direct instances differ from ess";
  return {};
}

}  // namespace nexus
