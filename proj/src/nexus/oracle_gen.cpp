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

#include "nexus/oracle_gen.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include "nexus/characterize.hpp"
#include "nexus/error.hpp"

namespace nexus {

namespace {

using Row = std::vector<int>;

struct Relation {
  std::vector<int> vars;
  std::vector<Row> rows;  // sorted, unique
};

void normalize(std::vector<Row>& rows) {
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
}

Relation join(const Relation& a, const Relation& b, std::uint64_t cap) {
  Relation out;
  out.vars = a.vars;
  std::vector<std::pair<int, int>> shared;
  std::vector<int> extra;
  for (int j = 0; j < static_cast<int>(b.vars.size()); ++j) {
    auto it = std::find(a.vars.begin(), a.vars.end(), b.vars[j]);
    if (it == a.vars.end()) {
      extra.push_back(j);
      out.vars.push_back(b.vars[j]);
    } else {
      shared.emplace_back(static_cast<int>(it - a.vars.begin()), j);
    }
  }
  std::map<Row, std::vector<const Row*>> by_key;
  for (const auto& rb : b.rows) {
    Row key;
    for (const auto& [i, j] : shared) key.push_back(rb[j]);
    by_key[key].push_back(&rb);
  }
  for (const auto& ra : a.rows) {
    Row key;
    for (const auto& [i, j] : shared) key.push_back(ra[i]);
    auto it = by_key.find(key);
    if (it == by_key.end()) continue;
    for (const Row* rb : it->second) {
      Row row = ra;
      for (int j : extra) row.push_back((*rb)[j]);
      out.rows.push_back(std::move(row));
      if (out.rows.size() > cap) {
        throw Error(ErrorCode::TooLarge,
                    "exhaustive evaluation exceeded " + std::to_string(cap) + " intermediate rows");
      }
    }
  }
  normalize(out.rows);
  return out;
}

Relation project_out(const Relation& r, int v) {
  const auto pos = std::find(r.vars.begin(), r.vars.end(), v) - r.vars.begin();
  Relation out;
  out.vars = r.vars;
  out.vars.erase(out.vars.begin() + pos);
  out.rows.reserve(r.rows.size());
  for (const auto& row : r.rows) {
    Row shorter = row;
    shorter.erase(shorter.begin() + pos);
    out.rows.push_back(std::move(shorter));
  }
  normalize(out.rows);
  return out;
}

// Satisfiability of a formula over one fact set under fixed images for the
// free variables. One relation per atom, filtered to arc consistency, then
// bound variables are joined out one at a time; when the joins grow too wide
// a backtracking search over the filtered relations decides instead.
// TooLarge once the search exceeds the cap.
class Satisfiable {
 public:
  static constexpr std::uint64_t kJoinRowCap = 200'000;

  // images[i] is the image of the i-th distinct free variable.
  Satisfiable(const Formula& f, const Dataset& data, const std::vector<std::string>& images,
              std::uint64_t cap) {
    std::map<std::string, int> const_id;
    for (const auto& c : data.domain()) const_id.emplace(c, static_cast<int>(const_id.size()));
    std::map<std::string, int> fixed_of;
    for (const auto& x : f.free_vars()) {
      if (fixed_of.count(x)) continue;
      const std::string& image = images[fixed_of.size()];
      auto it = const_id.find(image);
      fixed_of.emplace(x, it == const_id.end() ? -1 : it->second);
    }
    std::map<std::string, int> var_id;
    std::map<std::string, std::vector<const Atom*>> by_pred;
    for (const auto& a : data.atoms()) by_pred[a.predicate].push_back(&a);

    std::vector<Relation> rels;
    for (const auto& a : f.atoms()) {
      Relation r;
      std::vector<int> pos_of(a.arity(), -1);
      std::vector<int> fixed(a.arity(), -1);
      bool possible = true;
      for (int i = 0; i < a.arity(); ++i) {
        const Term& t = a.args[i];
        auto fit = t.is_variable() ? fixed_of.find(t.name) : fixed_of.end();
        if (fit != fixed_of.end()) {
          if (fit->second < 0) possible = false;
          else fixed[i] = fit->second;
        } else if (t.is_variable()) {
          const int v = var_id.emplace(t.name, static_cast<int>(var_id.size())).first->second;
          auto it = std::find(r.vars.begin(), r.vars.end(), v);
          pos_of[i] = static_cast<int>(it - r.vars.begin());
          if (it == r.vars.end()) r.vars.push_back(v);
        } else {
          auto it = const_id.find(t.name);
          if (it == const_id.end()) possible = false;
          else fixed[i] = it->second;
        }
      }
      auto pit = by_pred.find(a.predicate);
      if (possible && pit != by_pred.end()) {
        for (const Atom* fact : pit->second) {
          if (fact->arity() != a.arity()) continue;
          Row row(r.vars.size(), -1);
          bool ok = true;
          for (int i = 0; i < a.arity() && ok; ++i) {
            const int c = const_id.at(fact->args[i].name);
            if (pos_of[i] < 0) {
              ok = c == fixed[i];
            } else if (row[pos_of[i]] >= 0) {
              ok = row[pos_of[i]] == c;
            } else {
              row[pos_of[i]] = c;
            }
          }
          if (ok) r.rows.push_back(std::move(row));
        }
      }
      normalize(r.rows);
      if (r.rows.empty()) return;
      if (!r.vars.empty()) rels.push_back(std::move(r));
    }

    const int var_count = static_cast<int>(var_id.size());
    const int value_count = static_cast<int>(const_id.size());
    Domains domains(var_count, std::vector<char>(value_count, 1));
    if (!filter(rels, domains)) return;
    for (auto& r : rels) restrict_rows(r, domains);
    try {
      holds_ = eliminate(rels, std::min(cap, kJoinRowCap));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::TooLarge) throw;
      // Too wide to join out; search assignments instead.
      std::uint64_t nodes = 0;
      holds_ = search(rels, domains, cap, nodes);
    }
  }

  bool holds() const { return holds_; }

 private:
  // domains[v][c] is nonzero while value c is still possible for variable v.
  using Domains = std::vector<std::vector<char>>;

  static bool row_alive(const Relation& r, const Row& row, const Domains& domains) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (!domains[r.vars[i]][row[i]]) return false;
    }
    return true;
  }

  static void restrict_rows(Relation& r, const Domains& domains) {
    std::erase_if(r.rows, [&](const Row& row) { return !row_alive(r, row, domains); });
  }

  // Removes values without support in some relation until nothing changes.
  // False when a domain empties.
  static bool filter(const std::vector<Relation>& rels, Domains& domains) {
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& r : rels) {
        std::vector<std::vector<char>> support(r.vars.size(),
                                               std::vector<char>(domains.empty() ? 0 : domains[0].size(), 0));
        for (const auto& row : r.rows) {
          if (!row_alive(r, row, domains)) continue;
          for (std::size_t i = 0; i < row.size(); ++i) support[i][row[i]] = 1;
        }
        for (std::size_t i = 0; i < r.vars.size(); ++i) {
          auto& dom = domains[r.vars[i]];
          bool any = false;
          for (std::size_t c = 0; c < dom.size(); ++c) {
            if (dom[c] && !support[i][c]) {
              dom[c] = 0;
              changed = true;
            }
            any = any || dom[c];
          }
          if (!any) return false;
        }
      }
    }
    return true;
  }

  // Joins out variables one at a time, always the one whose joined schema is
  // narrowest. TooLarge when a join exceeds the cap.
  static bool eliminate(std::vector<Relation> rels, std::uint64_t cap) {
    while (true) {
      std::map<int, std::set<int>> schema;
      for (const auto& r : rels) {
        for (int v : r.vars) schema[v].insert(r.vars.begin(), r.vars.end());
      }
      if (schema.empty()) return true;
      int best = schema.begin()->first;
      for (const auto& [v, vars] : schema) {
        if (vars.size() < schema[best].size()) best = v;
      }
      std::vector<Relation> keep;
      std::optional<Relation> joined;
      for (auto& r : rels) {
        if (std::find(r.vars.begin(), r.vars.end(), best) == r.vars.end()) {
          keep.push_back(std::move(r));
        } else {
          joined = joined ? join(*joined, r, cap) : std::move(r);
        }
      }
      Relation projected = project_out(*joined, best);
      if (projected.rows.empty()) return false;
      if (!projected.vars.empty()) keep.push_back(std::move(projected));
      rels = std::move(keep);
    }
  }

  // Backtracking over the smallest open domain with filtering after every
  // choice. Filtering leaves a supported row in every relation, so once all
  // domains are singletons the assignment satisfies every relation.
  static bool search(const std::vector<Relation>& rels, const Domains& domains, std::uint64_t cap,
                     std::uint64_t& nodes) {
    int best = -1;
    std::size_t best_size = 0;
    for (int v = 0; v < static_cast<int>(domains.size()); ++v) {
      const auto size = static_cast<std::size_t>(std::count(domains[v].begin(), domains[v].end(), 1));
      if (size > 1 && (best < 0 || size < best_size)) {
        best = v;
        best_size = size;
      }
    }
    if (best < 0) return true;
    for (std::size_t c = 0; c < domains[best].size(); ++c) {
      if (!domains[best][c]) continue;
      if (++nodes > cap) {
        throw Error(ErrorCode::TooLarge, "exhaustive search exceeded " + std::to_string(cap) + " nodes");
      }
      Domains next = domains;
      std::fill(next[best].begin(), next[best].end(), 0);
      next[best][c] = 1;
      if (filter(rels, next) && search(rels, next, cap, nodes)) return true;
    }
    return false;
  }

  bool holds_ = false;
};

}  // namespace

TupleSet brute_instances(const Formula& f, const SelectiveKB& kb, std::uint64_t node_cap) {
  TupleSet out;
  // Summaries repeat across tuples under coarse selectors.
  std::map<std::pair<std::vector<Atom>, std::vector<std::string>>, bool> cache;
  for (const auto& t : kb.tuple_space(f.arity(), node_cap)) {
    std::map<std::string, std::string> images;
    bool consistent = true;
    std::vector<std::string> free_images;
    for (int i = 0; i < f.arity(); ++i) {
      auto [it, inserted] = images.emplace(f.free_vars()[i], t[i]);
      if (inserted) {
        free_images.push_back(t[i]);
      } else if (it->second != t[i]) {
        consistent = false;
      }
    }
    if (!consistent) continue;
    auto summary = kb.summarize(t);
    auto key = std::make_pair(summary->data.atoms(), free_images);
    auto it = cache.find(key);
    if (it == cache.end()) {
      it = cache.emplace(std::move(key), Satisfiable(f, summary->data, free_images, node_cap).holds())
               .first;
    }
    if (it->second) out.insert(t);
  }
  return out;
}

std::vector<DefinableUnit> brute_definable_units(const SelectiveKB& kb, int arity,
                                                 const TupleSet* within) {
  if (kb.tuple_space_size(arity) > 12) {
    throw Error(ErrorCode::TooLarge, "tuple space of " + std::to_string(kb.tuple_space_size(arity)) +
                                         " tuples is too large to enumerate its subsets");
  }
  const auto space = kb.tuple_space(arity, 12);
  std::vector<DefinableUnit> out;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << space.size()); ++mask) {
    TupleSet tuples;
    for (std::size_t i = 0; i < space.size(); ++i) {
      if (mask >> i & 1) tuples.insert(space[i]);
    }
    if (within && !std::includes(tuples.begin(), tuples.end(), within->begin(), within->end())) {
      continue;
    }
    if (duplicate_columns(tuples)) continue;
    const Unit unit = validate_unit(tuples, kb.dataset());
    Formula can = build_can(unit, kb);
    if (brute_instances(can, kb) == tuples) out.push_back({std::move(tuples), std::move(can)});
  }
  return out;
}

TupleSet brute_ess(const Unit& unit, const SelectiveKB& kb) {
  const TupleSet base = unit.as_set();
  if (kb.tuple_space_size(unit.arity()) > base.size() + kBruteEssExtraCap) {
    throw Error(ErrorCode::TooLarge, "too many tuples outside the unit to enumerate supersets");
  }
  std::vector<Tuple> extra;
  for (const auto& t : kb.tuple_space(unit.arity(), base.size() + kBruteEssExtraCap)) {
    if (!base.count(t)) extra.push_back(t);
  }
  // Supersets by increasing size. One that already contains the running
  // intersection cannot shrink it, so its definability is not needed.
  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 0; m < (std::uint32_t{1} << extra.size()); ++m) masks.push_back(m);
  std::stable_sort(masks.begin(), masks.end(), [](std::uint32_t l, std::uint32_t r) {
    return std::popcount(l) < std::popcount(r);
  });
  std::optional<TupleSet> meet;
  for (std::uint32_t m : masks) {
    TupleSet tuples = base;
    for (std::size_t i = 0; i < extra.size(); ++i) {
      if (m >> i & 1) tuples.insert(extra[i]);
    }
    if (meet && std::includes(tuples.begin(), tuples.end(), meet->begin(), meet->end())) continue;
    if (duplicate_columns(tuples)) continue;
    const Unit candidate = validate_unit(tuples, kb.dataset());
    if (brute_instances(build_can(candidate, kb), kb) != tuples) continue;
    if (!meet) {
      meet = std::move(tuples);
    } else {
      TupleSet keep;
      std::set_intersection(meet->begin(), meet->end(), tuples.begin(), tuples.end(),
                            std::inserter(keep, keep.end()));
      meet = std::move(keep);
    }
    if (*meet == base) break;
  }
  if (!meet) throw Error(ErrorCode::InvariantViolation, "no definable superset found");
  return *meet;
}

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

bool coin(std::mt19937_64& rng, double p) {
  return static_cast<double>(rng() % 1'000'000) < p * 1'000'000.0;
}

}  // namespace

RandomSkbConfig oracle_config(std::uint64_t seed, int unit_arity) {
  RandomSkbConfig config;
  config.seed = seed;
  if (unit_arity >= 2) config.max_constants = 2;
  return config;
}

GeneratedInstance random_instance(const RandomSkbConfig& config, int unit_arity, int max_unit) {
  if (config.max_constants < 2 || config.max_constants > 6) {
    throw Error(ErrorCode::InvalidArgument, "max_constants must lie in [2, 6]");
  }
  if (unit_arity < 1 || max_unit < 1) {
    throw Error(ErrorCode::InvalidArgument, "unit arity and size must be positive");
  }
  std::mt19937_64 rng(config.seed);
  const int n = 2 + static_cast<int>(pick(rng, config.max_constants - 1));
  std::vector<std::string> constants;
  for (int i = 1; i <= n; ++i) constants.push_back("c" + std::to_string(i));

  std::vector<Atom> atoms;
  for (const auto& c : constants) atoms.push_back({std::string(kTopPredicate), {Term::constant(c)}});
  for (const auto& p : config.predicates) {
    std::vector<std::size_t> idx(p.arity, 0);
    while (true) {
      if (coin(rng, config.atom_density)) {
        Atom a{p.name, {}};
        for (auto i : idx) a.args.push_back(Term::constant(constants[i]));
        atoms.push_back(std::move(a));
      }
      int k = p.arity - 1;
      while (k >= 0 && ++idx[k] == constants.size()) idx[k--] = 0;
      if (k < 0) break;
    }
  }
  const std::string selector = config.selectors[pick(rng, config.selectors.size())];
  Dataset d = Dataset::close_under_top(std::move(atoms));

  SelectiveKB probe(d, SelectorSpec::full());
  const auto space = probe.tuple_space(unit_arity, 1'000'000);
  TupleSet tuples;
  for (int attempt = 0; attempt < 100; ++attempt) {
    tuples.clear();
    const int size = 1 + static_cast<int>(pick(rng, std::min<std::size_t>(max_unit, space.size())));
    while (static_cast<int>(tuples.size()) < size) tuples.insert(space[pick(rng, space.size())]);
    if (!duplicate_columns(tuples)) break;
  }
  if (duplicate_columns(tuples)) {
    // Every tuple drawn had equal columns; fall back to one with distinct entries.
    tuples.clear();
    for (const auto& t : space) {
      if (!duplicate_columns({t})) {
        tuples.insert(t);
        break;
      }
    }
  }
  Unit unit = validate_unit(tuples, d);
  return {SelectiveKB(std::move(d), SelectorSpec::parse(selector)), std::move(unit), selector, {}};
}

Formula random_formula(std::mt19937_64& rng, const std::vector<PredicateSig>& sig,
                       const std::vector<std::string>& constants, int arity, int max_atoms,
                       int max_bound_vars) {
  std::vector<Term> pool;
  for (int i = 1; i <= arity; ++i) pool.push_back(Term::variable("x" + std::to_string(i)));
  for (int i = 1; i <= max_bound_vars; ++i) pool.push_back(Term::variable("y" + std::to_string(i)));
  for (const auto& c : constants) pool.push_back(Term::constant(c));
  std::vector<PredicateSig> preds = sig;
  preds.push_back({std::string(kTopPredicate), 1});

  std::vector<Atom> atoms;
  const int count = 1 + static_cast<int>(pick(rng, max_atoms));
  for (int i = 0; i < count; ++i) {
    const auto& p = preds[pick(rng, preds.size())];
    Atom a{p.name, {}};
    for (int j = 0; j < p.arity; ++j) a.args.push_back(pool[pick(rng, pool.size())]);
    atoms.push_back(std::move(a));
  }
  std::vector<std::string> head;
  for (int i = 1; i <= arity; ++i) {
    const Term x = Term::variable("x" + std::to_string(i));
    head.push_back(x.name);
    if (std::none_of(atoms.begin(), atoms.end(), [&](const Atom& a) { return a.mentions(x); })) {
      atoms.push_back({std::string(kTopPredicate), {x}});
    }
  }
  return Formula(std::move(head), std::move(atoms));
}

std::vector<Formula> enumerate_formulas(const std::vector<PredicateSig>& sig,
                                        const std::vector<std::string>& constants, int arity,
                                        int max_atoms, int max_bound_vars) {
  std::vector<Term> pool;
  std::vector<std::string> head;
  for (int i = 1; i <= arity; ++i) {
    head.push_back("x" + std::to_string(i));
    pool.push_back(Term::variable(head.back()));
  }
  for (int i = 1; i <= max_bound_vars; ++i) pool.push_back(Term::variable("y" + std::to_string(i)));
  for (const auto& c : constants) pool.push_back(Term::constant(c));
  std::vector<PredicateSig> preds = sig;
  preds.push_back({std::string(kTopPredicate), 1});

  std::vector<Atom> candidates;
  for (const auto& p : preds) {
    std::vector<std::size_t> idx(p.arity, 0);
    while (true) {
      Atom a{p.name, {}};
      for (auto i : idx) a.args.push_back(pool[i]);
      candidates.push_back(std::move(a));
      int k = p.arity - 1;
      while (k >= 0 && ++idx[k] == pool.size()) idx[k--] = 0;
      if (k < 0) break;
    }
  }
  std::sort(candidates.begin(), candidates.end());

  std::vector<Formula> out;
  std::vector<std::size_t> chosen;
  // Subsets in lexicographic order of candidate indices.
  auto emit = [&] {
    std::vector<Atom> atoms;
    for (auto i : chosen) atoms.push_back(candidates[i]);
    for (const auto& x : head) {
      const Term v = Term::variable(x);
      if (std::none_of(atoms.begin(), atoms.end(), [&](const Atom& a) { return a.mentions(v); })) {
        return;
      }
    }
    // Skip bodies that use y2 without y1 and so on, which are renamings of
    // smaller-index choices.
    for (int i = 2; i <= max_bound_vars; ++i) {
      const Term later = Term::variable("y" + std::to_string(i));
      const Term earlier = Term::variable("y" + std::to_string(i - 1));
      const bool uses_later =
          std::any_of(atoms.begin(), atoms.end(), [&](const Atom& a) { return a.mentions(later); });
      const bool uses_earlier = std::any_of(atoms.begin(), atoms.end(),
                                            [&](const Atom& a) { return a.mentions(earlier); });
      if (uses_later && !uses_earlier) return;
    }
    Formula f(head, std::move(atoms));
    if (in_nxl(f)) out.push_back(std::move(f));
  };
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (!chosen.empty()) emit();
    if (static_cast<int>(chosen.size()) == max_atoms) return;
    for (std::size_t i = from; i < candidates.size(); ++i) {
      chosen.push_back(i);
      rec(i + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  return out;
}

GeneratedInstance gen_prime_cycles(int m) {
  static constexpr int kPrimes[] = {2, 3, 5, 7};
  if (m < 1 || m > 4) throw Error(ErrorCode::InvalidArgument, "cycle count must lie in [1, 4]");
  std::vector<Atom> atoms;
  TupleSet tuples;
  auto name = [](int cycle, int j) { return "c" + std::to_string(cycle) + "_" + std::to_string(j); };
  for (int i = 1; i <= m; ++i) {
    const int p = kPrimes[i - 1];
    for (int j = 1; j <= p; ++j) {
      atoms.push_back({"r", {Term::constant(name(i, j)), Term::constant(name(i, j % p + 1))}});
    }
    tuples.insert(Tuple{name(i, 1)});
  }
  Dataset d = Dataset::close_under_top(std::move(atoms));
  Unit unit = validate_unit(tuples, d);
  // A radius of the largest prime reaches every element of a tuple's cycle
  // and nothing else, since the cycles are disjoint.
  const std::string selector = "neighborhood:" + std::to_string(kPrimes[m - 1]);
  return {SelectiveKB(std::move(d), SelectorSpec::parse(selector)), std::move(unit), selector, {}};
}

Graph parse_edge_list(std::string_view text) {
  Graph g;
  std::set<std::string> vertices;
  std::set<std::pair<std::string, std::string>> edges;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    if (tokens.size() > 2) throw ParseError(number, "expected 'u v' or a single vertex");
    for (const auto& t : tokens) {
      if (!is_valid_identifier(t) || t == kTopPredicate) {
        throw ParseError(number, "invalid vertex name '" + t + "'");
      }
      vertices.insert(t);
    }
    if (tokens.size() == 2) {
      if (tokens[0] == tokens[1]) throw ParseError(number, "self-loop on '" + tokens[0] + "'");
      edges.insert(std::minmax(tokens[0], tokens[1]));
    }
  }
  g.vertices.assign(vertices.begin(), vertices.end());
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

Graph complete_graph(int n) {
  Graph g;
  for (int i = 1; i <= n; ++i) g.vertices.push_back("v" + std::to_string(i));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) g.edges.emplace_back(g.vertices[i], g.vertices[j]);
  }
  return g;
}

Graph cycle_graph(int n) {
  Graph g;
  for (int i = 1; i <= n; ++i) g.vertices.push_back("v" + std::to_string(i));
  for (int i = 0; i < n; ++i) g.edges.emplace_back(g.vertices[i], g.vertices[(i + 1) % n]);
  return g;
}

Graph random_graph(int n, double edge_probability, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Graph g;
  for (int i = 1; i <= n; ++i) g.vertices.push_back("v" + std::to_string(i));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (coin(rng, edge_probability)) g.edges.emplace_back(g.vertices[i], g.vertices[j]);
    }
  }
  return g;
}

std::string lifted_name(const std::string& c, int s) { return c + "^" + std::to_string(s); }

void check_no_reserved_symbols(const std::vector<Atom>& atoms) {
  for (const auto& a : atoms) {
    if (a.predicate == "focus" || a.predicate.rfind("twin_", 0) == 0) {
      throw Error(ErrorCode::ReservedSymbolCollision,
                  "predicate '" + a.predicate + "' is reserved for gadgets");
    }
    for (const auto& t : a.args) {
      if (t.name == "alias" || t.name.find('^') != std::string::npos) {
        throw Error(ErrorCode::ReservedSymbolCollision,
                    "constant '" + t.name + "' is reserved for gadgets");
      }
    }
  }
}

std::vector<Atom> gadget_tw(const std::vector<std::string>& constants, int k) {
  std::vector<Atom> out;
  for (const auto& c : constants) {
    if (c.find('^') != std::string::npos || c == "alias") {
      throw Error(ErrorCode::ReservedSymbolCollision, "cannot lift reserved constant '" + c + "'");
    }
    for (int s = 2; s <= k; ++s) {
      const Term lifted = Term::constant(lifted_name(c, s));
      out.push_back({std::string(kTopPredicate), {lifted}});
      out.push_back({"twin_" + std::to_string(s), {Term::constant(c), lifted}});
    }
  }
  normalize(out);
  return out;
}

std::vector<Atom> gadget_fc(const std::vector<std::string>& constants) {
  std::vector<Atom> out;
  for (const auto& c : constants) out.push_back({"focus", {Term::constant(c)}});
  normalize(out);
  return out;
}

Dataset gadget_double(const Dataset& d, const std::string& a) {
  check_no_reserved_symbols(d.atoms());
  const Term original = Term::constant(a);
  const Term alias = Term::constant("alias");
  std::vector<Atom> out;
  for (const auto& atom : d.atoms()) {
    std::vector<int> hits;
    for (int i = 0; i < atom.arity(); ++i) {
      if (atom.args[i] == original) hits.push_back(i);
    }
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << hits.size()); ++mask) {
      Atom copy = atom;
      for (std::size_t b = 0; b < hits.size(); ++b) {
        if (mask >> b & 1) copy.args[hits[b]] = alias;
      }
      out.push_back(std::move(copy));
    }
  }
  return Dataset::close_under_top(std::move(out));
}

Tuple gadget_off(const Tuple& t, const std::string& a) {
  std::vector<std::string> out;
  for (const auto& e : t.entries) {
    if (e == "alias") {
      out.push_back(a);
    } else if (auto caret = e.find('^'); caret != std::string::npos) {
      out.push_back(e.substr(0, caret));
    } else {
      out.push_back(e);
    }
  }
  return Tuple(std::move(out));
}

GeneratedInstance gen_3col_instance(const Graph& g, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "lifting degree must be positive");
  const std::set<std::string> reserved{"a1", "a2", "b1", "b2", "b3", "b4", "alias"};
  auto copy = [](const std::string& v, int i) { return v + "_" + std::to_string(i); };
  std::set<std::string> copies;
  for (const auto& v : g.vertices) {
    if (v.find('^') != std::string::npos) {
      throw Error(ErrorCode::ReservedSymbolCollision, "vertex '" + v + "' uses '^'");
    }
    for (int i = 1; i <= 2; ++i) {
      if (reserved.count(copy(v, i)) || !copies.insert(copy(v, i)).second) {
        throw Error(ErrorCode::ReservedSymbolCollision,
                    "vertex copy '" + copy(v, i) + "' collides with another symbol");
      }
    }
  }
  auto arc = [](const std::string& u, const std::string& v) {
    return Atom{"arc", {Term::constant(u), Term::constant(v)}};
  };
  std::vector<Atom> atoms;
  for (const auto& [u, v] : g.edges) {
    for (int i = 1; i <= 2; ++i) {
      atoms.push_back(arc(copy(u, i), copy(v, i)));
      atoms.push_back(arc(copy(v, i), copy(u, i)));
    }
  }
  const std::vector<std::string> b{"b1", "b2", "b3", "b4"};
  for (const auto& x : b) {
    for (const auto& y : b) {
      if (x != y) atoms.push_back(arc(x, y));
    }
  }
  for (int i = 1; i <= 2; ++i) {
    const std::string a = "a" + std::to_string(i);
    atoms.push_back({std::string(kTopPredicate), {Term::constant(a)}});
    for (const auto& v : g.vertices) {
      atoms.push_back(arc(a, copy(v, i)));
      atoms.push_back(arc(copy(v, i), a));
    }
  }
  for (auto& t : gadget_tw({"b1", "b2", "b3", "b4", "a1", "a2"}, k)) atoms.push_back(std::move(t));
  Dataset d = Dataset::close_under_top(std::move(atoms));

  auto lift = [&](const std::string& c) {
    std::vector<std::string> entries{c};
    for (int s = 2; s <= k; ++s) entries.push_back(lifted_name(c, s));
    return Tuple(std::move(entries));
  };
  Unit unit = validate_unit({lift("a1"), lift("a2")}, d);
  return {SelectiveKB(std::move(d), SelectorSpec::full()), std::move(unit), "full", lift("b1")};
}

bool is_three_colorable(const Graph& g) {
  std::map<std::string, int> index;
  for (const auto& v : g.vertices) index.emplace(v, static_cast<int>(index.size()));
  std::vector<std::vector<int>> adj(index.size());
  for (const auto& [u, v] : g.edges) {
    adj[index.at(u)].push_back(index.at(v));
    adj[index.at(v)].push_back(index.at(u));
  }
  std::vector<int> color(index.size(), -1);
  std::function<bool(std::size_t)> paint = [&](std::size_t v) {
    if (v == color.size()) return true;
    for (int c = 0; c < 3; ++c) {
      bool clash = false;
      for (int w : adj[v]) clash = clash || color[w] == c;
      if (clash) continue;
      color[v] = c;
      if (paint(v + 1)) return true;
      color[v] = -1;
    }
    return false;
  };
  return paint(0);
}

}  // namespace nexus
