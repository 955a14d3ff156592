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

#include "nexus/hom_engine.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <set>

#include "nexus/error.hpp"
#include "nexus/parallel.hpp"

namespace nexus {

using Relation = AtomIndex::Relation;

struct HomSearch::Impl {
  struct Arg {
    int var = -1;    // variable index, or -1 when the position is fixed
    int value = -1;  // target id when fixed
  };
  struct Constraint {
    const Relation* rel = nullptr;
    std::vector<Arg> args;
    std::vector<int> eq_prev;  // earlier position holding the same variable
    std::vector<int> slot;     // index into scope, -1 for fixed or repeated
    std::vector<int> scope;    // distinct variables
  };
  struct Saved {
    int var;
    int size;
    int stamp;
    std::vector<std::uint64_t> words;
  };

  const AtomIndex& target;
  SearchOptions options;
  bool infeasible = false;
  bool initialized = false;

  std::vector<Term> var_terms;
  std::map<Term, int> var_id;
  std::map<Term, int> fixed;  // source term -> target id

  int num_vars = 0;
  int words = 0;
  std::vector<std::uint64_t> bits;
  std::vector<int> dom_size;
  std::vector<std::vector<int>> cons_of;
  std::vector<Constraint> cons;

  std::vector<Saved> trail;
  std::vector<int> stamp;
  int level = 0;
  std::uint64_t nodes = 0;

  std::vector<std::uint64_t> support;
  std::deque<int> con_queue;
  std::vector<char> queued;
  std::vector<int> singles;

  Impl(std::span<const Atom> source, const AtomIndex& t, const TermMap& pinned,
       const SearchOptions& o)
      : target(t), options(o) {
    std::set<Term> terms;
    for (const auto& a : source) terms.insert(a.args.begin(), a.args.end());
    for (const auto& term : terms) {
      if (auto it = pinned.find(term); it != pinned.end()) {
        fixed[term] = target.id_of(it->second);
      } else if (term.is_constant()) {
        fixed[term] = target.id_of(term);
      } else {
        var_id[term] = static_cast<int>(var_terms.size());
        var_terms.push_back(term);
      }
    }
    for (const auto& [term, id] : fixed) {
      if (id < 0) infeasible = true;
    }
    num_vars = static_cast<int>(var_terms.size());
    const int n = target.num_terms();
    words = (n + 63) / 64;
    bits.assign(static_cast<std::size_t>(num_vars) * words, 0);
    dom_size.assign(num_vars, 0);
    stamp.assign(num_vars, -1);
    cons_of.assign(num_vars, {});
    if (infeasible) return;

    std::vector<std::uint64_t> initial(words, 0);
    if (options.injective) {
      std::set<int> used;
      for (const auto& [term, id] : fixed) {
        if (term.is_variable()) used.insert(id);
      }
      for (int id = 0; id < n; ++id) {
        if (target.term(id).is_variable() && !used.count(id)) {
          initial[id / 64] |= std::uint64_t{1} << (id % 64);
        }
      }
    } else {
      for (int id = 0; id < n; ++id) initial[id / 64] |= std::uint64_t{1} << (id % 64);
    }
    const int initial_size = popcount(initial.data());
    for (int v = 0; v < num_vars; ++v) {
      std::copy(initial.begin(), initial.end(), dom(v));
      dom_size[v] = initial_size;
      if (initial_size == 0) infeasible = true;
    }

    std::size_t max_scope = 0;
    for (const auto& a : source) {
      const Relation* rel = target.find(a.predicate, a.arity());
      if (rel == nullptr || rel->size() == 0) {
        infeasible = true;
        return;
      }
      Constraint c;
      c.rel = rel;
      c.args.resize(a.arity());
      c.eq_prev.assign(a.arity(), -1);
      c.slot.assign(a.arity(), -1);
      std::vector<int> ground;
      for (int p = 0; p < a.arity(); ++p) {
        const Term& term = a.args[p];
        if (auto it = fixed.find(term); it != fixed.end()) {
          c.args[p].value = it->second;
          ground.push_back(it->second);
          continue;
        }
        const int v = var_id.at(term);
        c.args[p].var = v;
        for (int q = 0; q < p; ++q) {
          if (c.args[q].var == v) {
            c.eq_prev[p] = q;
            break;
          }
        }
        if (c.eq_prev[p] < 0) {
          c.slot[p] = static_cast<int>(c.scope.size());
          c.scope.push_back(v);
        }
      }
      if (c.scope.empty()) {
        if (!rel->contains(ground)) {
          infeasible = true;
          return;
        }
        continue;
      }
      max_scope = std::max(max_scope, c.scope.size());
      const int ci = static_cast<int>(cons.size());
      for (int v : c.scope) cons_of[v].push_back(ci);
      cons.push_back(std::move(c));
    }
    support.assign(max_scope * words, 0);
    queued.assign(cons.size(), 0);
  }

  std::uint64_t* dom(int v) { return bits.data() + static_cast<std::size_t>(v) * words; }
  bool has(int v, int value) {
    return (dom(v)[value / 64] >> (value % 64)) & 1;
  }
  int popcount(const std::uint64_t* w) const {
    int s = 0;
    for (int i = 0; i < words; ++i) s += std::popcount(w[i]);
    return s;
  }
  int single(int v) {
    const std::uint64_t* w = dom(v);
    for (int i = 0; i < words; ++i) {
      if (w[i]) return i * 64 + std::countr_zero(w[i]);
    }
    return -1;
  }
  std::vector<int> values(int v) {
    std::vector<int> out;
    const std::uint64_t* w = dom(v);
    for (int i = 0; i < words; ++i) {
      std::uint64_t x = w[i];
      while (x) {
        out.push_back(i * 64 + std::countr_zero(x));
        x &= x - 1;
      }
    }
    return out;
  }

  void save(int v) {
    if (stamp[v] == level) return;
    trail.push_back({v, dom_size[v], stamp[v], std::vector<std::uint64_t>(dom(v), dom(v) + words)});
    stamp[v] = level;
  }
  void undo(std::size_t mark) {
    while (trail.size() > mark) {
      Saved& s = trail.back();
      std::copy(s.words.begin(), s.words.end(), dom(s.var));
      dom_size[s.var] = s.size;
      stamp[s.var] = s.stamp;
      trail.pop_back();
    }
  }

  void changed(int v, int except) {
    for (int ci : cons_of[v]) {
      if (ci != except && !queued[ci]) {
        queued[ci] = 1;
        con_queue.push_back(ci);
      }
    }
    if (options.injective && dom_size[v] == 1) singles.push_back(v);
  }

  void clear_queues() {
    for (int ci : con_queue) queued[ci] = 0;
    con_queue.clear();
    singles.clear();
  }

  bool revise(int ci) {
    const Constraint& c = cons[ci];
    const Relation& rel = *c.rel;
    const int arity = rel.arity;
    const std::vector<std::uint32_t>* list = nullptr;
    for (int p = 0; p < arity; ++p) {
      int value = c.args[p].value;
      if (c.args[p].var >= 0) {
        value = dom_size[c.args[p].var] == 1 ? single(c.args[p].var) : -1;
      }
      if (value >= 0) {
        const auto& l = rel.by_value[p][value];
        if (list == nullptr || l.size() < list->size()) list = &l;
      }
    }
    const std::size_t scope = c.scope.size();
    std::fill(support.begin(), support.begin() + scope * words, 0);
    auto consider = [&](const int* tup) {
      for (int p = 0; p < arity; ++p) {
        const Arg& arg = c.args[p];
        if (arg.var < 0) {
          if (tup[p] != arg.value) return;
        } else if (c.eq_prev[p] >= 0) {
          if (tup[p] != tup[c.eq_prev[p]]) return;
        } else if (!has(arg.var, tup[p])) {
          return;
        }
      }
      for (int p = 0; p < arity; ++p) {
        if (c.slot[p] >= 0) {
          support[c.slot[p] * words + tup[p] / 64] |= std::uint64_t{1} << (tup[p] % 64);
        }
      }
    };
    if (list != nullptr) {
      for (auto idx : *list) consider(rel.tuple(idx));
    } else {
      for (std::size_t i = 0; i < rel.size(); ++i) consider(rel.tuple(i));
    }
    for (std::size_t k = 0; k < scope; ++k) {
      const int v = c.scope[k];
      std::uint64_t* d = dom(v);
      const std::uint64_t* s = support.data() + k * words;
      bool differs = false;
      for (int i = 0; i < words; ++i) {
        if ((d[i] & s[i]) != d[i]) {
          differs = true;
          break;
        }
      }
      if (!differs) continue;
      save(v);
      for (int i = 0; i < words; ++i) d[i] &= s[i];
      dom_size[v] = popcount(d);
      if (dom_size[v] == 0) return false;
      changed(v, ci);
    }
    return true;
  }

  bool propagate() {
    while (!con_queue.empty() || !singles.empty()) {
      if (!singles.empty()) {
        const int v = singles.back();
        singles.pop_back();
        const int value = single(v);
        for (int u = 0; u < num_vars; ++u) {
          if (u == v || !has(u, value)) continue;
          if (dom_size[u] == 1) {
            clear_queues();
            return false;
          }
          save(u);
          dom(u)[value / 64] &= ~(std::uint64_t{1} << (value % 64));
          --dom_size[u];
          changed(u, -1);
        }
        continue;
      }
      const int ci = con_queue.front();
      con_queue.pop_front();
      queued[ci] = 0;
      if (!revise(ci)) {
        clear_queues();
        return false;
      }
    }
    return true;
  }

  bool init() {
    if (initialized) return !infeasible;
    initialized = true;
    if (infeasible) return false;
    for (int ci = 0; ci < static_cast<int>(cons.size()); ++ci) {
      queued[ci] = 1;
      con_queue.push_back(ci);
    }
    if (options.injective) {
      for (int v = 0; v < num_vars; ++v) {
        if (dom_size[v] == 1) singles.push_back(v);
      }
    }
    if (!propagate()) infeasible = true;
    return !infeasible;
  }

  void tick() {
    if (++nodes > options.budget) {
      throw Error(ErrorCode::Budget,
                  "homomorphism search exceeded the budget of " +
                      std::to_string(options.budget) + " nodes");
    }
  }

  bool assign(int v, int value) {
    ++level;
    save(v);
    std::fill(dom(v), dom(v) + words, 0);
    dom(v)[value / 64] |= std::uint64_t{1} << (value % 64);
    dom_size[v] = 1;
    changed(v, -1);
    return propagate();
  }

  int preferred_value(int v) {
    if (options.preferred == nullptr) return -1;
    auto it = options.preferred->find(var_terms[v]);
    if (it == options.preferred->end()) return -1;
    const int id = target.id_of(it->second);
    return id >= 0 && has(v, id) ? id : -1;
  }

  std::vector<int> ordered_values(int v) {
    std::vector<int> vals = values(v);
    const int pref = preferred_value(v);
    if (pref >= 0) {
      auto it = std::find(vals.begin(), vals.end(), pref);
      std::rotate(vals.begin(), it, it + 1);
    }
    return vals;
  }

  bool search() {
    tick();
    int best = -1;
    for (int v = 0; v < num_vars; ++v) {
      if (dom_size[v] > 1 && (best < 0 || dom_size[v] < dom_size[best])) best = v;
    }
    if (best < 0) return true;
    for (int value : ordered_values(best)) {
      const std::size_t mark = trail.size();
      if (assign(best, value) && search()) return true;
      undo(mark);
    }
    return false;
  }

  TermMap extract() {
    TermMap out;
    for (const auto& [term, id] : fixed) out.emplace(term, target.term(id));
    for (int v = 0; v < num_vars; ++v) out.emplace(var_terms[v], target.term(single(v)));
    return out;
  }

  void enumerate(const std::vector<int>& proj_vars, std::size_t k,
                 const std::vector<int>& fixed_values,
                 std::set<std::vector<int>>& out) {
    if (k == proj_vars.size()) {
      const std::size_t mark = trail.size();
      ++level;
      if (search()) {
        std::vector<int> row(proj_vars.size());
        for (std::size_t i = 0; i < proj_vars.size(); ++i) {
          row[i] = proj_vars[i] < 0 ? fixed_values[i] : single(proj_vars[i]);
        }
        out.insert(std::move(row));
      }
      undo(mark);
      return;
    }
    const int v = proj_vars[k];
    if (v < 0 || dom_size[v] == 1) {
      enumerate(proj_vars, k + 1, fixed_values, out);
      return;
    }
    for (int value : values(v)) {
      tick();
      const std::size_t mark = trail.size();
      if (assign(v, value)) enumerate(proj_vars, k + 1, fixed_values, out);
      undo(mark);
    }
  }
};

HomSearch::HomSearch(std::span<const Atom> source, const AtomIndex& target,
                     const TermMap& pinned, const SearchOptions& options)
    : impl_(new Impl(source, target, pinned, options)) {}

HomSearch::~HomSearch() { delete impl_; }

std::uint64_t HomSearch::nodes() const { return impl_->nodes; }

std::optional<TermMap> HomSearch::first() {
  if (!impl_->init()) return std::nullopt;
  const std::size_t mark = impl_->trail.size();
  ++impl_->level;
  std::optional<TermMap> out;
  if (impl_->search()) out = impl_->extract();
  impl_->undo(mark);
  return out;
}

std::vector<std::vector<Term>> HomSearch::project(const std::vector<Term>& terms) {
  if (!impl_->init()) return {};
  std::vector<int> proj_vars(terms.size(), -1);
  std::vector<int> fixed_values(terms.size(), -1);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (auto it = impl_->var_id.find(terms[i]); it != impl_->var_id.end()) {
      proj_vars[i] = it->second;
    } else if (auto f = impl_->fixed.find(terms[i]); f != impl_->fixed.end()) {
      fixed_values[i] = f->second;
    } else {
      throw Error(ErrorCode::InvalidArgument,
                  "projection term " + to_string(terms[i]) + " does not occur in the source");
    }
  }
  std::set<std::vector<int>> rows;
  impl_->enumerate(proj_vars, 0, fixed_values, rows);
  std::vector<std::vector<Term>> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<Term> r;
    r.reserve(row.size());
    for (int id : row) r.push_back(impl_->target.term(id));
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<TermMap> find_hom(std::span<const Atom> source,
                                const AtomIndex& target, const TermMap& pinned,
                                const SearchOptions& options) {
  HomSearch search(source, target, pinned, options);
  return search.first();
}

TupleSet evaluate(const Formula& f, const AtomIndex& d, std::uint64_t budget) {
  SearchOptions opts;
  opts.budget = budget;
  HomSearch search(f.atoms(), d, {}, opts);
  TupleSet out;
  if (f.arity() == 0) {
    if (search.first()) out.insert(Tuple{});
    return out;
  }
  for (const auto& row : search.project(f.free_terms())) {
    std::vector<std::string> names;
    names.reserve(row.size());
    for (const auto& t : row) names.push_back(t.name);
    out.insert(Tuple(std::move(names)));
  }
  return out;
}

TupleSet evaluate(const Formula& f, const Dataset& d, std::uint64_t budget) {
  AtomIndex index(d.atoms());
  return evaluate(f, index, budget);
}

bool holds(const Formula& f, const Dataset& d, std::uint64_t budget) {
  AtomIndex index(d.atoms());
  SearchOptions opts;
  opts.budget = budget;
  return find_hom(f.atoms(), index, {}, opts).has_value();
}

namespace {

// Pins the free variables of f to the given terms; false when a repeated free
// variable would need two different images.
bool pin_free(const Formula& f, const std::vector<Term>& images, TermMap& pins) {
  for (int i = 0; i < f.arity(); ++i) {
    auto [it, inserted] = pins.emplace(Term::variable(f.free_vars()[i]), images[i]);
    if (!inserted && it->second != images[i]) return false;
  }
  return true;
}

}  // namespace

bool is_instance(const Formula& f, const SelectiveKB& kb, const Tuple& t) {
  if (f.arity() != t.arity()) {
    throw Error(ErrorCode::ArityMismatch, "formula of arity " + std::to_string(f.arity()) +
                                              " tested on tuple " + to_string(t));
  }
  auto summary = kb.summarize(t);
  std::vector<Term> images;
  for (const auto& e : t.entries) images.push_back(Term::constant(e));
  TermMap pins;
  if (!pin_free(f, images, pins)) return false;
  SearchOptions opts;
  opts.budget = kb.options().budget;
  return find_hom(f.atoms(), summary->index, pins, opts).has_value();
}

TupleSet instances(const Formula& f, const SelectiveKB& kb, std::uint64_t tuple_cap) {
  const auto space = kb.tuple_space(f.arity(), tuple_cap);
  std::vector<char> hit(space.size(), 0);
  parallel_for(space.size(), kb.options().threads,
               [&](std::size_t i) { hit[i] = is_instance(f, kb, space[i]) ? 1 : 0; });
  TupleSet out;
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (hit[i]) out.insert(space[i]);
  }
  return out;
}

bool maps_to(const Formula& lhs, const Formula& rhs, std::uint64_t budget) {
  if (lhs.arity() != rhs.arity()) {
    throw Error(ErrorCode::ArityMismatch, "maps_to: arities " + std::to_string(lhs.arity()) +
                                              " and " + std::to_string(rhs.arity()) + " differ");
  }
  TermMap pins;
  if (!pin_free(lhs, rhs.free_terms(), pins)) return false;
  AtomIndex index(rhs.atoms());
  SearchOptions opts;
  opts.budget = budget;
  return find_hom(lhs.atoms(), index, pins, opts).has_value();
}

bool equivalent(const Formula& a, const Formula& b, std::uint64_t budget) {
  return maps_to(a, b, budget) && maps_to(b, a, budget);
}

bool isomorphic(const Formula& a, const Formula& b, std::uint64_t budget) {
  if (a.arity() != b.arity() || a.size() != b.size()) return false;
  const auto ta = terms_of(a.atoms());
  const auto tb = terms_of(b.atoms());
  if (ta.size() != tb.size() || a.constants() != b.constants()) return false;
  TermMap pins, reverse;
  if (!pin_free(a, b.free_terms(), pins) || !pin_free(b, a.free_terms(), reverse)) {
    return false;
  }
  std::set<Term> images;
  for (const auto& [from, to] : pins) images.insert(to);
  if (images.size() != pins.size()) return false;
  AtomIndex index(b.atoms());
  SearchOptions opts;
  opts.budget = budget;
  opts.injective = true;
  return find_hom(a.atoms(), index, pins, opts).has_value();
}

Formula core_of_formula(const Formula& f, std::uint64_t budget) {
  TermMap pins;
  for (const auto& x : f.free_terms()) pins.emplace(x, x);
  TermMap identity;
  for (const auto& v : terms_of(f.atoms())) {
    if (v.is_variable()) identity.emplace(v, v);
  }
  SearchOptions opts;
  opts.budget = budget;
  opts.preferred = &identity;

  auto apply = [](const std::vector<Atom>& atoms, const TermMap& h) {
    std::vector<Atom> image;
    image.reserve(atoms.size());
    for (const auto& a : atoms) {
      Atom mapped{a.predicate, {}};
      for (const auto& t : a.args) mapped.args.push_back(h.at(t));
      image.push_back(std::move(mapped));
    }
    normalize(image);
    return image;
  };

  // Retract bound variables first: an endomorphism avoiding v drops every
  // atom on v at once, which is much cheaper than removing atoms one by one.
  std::vector<Atom> current = f.atoms();
  for (const auto& v : f.bound_variables()) {
    std::vector<Atom> rest;
    bool present = false;
    for (const auto& a : current) {
      if (a.mentions(v)) {
        present = true;
      } else {
        rest.push_back(a);
      }
    }
    if (!present || rest.empty()) continue;
    AtomIndex index(rest);
    if (auto h = find_hom(current, index, pins, opts)) current = apply(current, *h);
  }

  for (const Atom& alpha : f.atoms()) {
    auto pos = std::lower_bound(current.begin(), current.end(), alpha);
    if (pos == current.end() || *pos != alpha) continue;
    std::vector<Atom> rest;
    rest.reserve(current.size() - 1);
    rest.insert(rest.end(), current.begin(), pos);
    rest.insert(rest.end(), pos + 1, current.end());
    if (rest.empty()) continue;
    AtomIndex index(rest);
    auto h = find_hom(current, index, pins, opts);
    if (!h) continue;
    current = apply(current, *h);
  }
  return canonical_rename(Formula(f.free_vars(), std::move(current)));
}

Formula canonical_rename(const Formula& f) {
  std::set<std::string> constants;
  for (const auto& c : f.constants()) constants.insert(c);
  std::string xp = "x", yp = "y";
  auto clashes = [&](const std::string& prefix) {
    for (const auto& c : constants) {
      if (c.size() > prefix.size() && c.compare(0, prefix.size(), prefix) == 0 &&
          std::all_of(c.begin() + prefix.size(), c.end(),
                      [](char ch) { return ch >= '0' && ch <= '9'; })) {
        return true;
      }
    }
    return false;
  };
  while (clashes(xp)) xp += "_";
  while (clashes(yp)) yp += "_";

  std::map<std::string, std::string> names;
  std::deque<std::string> queue;
  for (int i = 0; i < f.arity(); ++i) {
    if (names.emplace(f.free_vars()[i], xp + std::to_string(i + 1)).second) {
      queue.push_back(f.free_vars()[i]);
    }
  }
  int next = 1;
  auto bfs = [&] {
    while (!queue.empty()) {
      const Term v = Term::variable(queue.front());
      queue.pop_front();
      for (const auto& a : f.atoms()) {
        if (!a.mentions(v)) continue;
        for (const auto& t : a.args) {
          if (t.is_variable() && names.emplace(t.name, yp + std::to_string(next)).second) {
            ++next;
            queue.push_back(t.name);
          }
        }
      }
    }
  };
  bfs();
  for (const auto& a : f.atoms()) {
    for (const auto& t : a.args) {
      if (t.is_variable() && names.emplace(t.name, yp + std::to_string(next)).second) {
        ++next;
        queue.push_back(t.name);
        bfs();
      }
    }
  }
  std::vector<std::string> free;
  for (const auto& x : f.free_vars()) free.push_back(names.at(x));
  std::vector<Atom> atoms;
  atoms.reserve(f.size());
  for (const auto& a : f.atoms()) {
    Atom r{a.predicate, {}};
    for (const auto& t : a.args) {
      r.args.push_back(t.is_variable() ? Term::variable(names.at(t.name)) : t);
    }
    atoms.push_back(std::move(r));
  }
  return Formula(std::move(free), std::move(atoms));
}

FormulaClass::FormulaClass(const Formula& f, std::uint64_t budget)
    : rep_(core_of_formula(f, budget)) {}

bool FormulaClass::operator==(const FormulaClass& other) const {
  return isomorphic(rep_, other.rep_);
}

}  // namespace nexus
