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

#include "nexus/nxl.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "nexus/error.hpp"

namespace nexus {

namespace {

// Union-find over dense ids.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

// Component label per atom; atoms sharing a term share a label. Extra atoms
// (e.g. the dummy free atom) can be supplied as term lists.
std::vector<std::size_t> atom_components(const std::vector<Atom>& atoms,
                                         const std::vector<Term>& extra_atom) {
  std::map<Term, std::size_t> first_atom;
  const std::size_t n = atoms.size() + (extra_atom.empty() ? 0 : 1);
  DisjointSets sets(n);
  auto visit = [&](std::size_t idx, const Term& t) {
    auto [it, inserted] = first_atom.emplace(t, idx);
    if (!inserted) sets.unite(idx, it->second);
  };
  for (std::size_t i = 0; i < atoms.size(); ++i)
    for (const auto& t : atoms[i].args) visit(i, t);
  for (const auto& t : extra_atom) visit(atoms.size(), t);
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = sets.find(i);
  return out;
}

}  // namespace

Formula::Formula(std::vector<std::string> free_vars, std::vector<Atom> atoms)
    : free_vars_(std::move(free_vars)), atoms_(std::move(atoms)) {
  normalize(atoms_);
  if (atoms_.empty()) throw Error(ErrorCode::InvalidArgument, "a formula needs at least one atom");
  for (const auto& x : free_vars_) {
    const Term v = Term::variable(x);
    bool occurs = std::any_of(atoms_.begin(), atoms_.end(),
                              [&](const Atom& a) { return a.mentions(v); });
    if (!occurs) {
      throw Error(ErrorCode::InvalidArgument,
                  "free variable '" + x + "' occurs in no atom");
    }
  }
}

std::vector<Term> Formula::free_terms() const {
  std::vector<Term> out;
  for (const auto& x : free_vars_) out.push_back(Term::variable(x));
  return out;
}

std::vector<Term> Formula::bound_variables() const {
  std::set<std::string> free(free_vars_.begin(), free_vars_.end());
  std::vector<Term> out;
  for (const auto& t : terms_of(atoms_))
    if (t.is_variable() && !free.count(t.name)) out.push_back(t);
  return out;
}

std::vector<std::string> Formula::constants() const {
  std::vector<std::string> out;
  for (const auto& t : terms_of(atoms_))
    if (t.is_constant()) out.push_back(t.name);
  return out;
}

std::string_view to_string(Connectivity c) {
  switch (c) {
    case Connectivity::Connected: return "connected";
    case Connectivity::NearlyConnectedOnly: return "nearly_connected_only";
    case Connectivity::Disconnected: return "disconnected";
  }
  return "unknown";
}

bool is_connected(const std::vector<Atom>& atoms) {
  if (atoms.size() <= 1) return !atoms.empty();
  auto comp = atom_components(atoms, {});
  return std::all_of(comp.begin(), comp.end(),
                     [&](std::size_t c) { return c == comp[0]; });
}

Connectivity classify_connectivity(const Formula& f) {
  if (is_connected(f.atoms())) return Connectivity::Connected;
  if (!f.is_open()) return Connectivity::Disconnected;
  auto comp = atom_components(f.atoms(), f.free_terms());
  return std::all_of(comp.begin(), comp.end(),
                     [&](std::size_t c) { return c == comp[0]; })
             ? Connectivity::NearlyConnectedOnly
             : Connectivity::Disconnected;
}

bool in_nxl(const Formula& f) {
  return f.is_open() && classify_connectivity(f) != Connectivity::Disconnected;
}

Formula nearly_connected_part(const Formula& f) {
  if (!f.is_open()) {
    throw Error(ErrorCode::InvalidArgument, "nearly connected part needs an open formula");
  }
  const auto& atoms = f.atoms();
  auto comp = atom_components(atoms, f.free_terms());
  const std::size_t root = comp.back();
  std::vector<Atom> kept;
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if (comp[i] == root) kept.push_back(atoms[i]);
  return Formula(f.free_vars(), std::move(kept));
}

Formula conjoin(const Formula& lhs, const Formula& rhs) {
  if (lhs.arity() != rhs.arity()) {
    throw Error(ErrorCode::ArityMismatch,
                "cannot conjoin formulas of arity " + std::to_string(lhs.arity()) +
                    " and " + std::to_string(rhs.arity()));
  }
  if (!lhs.is_open()) throw Error(ErrorCode::InvalidArgument, "conjunction needs open formulas");
  std::vector<std::string> head;
  for (int j = 0; j < lhs.arity(); ++j) head.push_back("z" + std::to_string(j + 1));

  std::vector<Atom> atoms;
  auto add_side = [&](const Formula& f, const std::string& tag) {
    std::map<std::string, std::string> rename;
    for (int j = 0; j < f.arity(); ++j) rename.emplace(f.free_vars()[j], head[j]);
    for (const auto& a : f.atoms()) {
      Atom b{a.predicate, {}};
      for (const auto& t : a.args) {
        if (t.is_constant()) {
          b.args.push_back(t);
        } else if (auto it = rename.find(t.name); it != rename.end()) {
          b.args.push_back(Term::variable(it->second));
        } else {
          b.args.push_back(Term::variable(t.name + tag));
        }
      }
      atoms.push_back(std::move(b));
    }
  };
  add_side(lhs, "@1");
  add_side(rhs, "@2");
  return Formula(std::move(head), std::move(atoms));
}

Formula top_formula(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "top formula needs arity >= 1");
  std::vector<std::string> head;
  std::vector<Atom> atoms;
  for (int i = 1; i <= n; ++i) {
    head.push_back("x" + std::to_string(i));
    atoms.push_back(Atom{std::string(kTopPredicate), {Term::variable(head.back())}});
  }
  return Formula(std::move(head), std::move(atoms));
}

Formula rename_variables(const Formula& f,
                         const std::vector<std::pair<std::string, std::string>>& renaming) {
  std::map<std::string, std::string> m(renaming.begin(), renaming.end());
  auto apply = [&](const std::string& name) {
    auto it = m.find(name);
    return it == m.end() ? name : it->second;
  };
  std::vector<std::string> head;
  for (const auto& x : f.free_vars()) head.push_back(apply(x));
  std::vector<Atom> atoms;
  for (const auto& a : f.atoms()) {
    Atom b{a.predicate, {}};
    for (const auto& t : a.args)
      b.args.push_back(t.is_variable() ? Term::variable(apply(t.name)) : t);
    atoms.push_back(std::move(b));
  }
  return Formula(std::move(head), std::move(atoms));
}

}  // namespace nexus
