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

#include "nexus/atom_index.hpp"

#include <algorithm>

namespace nexus {

bool AtomIndex::Relation::contains(std::span<const int> args) const {
  if (static_cast<int>(args.size()) != arity || size() == 0) return false;
  if (arity == 0) return true;
  const auto& candidates = by_value[0][args[0]];
  for (auto idx : candidates) {
    if (std::equal(args.begin(), args.end(), tuple(idx))) return true;
  }
  return false;
}

AtomIndex::AtomIndex(std::span<const Atom> atoms) {
  std::vector<Term> all;
  for (const auto& a : atoms) all.insert(all.end(), a.args.begin(), a.args.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  terms_ = std::move(all);
  for (int i = 0; i < static_cast<int>(terms_.size()); ++i) ids_.emplace(terms_[i], i);

  std::vector<const Atom*> sorted;
  sorted.reserve(atoms.size());
  for (const auto& a : atoms) sorted.push_back(&a);
  std::sort(sorted.begin(), sorted.end(),
            [](const Atom* l, const Atom* r) { return *l < *r; });
  sorted.erase(std::unique(sorted.begin(), sorted.end(),
                           [](const Atom* l, const Atom* r) { return *l == *r; }),
               sorted.end());
  num_atoms_ = sorted.size();

  for (const Atom* a : sorted) {
    auto& rel = relations_[{a->predicate, a->arity()}];
    rel.arity = a->arity();
    for (const auto& t : a->args) rel.flat.push_back(ids_.at(t));
  }
  const auto n = terms_.size();
  for (auto& [key, rel] : relations_) {
    rel.by_value.assign(rel.arity, std::vector<std::vector<std::uint32_t>>(n));
    for (std::size_t i = 0; i < rel.size(); ++i) {
      const int* tup = rel.tuple(i);
      for (int p = 0; p < rel.arity; ++p) {
        rel.by_value[p][tup[p]].push_back(static_cast<std::uint32_t>(i));
      }
    }
  }
}

int AtomIndex::id_of(const Term& t) const {
  auto it = ids_.find(t);
  return it == ids_.end() ? -1 : it->second;
}

const AtomIndex::Relation* AtomIndex::find(const std::string& predicate,
                                           int arity) const {
  auto it = relations_.find({predicate, arity});
  return it == relations_.end() ? nullptr : &it->second;
}

}  // namespace nexus
