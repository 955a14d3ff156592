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

#include "nexus/characterize.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <set>

#include "nexus/error.hpp"
#include "nexus/hom_engine.hpp"

namespace nexus {

std::string product_name(const std::vector<std::string>& parts) {
  std::string out = "d";
  for (const auto& p : parts) {
    out += '|';
    out += p;
  }
  return out;
}

std::string ProductConstant::name() const { return product_name(parts); }

bool ProductConstant::is_gene() const {
  return std::adjacent_find(parts.begin(), parts.end(), std::not_equal_to<>()) == parts.end();
}

std::vector<ProductConstant> product_tuples(const std::vector<Tuple>& tuples) {
  if (tuples.empty()) throw Error(ErrorCode::EmptyInput, "product of no tuples");
  const int n = tuples.front().arity();
  for (const auto& t : tuples) {
    if (t.arity() != n) {
      throw Error(ErrorCode::MixedArity, "tuples of arity " + std::to_string(n) + " and " +
                                             std::to_string(t.arity()) + " in one product");
    }
  }
  std::vector<ProductConstant> out(n);
  for (int i = 0; i < n; ++i) {
    for (const auto& t : tuples) out[i].parts.push_back(t[i]);
  }
  return out;
}

namespace {

using Relations = std::map<std::string, std::vector<const Atom*>>;

Relations by_predicate(const std::vector<Atom>& atoms) {
  Relations out;
  for (const auto& a : atoms) out[a.predicate].push_back(&a);
  return out;
}

// Calls emit(predicate, args) for every atom of the product of the factors,
// where args[i] holds the parts of the i-th product constant.
void for_each_product_atom(
    const std::vector<const std::vector<Atom>*>& factors,
    const std::function<void(const std::string&,
                             const std::vector<std::vector<std::string>>&)>& emit) {
  std::vector<Relations> rels;
  rels.reserve(factors.size());
  for (const auto* f : factors) rels.push_back(by_predicate(*f));
  for (const auto& [pred, first] : rels.front()) {
    std::vector<const std::vector<const Atom*>*> lists;
    bool everywhere = true;
    for (const auto& r : rels) {
      auto it = r.find(pred);
      if (it == r.end()) {
        everywhere = false;
        break;
      }
      lists.push_back(&it->second);
    }
    if (!everywhere) continue;
    const int arity = first.front()->arity();
    for (const auto* l : lists) {
      if (l->front()->arity() != arity) {
        throw Error(ErrorCode::ArityConflict, "predicate '" + pred + "' has arities " +
                                                  std::to_string(arity) + " and " +
                                                  std::to_string(l->front()->arity()));
      }
    }
    std::vector<std::size_t> pick(lists.size(), 0);
    std::vector<std::vector<std::string>> args(arity, std::vector<std::string>(lists.size()));
    while (true) {
      for (std::size_t k = 0; k < lists.size(); ++k) {
        const Atom* a = (*lists[k])[pick[k]];
        for (int i = 0; i < arity; ++i) args[i][k] = a->args[i].name;
      }
      emit(pred, args);
      bool done = true;
      for (std::size_t k = lists.size(); k-- > 0;) {
        if (++pick[k] < lists[k]->size()) {
          done = false;
          break;
        }
        pick[k] = 0;
      }
      if (done) break;
    }
  }
}

bool all_equal(const std::vector<std::string>& parts) {
  return std::adjacent_find(parts.begin(), parts.end(), std::not_equal_to<>()) == parts.end();
}

// Everything build_can needs besides the summaries: the free product
// constants and the renaming of product constants into formula terms.
class CanAssembler {
 public:
  CanAssembler(const Unit& unit, const SelectiveKB& kb) {
    for (const auto& t : unit.tuples()) summaries_.push_back(kb.summarize(t));
    int i = 0;
    for (const auto& pc : product_tuples(unit.tuples())) {
      free_names_.push_back("x" + std::to_string(++i));
      free_index_.emplace(pc.parts, i - 1);
    }
  }

  const std::vector<std::string>& free_names() const { return free_names_; }

  // Calls emit once per atom of the renamed product plus clones, possibly
  // with repeats.
  void for_each_atom(const std::function<void(const Atom&)>& emit) const {
    std::vector<const std::vector<Atom>*> factors;
    for (const auto& s : summaries_) factors.push_back(&s->data.atoms());
    Atom out;
    for_each_product_atom(factors, [&](const std::string& pred,
                                     const std::vector<std::vector<std::string>>& args) {
      const int arity = static_cast<int>(args.size());
      out.predicate = pred;
      out.args.resize(arity);
      // Positions holding a free gene may also take the gene's base constant.
      std::vector<int> cloneable;
      for (int i = 0; i < arity; ++i) {
        out.args[i] = rename(args[i]);
        if (free_index_.count(args[i]) && all_equal(args[i])) cloneable.push_back(i);
      }
      emit(out);
      const std::size_t variants = std::size_t{1} << cloneable.size();
      for (std::size_t mask = 1; mask < variants; ++mask) {
        Atom clone = out;
        for (std::size_t b = 0; b < cloneable.size(); ++b) {
          if (mask >> b & 1) clone.args[cloneable[b]] = Term::constant(args[cloneable[b]][0]);
        }
        emit(clone);
      }
    });
  }

 private:
  Term rename(const std::vector<std::string>& parts) const {
    if (auto it = free_index_.find(parts); it != free_index_.end()) {
      return Term::variable(free_names_[it->second]);
    }
    if (all_equal(parts)) return Term::constant(parts[0]);
    return Term::variable(product_name(parts));
  }

  std::vector<std::shared_ptr<const Summary>> summaries_;
  std::vector<std::string> free_names_;
  std::map<std::vector<std::string>, int> free_index_;
};

void require_free_tops(const std::vector<Atom>& atoms, const std::vector<std::string>& free) {
  for (const auto& x : free) {
    const Atom top{std::string(kTopPredicate), {Term::variable(x)}};
    if (!std::binary_search(atoms.begin(), atoms.end(), top)) {
      throw Error(ErrorCode::InvariantViolation,
                  "canonical characterization lacks " + to_string(top));
    }
  }
}

}  // namespace

Dataset product_datasets(const std::vector<Dataset>& datasets) {
  if (datasets.empty()) throw Error(ErrorCode::EmptyInput, "product of no datasets");
  std::vector<const std::vector<Atom>*> factors;
  for (const auto& d : datasets) factors.push_back(&d.atoms());
  std::vector<Atom> atoms;
  for_each_product_atom(factors, [&](const std::string& pred,
                                   const std::vector<std::vector<std::string>>& args) {
    Atom a{pred, {}};
    for (const auto& parts : args) a.args.push_back(Term::constant(product_name(parts)));
    atoms.push_back(std::move(a));
  });
  return Dataset::close_under_top(std::move(atoms));
}

Formula build_can(const Unit& unit, const SelectiveKB& kb, bool stream) {
  CanAssembler assembler(unit, kb);
  std::vector<Atom> kept;
  if (!stream) {
    std::vector<Atom> all;
    assembler.for_each_atom([&](const Atom& a) { all.push_back(a); });
    normalize(all);
    require_free_tops(all, assembler.free_names());
    kept = nearly_connected_part(Formula(assembler.free_names(), std::move(all))).atoms();
  } else {
    // Reachability from the free variables, one sweep over the product per
    // round, until a sweep adds nothing.
    std::set<Term> reached;
    for (const auto& x : assembler.free_names()) reached.insert(Term::variable(x));
    std::set<Atom> found;
    bool grew = true;
    while (grew) {
      grew = false;
      assembler.for_each_atom([&](const Atom& a) {
        if (found.count(a)) return;
        if (std::none_of(a.args.begin(), a.args.end(),
                         [&](const Term& t) { return reached.count(t) > 0; })) {
          return;
        }
        found.insert(a);
        reached.insert(a.args.begin(), a.args.end());
        grew = true;
      });
    }
    kept.assign(found.begin(), found.end());
    require_free_tops(kept, assembler.free_names());
  }
  return canonical_rename(Formula(assembler.free_names(), std::move(kept)));
}

Formula build_core_char(const Unit& unit, const SelectiveKB& kb, bool stream) {
  return core_of_formula(build_can(unit, kb, stream), kb.options().budget);
}

std::uint64_t can_size_bound(const Unit& unit, const SelectiveKB& kb) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  const int w = kb.dataset().max_arity();
  std::uint64_t bound = w >= 64 ? kMax : std::uint64_t{1} << w;
  for (const auto& t : unit.tuples()) {
    const std::uint64_t s = kb.summarize(t)->data.size();
    bound = s != 0 && bound > kMax / s ? kMax : bound * s;
  }
  return bound;
}

}  // namespace nexus
