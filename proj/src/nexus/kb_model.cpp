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

#include "nexus/kb_model.hpp"

#include <algorithm>
#include <mutex>
#include <set>

#include "nexus/error.hpp"

namespace nexus {

void check_arities(const std::vector<Atom>& atoms) {
  std::map<std::string, int> arity;
  for (const auto& a : atoms) {
    auto [it, inserted] = arity.emplace(a.predicate, a.arity());
    if (!inserted && it->second != a.arity()) {
      throw Error(ErrorCode::ArityConflict,
                  "predicate '" + a.predicate + "' used with arities " +
                      std::to_string(it->second) + " and " +
                      std::to_string(a.arity()));
    }
  }
  auto top = arity.find(std::string(kTopPredicate));
  if (top != arity.end() && top->second != 1) {
    throw Error(ErrorCode::ArityConflict, "predicate 'top' must be unary");
  }
}

Dataset Dataset::close_under_top(std::vector<Atom> atoms) {
  if (atoms.empty()) throw Error(ErrorCode::EmptyInput, "dataset has no atoms");
  for (const auto& a : atoms) {
    if (a.args.empty()) {
      throw Error(ErrorCode::ArityConflict, "atom '" + a.predicate + "' has no arguments");
    }
    if (!a.is_ground()) {
      throw Error(ErrorCode::NonGround, "dataset atom " + to_string(a) + " is not ground");
    }
  }
  check_arities(atoms);
  std::set<std::string> domain;
  for (const auto& a : atoms)
    for (const auto& t : a.args) domain.insert(t.name);
  for (const auto& c : domain)
    atoms.push_back(Atom{std::string(kTopPredicate), {Term::constant(c)}});
  normalize(atoms);

  Dataset d;
  d.atoms_ = std::move(atoms);
  d.domain_.assign(domain.begin(), domain.end());
  for (const auto& a : d.atoms_) d.max_arity_ = std::max(d.max_arity_, a.arity());
  return d;
}

bool Dataset::is_closed_under_top(const std::vector<Atom>& atoms) {
  std::set<std::string> domain, tops;
  for (const auto& a : atoms) {
    for (const auto& t : a.args) domain.insert(t.name);
    if (a.predicate == kTopPredicate && a.arity() == 1) tops.insert(a.args[0].name);
  }
  return domain == tops;
}

bool Dataset::contains(const Atom& a) const {
  return std::binary_search(atoms_.begin(), atoms_.end(), a);
}

bool Dataset::has_constant(const std::string& c) const {
  return std::binary_search(domain_.begin(), domain_.end(), c);
}

bool Dataset::subset_of(const Dataset& other) const {
  return std::includes(other.atoms_.begin(), other.atoms_.end(), atoms_.begin(),
                       atoms_.end());
}

bool Unit::contains(const Tuple& t) const {
  return std::binary_search(tuples_.begin(), tuples_.end(), t);
}

std::optional<std::pair<int, int>> duplicate_columns(const TupleSet& tuples) {
  if (tuples.empty()) return std::nullopt;
  const int n = tuples.begin()->arity();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      bool same = std::all_of(tuples.begin(), tuples.end(),
                              [&](const Tuple& t) { return t[i] == t[j]; });
      if (same) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

Unit validate_unit(const TupleSet& tuples, const Dataset& d) {
  if (tuples.empty()) throw Error(ErrorCode::EmptyUnit, "unit has no tuples");
  const int n = tuples.begin()->arity();
  if (n < 1) throw Error(ErrorCode::MixedArity, "unit tuples must have arity >= 1");
  for (const auto& t : tuples) {
    if (t.arity() != n) {
      throw Error(ErrorCode::MixedArity, "tuple " + to_string(t) + " has arity " +
                                             std::to_string(t.arity()) + ", expected " +
                                             std::to_string(n));
    }
  }
  if (auto dup = duplicate_columns(tuples)) {
    throw Error(ErrorCode::NotProper,
                "unit is not proper: columns " + std::to_string(dup->first + 1) +
                    " and " + std::to_string(dup->second + 1) + " coincide");
  }
  for (const auto& t : tuples) {
    for (const auto& c : t.entries) {
      if (!d.has_constant(c)) {
        throw Error(ErrorCode::UnknownConstant,
                    "constant '" + c + "' of " + to_string(t) + " is not in the dataset");
      }
    }
  }
  Unit u;
  u.tuples_.assign(tuples.begin(), tuples.end());
  u.arity_ = n;
  return u;
}

// ---------------------------------------------------------------------------
// Selectors

namespace {

void add_tops(std::vector<Atom>& atoms, const Tuple& t) {
  std::set<std::string> domain(t.entries.begin(), t.entries.end());
  for (const auto& a : atoms)
    for (const auto& x : a.args) domain.insert(x.name);
  for (const auto& c : domain) atoms.push_back(Atom{std::string(kTopPredicate), {Term::constant(c)}});
  normalize(atoms);
}

}  // namespace

// sigma0 for one entity e: isa(e,_) atoms, other binary atoms leaving e,
// non-isa binary atoms leaving their targets, and top of everything seen.
std::vector<Atom> sigma0_summary(const Dataset& d, const Tuple& t) {
  std::vector<Atom> out;
  std::set<std::string> entities(t.entries.begin(), t.entries.end());
  for (const auto& e : entities) {
    std::set<std::string> reached;
    for (const auto& a : d.atoms()) {
      if (a.arity() != 2 || a.args[0].name != e) continue;
      out.push_back(a);
      if (a.predicate != "isa") reached.insert(a.args[1].name);
    }
    for (const auto& a : d.atoms()) {
      if (a.arity() != 2 || a.predicate == "isa") continue;
      if (reached.count(a.args[0].name)) out.push_back(a);
    }
  }
  add_tops(out, t);
  return out;
}

std::vector<Atom> neighborhood_summary(const Dataset& d, const Tuple& t, int radius) {
  std::set<std::string> frontier(t.entries.begin(), t.entries.end());
  std::set<std::string> seen = frontier;
  std::vector<bool> taken(d.size(), false);
  std::vector<Atom> out;
  for (int hop = 0; hop < radius && !frontier.empty(); ++hop) {
    std::set<std::string> next;
    for (std::size_t i = 0; i < d.size(); ++i) {
      const auto& a = d.atoms()[i];
      if (taken[i] || a.predicate == kTopPredicate) continue;
      bool touches = std::any_of(a.args.begin(), a.args.end(), [&](const Term& x) {
        return frontier.count(x.name) > 0;
      });
      if (!touches) continue;
      taken[i] = true;
      out.push_back(a);
      for (const auto& x : a.args)
        if (seen.insert(x.name).second) next.insert(x.name);
    }
    frontier = std::move(next);
  }
  add_tops(out, t);
  return out;
}

SelectorSpec SelectorSpec::neighborhood(int radius) {
  if (radius < 1) {
    throw Error(ErrorCode::InvalidArgument, "neighborhood radius must be positive");
  }
  SelectorSpec s;
  s.strategy = Strategy::Neighborhood;
  s.radius = radius;
  return s;
}

SelectorSpec SelectorSpec::custom_fn(std::string name, SummaryFunction fn) {
  SelectorSpec s;
  s.strategy = Strategy::Custom;
  s.custom_name = std::move(name);
  s.custom = std::move(fn);
  return s;
}

SelectorSpec SelectorSpec::table(std::map<Tuple, std::vector<Atom>> summaries) {
  auto shared = std::make_shared<std::map<Tuple, std::vector<Atom>>>(std::move(summaries));
  return custom_fn("table", [shared](const Dataset& d, const Tuple& t) {
    auto it = shared->find(t);
    return it == shared->end() ? d.atoms() : it->second;
  });
}

SelectorSpec SelectorSpec::parse(const std::string& text) {
  if (text == "full") return full();
  if (text == "sigma0") return sigma0();
  const std::string prefix = "neighborhood:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string num = text.substr(prefix.size());
    int r = 0;
    try {
      std::size_t used = 0;
      r = std::stoi(num, &used);
      if (used != num.size()) throw std::invalid_argument(num);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "bad neighborhood radius '" + num + "'");
    }
    return neighborhood(r);
  }
  throw Error(ErrorCode::InvalidArgument,
              "unknown selector '" + text + "' (expected full, neighborhood:<r> or sigma0)");
}

std::string SelectorSpec::describe() const {
  switch (strategy) {
    case Strategy::Full: return "full";
    case Strategy::Neighborhood: return "neighborhood:" + std::to_string(radius);
    case Strategy::Sigma0: return "sigma0";
    case Strategy::Custom: return "custom:" + custom_name;
  }
  return "unknown";
}

// ---------------------------------------------------------------------------

SelectiveKB::SelectiveKB(Dataset dataset, SelectorSpec selector, EngineOptions options)
    : dataset_(std::move(dataset)),
      selector_(std::move(selector)),
      options_(options),
      cache_(std::make_unique<Cache>()) {}

std::shared_ptr<const Summary> SelectiveKB::summarize(const Tuple& t) const {
  {
    std::shared_lock lock(cache_->mu);
    auto it = cache_->entries.find(t);
    if (it != cache_->entries.end()) return it->second;
  }
  for (const auto& c : t.entries) {
    if (!dataset_.has_constant(c)) {
      throw Error(ErrorCode::TupleOutsideDomain,
                  "constant '" + c + "' of " + to_string(t) + " is not in the dataset");
    }
  }
  std::vector<Atom> atoms;
  switch (selector_.strategy) {
    case SelectorSpec::Strategy::Full: atoms = dataset_.atoms(); break;
    case SelectorSpec::Strategy::Neighborhood:
      atoms = neighborhood_summary(dataset_, t, selector_.radius);
      break;
    case SelectorSpec::Strategy::Sigma0: atoms = sigma0_summary(dataset_, t); break;
    case SelectorSpec::Strategy::Custom: atoms = selector_.custom(dataset_, t); break;
  }
  normalize(atoms);
  const std::string who = "selector " + selector_.describe() + " on " + to_string(t);
  if (atoms.empty()) throw Error(ErrorCode::SelectorViolation, who + " returned no atoms");
  for (const auto& a : atoms) {
    if (!dataset_.contains(a)) {
      throw Error(ErrorCode::SelectorViolation, who + " returned " + to_string(a) +
                                                    ", which is not in the dataset");
    }
  }
  if (!Dataset::is_closed_under_top(atoms)) {
    throw Error(ErrorCode::SelectorViolation, who + " returned a summary not closed under top");
  }
  auto summary_data = Dataset::close_under_top(atoms);
  for (const auto& c : t.entries) {
    if (!summary_data.has_constant(c)) {
      throw Error(ErrorCode::SelectorViolation, who + " omits constant '" + c + "'");
    }
  }
  auto entry = std::make_shared<const Summary>(
      Summary{summary_data, AtomIndex(std::span<const Atom>(summary_data.atoms()))});
  std::unique_lock lock(cache_->mu);
  cache_->entries[t] = entry;
  return entry;
}

std::uint64_t SelectiveKB::tuple_space_size(int arity) const {
  std::uint64_t total = 1;
  const std::uint64_t base = dataset_.domain().size();
  for (int i = 0; i < arity; ++i) {
    if (total > UINT64_MAX / std::max<std::uint64_t>(base, 1)) return UINT64_MAX;
    total *= base;
  }
  return total;
}

std::vector<Tuple> SelectiveKB::tuple_space(int arity, std::uint64_t cap) const {
  const auto size = tuple_space_size(arity);
  if (size > cap) {
    throw Error(ErrorCode::TupleSpaceTooLarge,
                "tuple space has " + std::to_string(size) + " tuples, cap is " +
                    std::to_string(cap));
  }
  const auto& dom = dataset_.domain();
  std::vector<Tuple> out;
  out.reserve(size);
  std::vector<std::size_t> idx(arity, 0);
  while (true) {
    Tuple t;
    for (auto i : idx) t.entries.push_back(dom[i]);
    out.push_back(std::move(t));
    int pos = arity - 1;
    while (pos >= 0 && ++idx[pos] == dom.size()) idx[pos--] = 0;
    if (pos < 0) break;
  }
  return out;
}

}  // namespace nexus
