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

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "nexus/atom_index.hpp"
#include "nexus/term.hpp"

namespace nexus {

// A finite, nonempty, ground set of atoms closed under top.
class Dataset {
 public:
  // Closes the ground atoms under top. EmptyInput on no atoms, NonGround on a
  // variable, ArityConflict when a predicate appears at two arities.
  static Dataset close_under_top(std::vector<Atom> atoms);

  // Like close_under_top but rejects input that is not already closed.
  // Used to validate externally produced summaries.
  static bool is_closed_under_top(const std::vector<Atom>& atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<std::string>& domain() const { return domain_; }
  std::size_t size() const { return atoms_.size(); }
  int max_arity() const { return max_arity_; }

  bool contains(const Atom& a) const;
  bool has_constant(const std::string& c) const;
  // True when every atom of this dataset belongs to other.
  bool subset_of(const Dataset& other) const;

  bool operator==(const Dataset& other) const { return atoms_ == other.atoms_; }

 private:
  Dataset() = default;
  std::vector<Atom> atoms_;
  std::vector<std::string> domain_;
  int max_arity_ = 0;
};

// Throws ArityConflict when a predicate is used with two arities.
void check_arities(const std::vector<Atom>& atoms);

// A proper, finite, nonempty set of same-arity constant tuples.
class Unit {
 public:
  const std::vector<Tuple>& tuples() const { return tuples_; }
  int arity() const { return arity_; }
  std::size_t size() const { return tuples_.size(); }
  bool contains(const Tuple& t) const;
  TupleSet as_set() const { return TupleSet(tuples_.begin(), tuples_.end()); }

  bool operator==(const Unit& other) const { return tuples_ == other.tuples_; }

 private:
  friend Unit validate_unit(const TupleSet& tuples, const Dataset& d);
  std::vector<Tuple> tuples_;
  int arity_ = 0;
};

// Errors: Empty, MixedArity, NotProper (names the duplicate 1-based column
// pair), UnknownConstant.
Unit validate_unit(const TupleSet& tuples, const Dataset& d);

// Returns the 0-based pair of identical columns, if any.
std::optional<std::pair<int, int>> duplicate_columns(const TupleSet& tuples);

using SummaryFunction =
    std::function<std::vector<Atom>(const Dataset&, const Tuple&)>;

struct SelectorSpec {
  enum class Strategy { Full, Neighborhood, Sigma0, Custom };

  Strategy strategy = Strategy::Full;
  int radius = 1;          // Neighborhood only
  std::string custom_name; // Custom only; printed in diagnostics
  SummaryFunction custom;  // Custom only

  static SelectorSpec full() { return {}; }
  static SelectorSpec neighborhood(int radius);
  static SelectorSpec sigma0() { return {Strategy::Sigma0, 1, {}, {}}; }
  static SelectorSpec custom_fn(std::string name, SummaryFunction fn);
  // Explicit per-tuple summaries; tuples not listed fall back to the whole
  // dataset.
  static SelectorSpec table(std::map<Tuple, std::vector<Atom>> summaries);

  // full | neighborhood:<r> | sigma0
  static SelectorSpec parse(const std::string& text);
  std::string describe() const;
};

// Engine-wide knobs carried by a knowledge base.
struct EngineOptions {
  std::uint64_t budget = 10'000'000;  // hom-search node cap
  unsigned threads = 1;
};

struct Summary {
  Dataset data;
  AtomIndex index;
};

// A dataset paired with a summary selector. Immutable apart from the summary
// cache, which tolerates concurrent fills.
class SelectiveKB {
 public:
  SelectiveKB(Dataset dataset, SelectorSpec selector, EngineOptions options = {});

  const Dataset& dataset() const { return dataset_; }
  const SelectorSpec& selector() const { return selector_; }
  const EngineOptions& options() const { return options_; }
  void set_options(const EngineOptions& o) { options_ = o; }

  // TupleOutsideDomain when a constant of t is unknown; SelectorViolation when
  // the selector output is not a valid summary of t.
  std::shared_ptr<const Summary> summarize(const Tuple& t) const;

  // All tuples of the given arity over the dataset domain, sorted.
  std::vector<Tuple> tuple_space(int arity, std::uint64_t cap) const;
  std::uint64_t tuple_space_size(int arity) const;

 private:
  Dataset dataset_;
  SelectorSpec selector_;
  EngineOptions options_;
  struct Cache {
    std::shared_mutex mu;
    std::map<Tuple, std::shared_ptr<const Summary>> entries;
  };
  std::unique_ptr<Cache> cache_;
};

// The built-in selectors, exposed for direct testing.
std::vector<Atom> sigma0_summary(const Dataset& d, const Tuple& t);
std::vector<Atom> neighborhood_summary(const Dataset& d, const Tuple& t, int radius);

}  // namespace nexus
