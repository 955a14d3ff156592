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

#include <string>
#include <string_view>
#include <vector>

#include "nexus/kb_model.hpp"
#include "nexus/nxl.hpp"

namespace nexus {

// A constant of a direct product, one part per factor. Rendered as
// "d|p1|...|pm"; user constants cannot contain '|', so names never clash.
struct ProductConstant {
  std::vector<std::string> parts;

  std::string name() const;
  // All parts equal.
  bool is_gene() const;

  auto operator<=>(const ProductConstant&) const = default;
};

std::string product_name(const std::vector<std::string>& parts);

// Position i of the result combines the i-th entries of all tuples.
// MixedArity when the tuples differ in arity, EmptyInput when none are given.
std::vector<ProductConstant> product_tuples(const std::vector<Tuple>& tuples);

// Atoms p(c1 x ... x ck) for every choice of p-atoms, one from each dataset.
// ArityConflict when a predicate has different arities across inputs.
Dataset product_datasets(const std::vector<Dataset>& datasets);

// Canonical characterization of a unit, canonically renamed. With stream set,
// the product of the summaries is enumerated on the fly during a reachability
// fixpoint instead of being materialized; the output is identical.
Formula build_can(const Unit& unit, const SelectiveKB& kb, bool stream = false);

// Core of the canonical characterization.
Formula build_core_char(const Unit& unit, const SelectiveKB& kb, bool stream = false);

// 2^w times the product of the summary sizes, w the maximum arity of the
// dataset. Saturates at UINT64_MAX.
std::uint64_t can_size_bound(const Unit& unit, const SelectiveKB& kb);

}  // namespace nexus
