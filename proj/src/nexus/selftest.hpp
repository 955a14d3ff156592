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

#include <cstdint>
#include <string>
#include <vector>

namespace nexus {

struct SelftestReport {
  int samples = 0;
  int checks = 0;
  std::vector<std::string> failures;  // one line per failed check
};

// Seeded agreement suite: on count random knowledge bases starting at seed,
// engine instances, definability and essential expansions are compared with
// the exhaustive oracles, and the interpretation, containment, conjunction,
// equivalence and definable-expansion properties are asserted.
SelftestReport run_selftest(std::uint64_t seed, int count);

// Seeded structural suite: expansion graphs of count random knowledge bases
// are rebuilt and checked for acyclicity, partition, a unique source equal
// to the core of the unit, and direct source instances equal to ess.
SelftestReport run_graph_selftest(std::uint64_t seed, int count);

}  // namespace nexus
