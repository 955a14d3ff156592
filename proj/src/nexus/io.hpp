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

#include <json.hpp>

#include "nexus/expansion.hpp"
#include "nexus/kb_model.hpp"
#include "nexus/nxl.hpp"

namespace nexus {

// Facts: one pred(c1,...,ck) per line, '#' comments, blank lines ignored.
std::vector<Atom> parse_facts(std::string_view text);
Dataset load_facts(std::string_view text);
std::string format_facts(const Dataset& d);

// Tuples: one (c1,...,cn) per line.
Tuple parse_tuple(std::string_view text);
TupleSet parse_tuples(std::string_view text);
std::string format_tuples(const TupleSet& tuples);

// "x1,x2 <- p(x1,c), q(?y,x2)": head variables bare, other variables marked
// with '?', every other argument a constant.
Formula parse_formula(std::string_view text);
std::string format_formula(const Formula& f);

nlohmann::json formula_to_json(const Formula& f);
Formula formula_from_json(const nlohmann::json& j);

std::string format_graph_dot(const ExpansionGraph& g);
nlohmann::json graph_to_json(const ExpansionGraph& g);

// Io on failure.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace nexus
