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

#include "nexus/io.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "nexus/error.hpp"

namespace nexus {

namespace {

bool is_name_char(char c) {
  if (std::isspace(static_cast<unsigned char>(c))) return false;
  switch (c) {
    case '(': case ')': case ',': case '|': case '?': case '#':
      return false;
    default:
      return true;
  }
}

// Hand-written scanner over one logical line of input.
class Scanner {
 public:
  Scanner(std::string_view text, int line) : text_(text), line_(line) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::string name() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
    if (start == pos_) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }
  [[noreturn]] void fail(const std::string& what) const {
    std::string near = pos_ < text_.size() ? " near '" + std::string(text_.substr(pos_, 12)) + "'"
                                           : " at end of input";
    throw ParseError(line_, what + near);
  }
  int line() const { return line_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_;
};

// Splits text into lines with comments removed; yields (line number, body).
std::vector<std::pair<int, std::string_view>> content_lines(std::string_view text) {
  std::vector<std::pair<int, std::string_view>> out;
  int number = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++number;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    out.emplace_back(number, line);
  }
  return out;
}

template <typename F>
auto with_line(int line, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(line, e.what());
  }
}

std::vector<std::string> parse_paren_list(Scanner& s) {
  std::vector<std::string> out;
  s.expect('(');
  if (s.accept(')')) return out;
  do {
    out.push_back(s.name());
  } while (s.accept(','));
  s.expect(')');
  return out;
}

}  // namespace

std::vector<Atom> parse_facts(std::string_view text) {
  std::vector<Atom> atoms;
  for (const auto& [number, line] : content_lines(text)) {
    Scanner s(line, number);
    Atom a{s.name(), {}};
    with_line(number, [&] { check_predicate_name(a.predicate); });
    for (auto& c : parse_paren_list(s)) {
      with_line(number, [&] { check_term_name(c, "constant"); });
      a.args.push_back(Term::constant(std::move(c)));
    }
    if (a.args.empty()) s.fail("atom needs at least one argument");
    if (!s.at_end()) s.fail("trailing characters");
    atoms.push_back(std::move(a));
  }
  return atoms;
}

Dataset load_facts(std::string_view text) { return Dataset::close_under_top(parse_facts(text)); }

std::string format_facts(const Dataset& d) {
  std::string out;
  for (const auto& a : d.atoms()) {
    out += to_string(a);
    out += '\n';
  }
  return out;
}

Tuple parse_tuple(std::string_view text) {
  Scanner s(text, 0);
  auto entries = parse_paren_list(s);
  if (entries.empty()) s.fail("empty tuple");
  for (const auto& e : entries) check_term_name(e, "constant");
  if (!s.at_end()) s.fail("trailing characters");
  return Tuple(std::move(entries));
}

TupleSet parse_tuples(std::string_view text) {
  TupleSet out;
  for (const auto& [number, line] : content_lines(text)) {
    Scanner s(line, number);
    auto entries = parse_paren_list(s);
    if (entries.empty()) s.fail("empty tuple");
    for (const auto& e : entries) with_line(number, [&] { check_term_name(e, "constant"); });
    if (!s.at_end()) s.fail("trailing characters");
    out.insert(Tuple(std::move(entries)));
  }
  return out;
}

std::string format_tuples(const TupleSet& tuples) {
  std::string out;
  for (const auto& t : tuples) {
    out += to_string(t);
    out += '\n';
  }
  return out;
}

Formula parse_formula(std::string_view text) {
  const auto arrow = text.find("<-");
  if (arrow == std::string_view::npos) throw ParseError(0, "formula lacks '<-'");
  std::vector<std::string> head;
  {
    Scanner s(text.substr(0, arrow), 0);
    if (!s.at_end()) {
      do {
        head.push_back(s.name());
        check_term_name(head.back(), "variable");
      } while (s.accept(','));
      if (!s.at_end()) s.fail("malformed head");
    }
  }
  const std::set<std::string> free(head.begin(), head.end());
  Scanner s(text.substr(arrow + 2), 0);
  std::vector<Atom> atoms;
  do {
    Atom a{s.name(), {}};
    check_predicate_name(a.predicate);
    s.expect('(');
    do {
      const bool marked = s.accept('?');
      std::string name = s.name();
      check_term_name(name, marked ? "variable" : "term");
      if (marked && free.count(name)) s.fail("head variable '" + name + "' written with '?'");
      a.args.push_back(marked || free.count(name) ? Term::variable(std::move(name))
                                                  : Term::constant(std::move(name)));
    } while (s.accept(','));
    s.expect(')');
    atoms.push_back(std::move(a));
  } while (s.accept(','));
  if (!s.at_end()) s.fail("trailing characters");
  try {
    return Formula(std::move(head), std::move(atoms));
  } catch (const Error& e) {
    throw ParseError(0, e.what());
  }
}

std::string format_formula(const Formula& f) {
  const std::set<std::string> free(f.free_vars().begin(), f.free_vars().end());
  std::string out;
  for (std::size_t i = 0; i < f.free_vars().size(); ++i) {
    if (i) out += ',';
    out += f.free_vars()[i];
  }
  out += out.empty() ? "<- " : " <- ";
  for (std::size_t i = 0; i < f.atoms().size(); ++i) {
    const Atom& a = f.atoms()[i];
    if (i) out += ", ";
    out += a.predicate;
    out += '(';
    for (std::size_t j = 0; j < a.args.size(); ++j) {
      if (j) out += ',';
      const Term& t = a.args[j];
      if (t.is_variable() && !free.count(t.name)) out += '?';
      out += t.name;
    }
    out += ')';
  }
  return out;
}

nlohmann::json formula_to_json(const Formula& f) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& a : f.atoms()) {
    nlohmann::json args = nlohmann::json::array();
    for (const auto& t : a.args) {
      args.push_back({{"kind", t.is_variable() ? "variable" : "constant"}, {"name", t.name}});
    }
    atoms.push_back({{"pred", a.predicate}, {"args", std::move(args)}});
  }
  return {{"free_vars", f.free_vars()}, {"atoms", std::move(atoms)}};
}

Formula formula_from_json(const nlohmann::json& j) {
  try {
    std::vector<std::string> head = j.at("free_vars").get<std::vector<std::string>>();
    std::vector<Atom> atoms;
    for (const auto& ja : j.at("atoms")) {
      Atom a{ja.at("pred").get<std::string>(), {}};
      check_predicate_name(a.predicate);
      for (const auto& jt : ja.at("args")) {
        const auto kind = jt.at("kind").get<std::string>();
        auto name = jt.at("name").get<std::string>();
        check_term_name(name, kind);
        if (kind == "variable") {
          a.args.push_back(Term::variable(std::move(name)));
        } else if (kind == "constant") {
          a.args.push_back(Term::constant(std::move(name)));
        } else {
          throw ParseError(0, "unknown term kind '" + kind + "'");
        }
      }
      atoms.push_back(std::move(a));
    }
    return Formula(std::move(head), std::move(atoms));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("malformed formula record: ") + e.what());
  }
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

nlohmann::json tuples_json(const TupleSet& tuples) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& t : tuples) out.push_back(t.entries);
  return out;
}

}  // namespace

std::string format_graph_dot(const ExpansionGraph& g) {
  std::ostringstream out;
  out << "digraph expansion {\n";
  out << "  node [shape=box];\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto& n = g.nodes[i];
    out << "  n" << i << " [label=\"" << dot_escape(format_formula(n.core)) << "\\n"
        << dot_escape(to_string(n.direct)) << "\"";
    if (static_cast<int>(i) == g.source) out << ", shape=doublecircle";
    out << "];\n";
  }
  for (const auto& [a, b] : g.arcs) out << "  n" << a << " -> n" << b << ";\n";
  out << "}\n";
  return out.str();
}

nlohmann::json graph_to_json(const ExpansionGraph& g) {
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto& n = g.nodes[i];
    nodes.push_back({{"id", i},
                     {"core", format_formula(n.core)},
                     {"core_json", formula_to_json(n.core)},
                     {"instances", tuples_json(n.instances)},
                     {"direct", tuples_json(n.direct)}});
  }
  nlohmann::json arcs = nlohmann::json::array();
  for (const auto& [a, b] : g.arcs) arcs.push_back({a, b});
  return {{"arity", g.arity}, {"source", g.source}, {"nodes", std::move(nodes)},
          {"arcs", std::move(arcs)}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  out << contents;
  if (!out) throw Error(ErrorCode::Io, "failed writing '" + path + "'");
}

}  // namespace nexus
