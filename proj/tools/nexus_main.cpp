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

// Command-line front end over the C interface.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nexus/nexus.h"

namespace {

constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kError = 2;

// Carries an error record to the top level.
struct Failure {
  std::string json;
};

void check(nx_status status) {
  if (status != NX_OK) throw Failure{nx_last_error_json()};
}

[[noreturn]] void usage_error(const std::string& message) {
  throw Failure{nlohmann::json{{"code", "Usage"}, {"message", message}}.dump()};
}

std::string take(char* s) {
  std::string out(s ? s : "");
  nx_string_free(s);
  return out;
}

struct KbDeleter {
  void operator()(nx_kb* p) const { nx_kb_free(p); }
};
struct UnitDeleter {
  void operator()(nx_unit* p) const { nx_unit_free(p); }
};
struct FormulaDeleter {
  void operator()(nx_formula* p) const { nx_formula_free(p); }
};
struct GraphDeleter {
  void operator()(nx_graph* p) const { nx_graph_free(p); }
};
using KbPtr = std::unique_ptr<nx_kb, KbDeleter>;
using UnitPtr = std::unique_ptr<nx_unit, UnitDeleter>;
using FormulaPtr = std::unique_ptr<nx_formula, FormulaDeleter>;
using GraphPtr = std::unique_ptr<nx_graph, GraphDeleter>;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text) || !out.flush()) {
    throw Failure{nlohmann::json{{"code", "Io"}, {"message", "cannot write " + path}}.dump()};
  }
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{nlohmann::json{{"code", "Io"}, {"message", "cannot read " + path}}.dump()};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Options {
  std::string facts;
  std::string unit;
  std::string selector = "full";
  std::string format = "text";
  std::string t;
  std::string t2;
  std::string dot;
  std::string json;
  std::string out;
  std::string out_prefix;
  std::uint64_t cap = 0;
  std::uint64_t budget = 0;
  unsigned threads = 1;
  bool stream = false;
  std::uint64_t seed = 1;
  int count = 200;
  int m = 0;
  std::string edge_list;
  int k = 1;
};

class Runner {
 public:
  explicit Runner(const Options& o) : o_(o) {}

  // Writes to --out when given, stdout otherwise.
  void emit(const std::string& text) const {
    if (!o_.out.empty()) {
      write_text(o_.out, text);
    } else {
      std::cout << text;
    }
  }

  KbPtr kb() const {
    nx_kb* raw = nullptr;
    check(nx_kb_load(o_.facts.c_str(), o_.selector.c_str(), &raw));
    KbPtr kb(raw);
    if (o_.budget) check(nx_kb_set_budget(kb.get(), o_.budget));
    check(nx_kb_set_threads(kb.get(), o_.threads));
    return kb;
  }

  UnitPtr unit(const nx_kb* kb) const {
    if (o_.unit.empty()) usage_error("a unit file is required");
    nx_unit* raw = nullptr;
    check(nx_unit_load(kb, o_.unit.c_str(), &raw));
    return UnitPtr(raw);
  }

  const std::string& require(const std::string& value, const char* flag) const {
    if (value.empty()) usage_error(std::string(flag) + " is required");
    return value;
  }

  int answer(int yes) const {
    emit(yes ? "yes\n" : "no\n");
    return yes ? kYes : kNo;
  }

  int load_check() const {
    auto k = kb();
    auto j = nlohmann::json::parse(take(describe(k.get())));
    if (!o_.unit.empty()) {
      auto u = unit(k.get());
      std::string tuples = take(text_of(u.get()));
      j["unit_tuples"] = std::count(tuples.begin(), tuples.end(), '\n');
    }
    emit(o_.format == "json" ? j.dump(2) + "\n" : plain(j));
    return kYes;
  }

  int summarize() const {
    auto k = kb();
    char* out = nullptr;
    check(nx_kb_summarize(k.get(), require(o_.t, "--t").c_str(), &out));
    emit(take(out));
    return kYes;
  }

  int characterize(bool core) const {
    auto k = kb();
    auto u = unit(k.get());
    nx_formula* raw = nullptr;
    check(core ? nx_core(k.get(), u.get(), o_.stream, &raw) : nx_can(k.get(), u.get(), o_.stream, &raw));
    FormulaPtr f(raw);
    char* out = nullptr;
    if (o_.format == "json") {
      check(nx_formula_json(f.get(), &out));
      emit(take(out) + "\n");
    } else {
      check(nx_formula_text(f.get(), &out));
      emit(take(out) + "\n");
    }
    return kYes;
  }

  int def() const {
    auto k = kb();
    auto u = unit(k.get());
    int yes = 0;
    check(nx_def(k.get(), u.get(), &yes));
    return answer(yes);
  }

  int ess() const {
    auto k = kb();
    auto u = unit(k.get());
    if (!o_.t.empty()) {
      int yes = 0;
      check(nx_ess_member(k.get(), u.get(), o_.t.c_str(), &yes));
      return answer(yes);
    }
    char* out = nullptr;
    check(nx_ess(k.get(), u.get(), &out));
    emit(take(out));
    return kYes;
  }

  int compare(nx_verdict wanted) const {
    auto k = kb();
    auto u = unit(k.get());
    nx_verdict v = NX_VERDICT_INC;
    check(nx_compare(k.get(), u.get(), require(o_.t, "--t").c_str(), require(o_.t2, "--t2").c_str(), &v));
    return answer(v == wanted);
  }

  int eg() const {
    auto k = kb();
    auto u = unit(k.get());
    nx_graph* raw = nullptr;
    check(nx_eg(k.get(), u.get(), o_.cap, &raw));
    GraphPtr g(raw);
    char* dot = nullptr;
    check(nx_graph_dot(g.get(), &dot));
    const std::string dot_text = take(dot);
    char* js = nullptr;
    check(nx_graph_json(g.get(), &js));
    const std::string json_text = take(js) + "\n";
    if (!o_.dot.empty()) write_text(o_.dot, dot_text);
    if (!o_.json.empty()) write_text(o_.json, json_text);
    if (o_.dot.empty() && o_.json.empty()) emit(o_.format == "json" ? json_text : dot_text);
    return kYes;
  }

  int gen_prime_cycles() const {
    char* out = nullptr;
    check(nx_gen_prime_cycles(o_.m, &out));
    return generated(take(out));
  }

  int gen_threecol() const {
    char* out = nullptr;
    check(nx_gen_threecol(read_text(o_.edge_list).c_str(), o_.k, &out));
    return generated(take(out));
  }

  int selftest() const {
    char* out = nullptr;
    int failures = 0;
    check(nx_selftest(o_.seed, o_.count, &out, &failures));
    emit(take(out) + "\n");
    return failures == 0 ? kYes : kNo;
  }

 private:
  static char* describe(const nx_kb* kb) {
    char* out = nullptr;
    check(nx_kb_describe(kb, &out));
    return out;
  }

  static char* text_of(const nx_unit* u) {
    char* out = nullptr;
    check(nx_unit_text(u, &out));
    return out;
  }

  static std::string plain(const nlohmann::json& j) {
    std::ostringstream ss;
    ss << "ok";
    for (const auto& [key, value] : j.items()) {
      ss << ' ' << key << '=' << (value.is_string() ? value.get<std::string>() : value.dump());
    }
    ss << '\n';
    return ss.str();
  }

  // With --out-prefix the instance goes to <prefix>.nxf and <prefix>.nxu and
  // the selector (and query) are printed; otherwise everything is printed as
  // JSON.
  int generated(const std::string& json_text) const {
    if (o_.out_prefix.empty()) {
      emit(json_text + "\n");
      return kYes;
    }
    const auto j = nlohmann::json::parse(json_text);
    write_text(o_.out_prefix + ".nxf", j.at("facts").get<std::string>());
    write_text(o_.out_prefix + ".nxu", j.at("unit").get<std::string>());
    std::string summary = "selector " + j.at("selector").get<std::string>() + "\n";
    if (j.contains("query")) summary += "query " + j.at("query").get<std::string>() + "\n";
    emit(summary);
    return kYes;
  }

  const Options& o_;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--selector", o.selector, "full, neighborhood:<r> or sigma0");
  cmd->add_option("--budget", o.budget, "homomorphism search node cap");
  cmd->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--out", o.out, "write the result to this file");
}

CLI::App* add_kb_command(CLI::App& app, const std::string& name, const std::string& help, Options& o,
                         bool needs_unit) {
  auto* cmd = app.add_subcommand(name, help);
  cmd->add_option("facts", o.facts, "fact file")->required();
  auto* unit = cmd->add_option("unit", o.unit, "unit file");
  if (needs_unit) unit->required();
  add_common(cmd, o);
  return cmd;
}

int run(int argc, char** argv) {
  CLI::App app{"Characterize and expand sets of tuples over a knowledge base"};
  app.require_subcommand(1);
  Options o;

  auto* load_check = add_kb_command(app, "load-check", "validate a fact file and optional unit", o, false);
  load_check->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));
  auto* summarize = add_kb_command(app, "summarize", "print the summary of a tuple", o, false);
  summarize->add_option("--t", o.t, "tuple such as (a,b)")->required();
  auto* can = add_kb_command(app, "can", "canonical characterization of a unit", o, true);
  auto* core = add_kb_command(app, "core", "core characterization of a unit", o, true);
  for (auto* cmd : {can, core}) {
    cmd->add_flag("--stream", o.stream, "enumerate the product lazily");
    cmd->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));
  }
  auto* def = add_kb_command(app, "def", "is the unit definable", o, true);
  auto* ess = add_kb_command(app, "ess", "essential expansion, or membership with --t", o, true);
  ess->add_option("--t", o.t, "tuple to test");
  auto* prec = add_kb_command(app, "prec", "does t rank strictly above t2", o, true);
  auto* sim = add_kb_command(app, "sim", "do t and t2 share their nexus with the unit", o, true);
  auto* inc = add_kb_command(app, "inc", "are t and t2 incomparable", o, true);
  for (auto* cmd : {prec, sim, inc}) {
    cmd->add_option("--t", o.t, "first tuple")->required();
    cmd->add_option("--t2", o.t2, "second tuple")->required();
  }
  auto* eg = add_kb_command(app, "eg", "expansion graph of a unit", o, true);
  eg->add_option("--dot", o.dot, "write DOT to this file");
  eg->add_option("--json", o.json, "write JSON to this file");
  eg->add_option("--cap", o.cap, "largest candidate tuple space");
  eg->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));

  auto* gen = app.add_subcommand("gen", "generate benchmark instances");
  gen->require_subcommand(1);
  auto* primes = gen->add_subcommand("prime-cycles", "disjoint prime-length cycles");
  primes->add_option("m", o.m, "number of cycles")->required();
  auto* threecol = gen->add_subcommand("threecol", "3-colorability instance of a graph");
  threecol->add_option("edgelist", o.edge_list, "edge list file")->required();
  threecol->add_option("k", o.k, "lifted arity")->required();
  for (auto* cmd : {primes, threecol}) {
    cmd->add_option("--out-prefix", o.out_prefix, "write <prefix>.nxf and <prefix>.nxu");
    cmd->add_option("--out", o.out, "write the result to this file");
  }

  auto* selftest = app.add_subcommand("selftest", "cross-check the engine against exhaustive oracles");
  selftest->add_option("--seed", o.seed, "first seed");
  selftest->add_option("--count", o.count, "number of seeds")->check(CLI::NonNegativeNumber);
  selftest->add_option("--out", o.out, "write the report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    usage_error(e.what());
  }

  Runner r(o);
  if (load_check->parsed()) return r.load_check();
  if (summarize->parsed()) return r.summarize();
  if (can->parsed()) return r.characterize(false);
  if (core->parsed()) return r.characterize(true);
  if (def->parsed()) return r.def();
  if (ess->parsed()) return r.ess();
  if (prec->parsed()) return r.compare(NX_VERDICT_PREC);
  if (sim->parsed()) return r.compare(NX_VERDICT_SIM);
  if (inc->parsed()) return r.compare(NX_VERDICT_INC);
  if (eg->parsed()) return r.eg();
  if (primes->parsed()) return r.gen_prime_cycles();
  if (threecol->parsed()) return r.gen_threecol();
  if (selftest->parsed()) return r.selftest();
  usage_error("no command given");
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Failure& f) {
    std::cerr << f.json << '\n';
    return kError;
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"code", "Internal"}, {"message", e.what()}}.dump() << '\n';
    return kError;
  }
}
