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

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct Result {
  int status;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("nexus_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Result run(const std::string& args) const {
    const fs::path out = dir_ / "stdout", err = dir_ / "stderr";
    const std::string cmd = std::string(NEXUS_CLI_PATH) + " " + args + " >" + out.string() + " 2>" + err.string();
    const int raw = std::system(cmd.c_str());
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(out), slurp(err)};
  }

  std::string kb_args() const {
    return data("fig1.nxf") + " " + data("u0.nxu") + " --selector sigma0";
  }

  static std::string data(const char* name) { return std::string(NEXUS_TEST_DATA_DIR) + "/" + name; }

  fs::path dir_;
};

TEST_F(CliTest, DecisionCommands) {
  auto r = run("sim " + kb_args() + " --t '(Prater)' --t2 '(Leolandia)'");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "yes\n");
  r = run("def " + kb_args());
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "yes\n");
  r = run("prec " + kb_args() + " --t '(Gardaland)' --t2 '(Leolandia)'");
  EXPECT_EQ(r.out, "yes\n");
  r = run("inc " + kb_args() + " --t '(Prater)' --t2 '(Leolandia)'");
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(r.out, "no\n");
  r = run("ess " + kb_args() + " --t '(Gardaland)'");
  EXPECT_EQ(r.status, 1);
}

TEST_F(CliTest, ExpansionGraphDot) {
  const fs::path dot = dir_ / "eg.dot";
  const auto r = run("eg " + kb_args() + " --dot " + dot.string());
  ASSERT_EQ(r.status, 0) << r.err;
  const std::string text = slurp(dot);
  int nodes = 0;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    if (line.find("[label=") != std::string::npos) ++nodes;
  }
  EXPECT_EQ(nodes, 6);
  EXPECT_NE(text.find("n0 -> n1;"), std::string::npos);
}

TEST_F(CliTest, FunctionalCommands) {
  auto r = run("core " + kb_args());
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out.rfind("x1 <- ", 0), 0u);
  r = run("can " + kb_args() + " --stream --format json");
  EXPECT_EQ(nlohmann::json::parse(r.out).at("free_vars").size(), 1u);
  r = run("ess " + kb_args());
  EXPECT_EQ(r.out, "(DiscoveryCove)\n(Epcot)\n");
  r = run("summarize " + data("fig1.nxf") + " --selector sigma0 --t '(Florida)'");
  EXPECT_EQ(r.out, "partOf(Florida,US)\ntop(Florida)\ntop(US)\n");
  r = run("load-check " + kb_args() + " --format json");
  EXPECT_EQ(nlohmann::json::parse(r.out).at("unit_tuples"), 2);
}

TEST_F(CliTest, Generators) {
  const std::string prefix = (dir_ / "pc").string();
  auto r = run("gen prime-cycles 2 --out-prefix " + prefix);
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out, "selector neighborhood:3\n");
  r = run("core " + prefix + ".nxf " + prefix + ".nxu --selector neighborhood:3");
  EXPECT_EQ(r.status, 0);
  std::ofstream(dir_ / "k4.txt") << "a b\na c\na d\nb c\nb d\nc d\n";
  const std::string k4 = (dir_ / "k4").string();
  r = run("gen threecol " + (dir_ / "k4.txt").string() + " 1 --out-prefix " + k4);
  ASSERT_EQ(r.status, 0) << r.err;
  const std::string query = r.out.substr(r.out.find("query ") + 6, r.out.size() - r.out.find("query ") - 7);
  r = run("ess " + k4 + ".nxf " + k4 + ".nxu --t '" + query + "'");
  EXPECT_EQ(r.out, "no\n");
}

TEST_F(CliTest, ErrorsExitTwoWithRecords) {
  std::ofstream(dir_ / "bad.nxf") << "p(a)\nq(b\n";
  auto r = run("def " + (dir_ / "bad.nxf").string() + " " + data("u0.nxu"));
  EXPECT_EQ(r.status, 2);
  const auto j = nlohmann::json::parse(r.err);
  EXPECT_EQ(j.at("code"), "Parse");
  EXPECT_EQ(j.at("line"), 2);
  r = run("def " + data("fig1.nxf"));
  EXPECT_EQ(r.status, 2);
  EXPECT_EQ(nlohmann::json::parse(r.err).at("code"), "Usage");
  r = run("sim " + kb_args() + " --t '(Epcot)' --t2 '(Prater)'");
  EXPECT_EQ(r.status, 2);
  EXPECT_EQ(nlohmann::json::parse(r.err).at("code"), "OverlapWithUnit");
  r = run("gen prime-cycles 9");
  EXPECT_EQ(r.status, 2);
}

TEST_F(CliTest, RepeatedRunsAreByteIdentical) {
  const std::vector<std::string> commands{
      "load-check " + kb_args(),
      "summarize " + data("fig1.nxf") + " --selector sigma0 --t '(Epcot)'",
      "can " + kb_args(),
      "core " + kb_args() + " --format json",
      "def " + kb_args(),
      "ess " + kb_args(),
      "prec " + kb_args() + " --t '(Gardaland)' --t2 '(Leolandia)'",
      "sim " + kb_args() + " --t '(Prater)' --t2 '(Leolandia)'",
      "inc " + kb_args() + " --t '(Gardaland)' --t2 '(PacificPark)'",
      "eg " + kb_args(),
      "eg " + kb_args() + " --format json",
      "gen prime-cycles 3",
      "selftest --seed 5 --count 5",
  };
  for (const auto& c : commands) {
    const Result first = run(c);
    const Result again = run(c);
    const Result threaded = c.rfind("gen", 0) == 0 || c.rfind("selftest", 0) == 0 ? run(c) : run(c + " --threads 4");
    EXPECT_EQ(first.out, again.out) << c;
    EXPECT_EQ(first.out, threaded.out) << c;
    EXPECT_EQ(first.status, threaded.status) << c;
    EXPECT_FALSE(first.out.empty()) << c;
  }
}

}  // namespace
