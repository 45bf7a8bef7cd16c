// Copyright 2026 The srlz Authors. All Rights Reserved.
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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

#ifndef SRLZ_CLI_PATH
#error "SRLZ_CLI_PATH must name the srlz executable"
#endif

namespace srlz {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("srlz_cli_" + std::string(info->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name), std::ios::binary) << text; }

  std::string read(const std::string& name) const {
    std::ifstream in(path(name), std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }

  // Runs the CLI inside the scratch directory; stdout goes to out.json.
  int run(const std::string& args) const {
    const std::string cmd = "cd '" + dir_.string() + "' && '" SRLZ_CLI_PATH "' " + args + " > out.json 2> err.txt";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  json report() const { return json::parse(read("out.json")); }

  fs::path dir_;
};

TEST_F(Cli, AnalyzeWorkedSequence) {
  write("a.txt", "abbabaabbaaabaa");
  ASSERT_EQ(run("analyze a.txt --phrases"), 0);
  const json r = report();
  EXPECT_EQ(r["report_version"], 1);
  EXPECT_EQ(r["results"]["lz"]["phrase_count"], 8);
  EXPECT_EQ(r["results"]["lz"]["phrases"], json({"a", "b", "ba", "baa", "bb", "aa", "ab", "aa"}));
  EXPECT_EQ(r["results"]["lz"]["rho_lz"], 1.6);
}

TEST_F(Cli, AnalyzeWorkedPair) {
  write("x.txt", "010101");
  write("y.txt", "010001");
  ASSERT_EQ(run("analyze y.txt --side x.txt"), 0);
  const json c = report()["results"]["cond"];
  EXPECT_EQ(c["c_joint"], 4);
  EXPECT_EQ(c["c_prime"], 3);
  EXPECT_EQ(c["c_l"], json({1, 1, 2}));
  EXPECT_DOUBLE_EQ(c["rho_cond"].get<double>(), 1.0 / 3.0);
}

TEST_F(Cli, UsageErrors) {
  write("a.txt", "abbabaabbaaabaa");
  EXPECT_EQ(run("analyze a.txt -l 2"), 2);
  EXPECT_NE(read("err.txt").find("block-length"), std::string::npos);
  EXPECT_EQ(run("analyze missing.txt"), 2);
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("encode -m nope a.txt -o z"), 2);
  EXPECT_EQ(run("analyze a.txt --eps-mode 1.5"), 2);
}

TEST_F(Cli, LzRoundTripAndModeMismatch) {
  write("a.txt", "the quick brown fox jumps over the lazy dog, the quick brown fox");
  ASSERT_EQ(run("encode -m lz a.txt -o a.lz"), 0);
  ASSERT_EQ(run("decode a.lz -o a.out"), 0);
  EXPECT_EQ(read("a.out"), read("a.txt"));
  EXPECT_EQ(run("decode a.lz -o b.out -m cond"), 2);
  EXPECT_NE(read("err.txt").find("mode-mismatch"), std::string::npos);
}

TEST_F(Cli, CondRoundTrip) {
  write("x.txt", "0101010101010101");
  write("y.txt", "0100010101000101");
  ASSERT_EQ(run("encode -m cond y.txt --side x.txt -o y.cond"), 0);
  ASSERT_EQ(run("decode y.cond --side x.txt -o y.out"), 0);
  EXPECT_EQ(read("y.out"), read("y.txt"));
  write("z.txt", "1101010101010101");
  EXPECT_NE(run("decode y.cond --side z.txt -o y2.out"), 0);
}

TEST_F(Cli, SuccessiveRefinement) {
  write("s.txt", "abcdabcdaabbccddabcdabcdaabbccdd");
  ASSERT_EQ(run("encode -m sr s.txt --d1 0.1 --d2 0.05 --objective min-sum -o s.sr"), 0);
  const json enc = report();
  const auto& rates = enc["results"]["rates"];
  ASSERT_EQ(run("decode s.sr -o s.dec"), 0);
  const std::string hat = read("s.dec.hat"), tilde = read("s.dec.tilde");
  EXPECT_EQ(hat.size(), 32u);
  EXPECT_EQ(tilde.size(), 32u);
  std::size_t diff1 = 0, diff2 = 0;
  const std::string src = read("s.txt");
  for (std::size_t i = 0; i < src.size(); ++i) {
    diff1 += hat[i] != src[i];
    diff2 += tilde[i] != src[i];
  }
  EXPECT_LE(diff1, 3u);
  EXPECT_LE(diff2, 1u);
  EXPECT_GE(rates["r1"].get<double>(), rates["floor"]["a"].get<double>());
  ASSERT_EQ(run("decode s.sr --stage 1 -o s.one"), 0);
  EXPECT_EQ(read("s.one.hat"), hat);
  EXPECT_FALSE(fs::exists(path("s.one.tilde")));
}

TEST_F(Cli, MultipleDescriptions) {
  write("s.txt", "0123012301230123001122330123012300112233");
  ASSERT_EQ(run("encode -m md-egc s.txt --split 0.5 -o s.md"), 0);
  ASSERT_TRUE(fs::exists(path("s.md.1")));
  ASSERT_TRUE(fs::exists(path("s.md.2")));
  ASSERT_EQ(run("decode s.md.1 --second s.md.2 -o c"), 0);
  EXPECT_EQ(read("c.central"), read("s.txt"));
  ASSERT_EQ(run("decode s.md.2 -o side"), 0);
  EXPECT_EQ(read("side.tilde"), read("s.txt"));

  ASSERT_EQ(run("encode -m md-zb s.txt --alpha 0.25 -o z.md"), 0);
  ASSERT_EQ(run("decode z.md.1 --second z.md.2 -o zc"), 0);
  EXPECT_EQ(read("zc.central"), read("s.txt"));
  EXPECT_EQ(run("decode s.md.1 --second z.md.2 -o bad"), 2);
}

TEST_F(Cli, VerifySuites) {
  EXPECT_EQ(run("verify split-lemma --budget 1000 --seed 4"), 0);
  EXPECT_EQ(report()["results"]["checked"], 1000);
  EXPECT_EQ(run("verify entropy-ineq --n 8 -l 1 -l 2"), 0);
  EXPECT_EQ(report()["results"]["failed"], 0);
  EXPECT_EQ(run("verify frontier --budget 5"), 0);
  EXPECT_EQ(run("verify converse --n 3 --max-len 1"), 0);
  EXPECT_EQ(run("verify entropy-ineq --n 40"), 3);
  EXPECT_EQ(run("verify nonsense"), 2);
}

TEST_F(Cli, RegionCsv) {
  write("a.txt", "abbabaabbaaabaa");
  ASSERT_EQ(run("region a.txt --d1 0.1 --d2 0.1 --csv f.csv"), 0);
  const std::string csv = read("f.csv");
  EXPECT_EQ(csv.rfind("r1,r2\n", 0), 0u);
  EXPECT_TRUE(report()["results"].contains("frontier"));
}

TEST_F(Cli, EpsModeFromEnvironment) {
  write("a.txt", "abbabaabbaaabaa");
  ASSERT_EQ(run("analyze a.txt"), 0);
  EXPECT_EQ(report()["parameters"]["eps_mode"], "default");
  const std::string cmd = "cd '" + dir_.string() + "' && SRLZ_EPS_MODE=zero '" SRLZ_CLI_PATH "' analyze a.txt > env.json";
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_EQ(json::parse(read("env.json"))["parameters"]["eps_mode"], "zero");
  const std::string both = "cd '" + dir_.string() + "' && SRLZ_EPS_MODE=zero '" SRLZ_CLI_PATH "' analyze a.txt --eps-mode 0.5 > both.json";
  ASSERT_EQ(std::system(both.c_str()), 0);
  EXPECT_EQ(json::parse(read("both.json"))["parameters"]["eps_mode"], "custom:0.5");
}

}  // namespace
}  // namespace srlz
