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

#include <map>
#include <random>
#include <set>

#include "oracles.hpp"
#include "srlz.hpp"

namespace srlz {
namespace {

using testing::error_code_of;

constexpr const char* kAlternator = R"(# stage 1 flips its output on odd steps; stage 2 emits a xor b
[S]
even odd
[Z]
z
[f1]
even 0 "0"
even 1 "1"
odd 0 "1"
odd 1 "0"
[g1]
even 0 odd
even 1 odd
odd 0 even
odd 1 even
[f2]
z 0 0 "0"
z 0 1 "1"
z 1 0 "1"
z 1 1 "0"
[g2]
z 0 0 z
z 0 1 z
z 1 0 z
z 1 1 z
[init]
primary = 0 1
secondary = 0 1
s1 = even
z1 = z
)";

TEST(FsmText, ParsesAndRoundTrips) {
  const FsmEncoder e = FsmEncoder::parse(kAlternator);
  EXPECT_EQ(e.q, 2u);
  EXPECT_EQ(e.states_s, (std::vector<std::string>{"even", "odd"}));
  EXPECT_EQ(e.f1[e.f1_index(1, 0)], "1");
  EXPECT_EQ(e.f2[e.f2_index(0, 1, 0)], "1");
  const std::string text = e.to_text();
  const FsmEncoder back = FsmEncoder::parse(text);
  EXPECT_EQ(back.to_text(), text);
  EXPECT_EQ(back.f1, e.f1);
  EXPECT_EQ(back.g1, e.g1);
  EXPECT_EQ(back.f2, e.f2);
  EXPECT_EQ(back.g2, e.g2);
}

TEST(FsmText, CanonicalForm) {
  const FsmEncoder id = FsmEncoder::identity(Alphabet::from_chars("ab"), Alphabet::from_chars("xyz"));
  const std::string text = id.to_text();
  EXPECT_EQ(text.rfind("[S]\ns0\n[Z]\nz0\n[f1]\ns0 a \"", 0), 0u);
  EXPECT_NE(text.find("z0 b z \"10\"\n"), std::string::npos);
  EXPECT_NE(text.find("[init]\nprimary = a b\nsecondary = x y z\ns1 = s0\nz1 = z0\nq = 1\n"), std::string::npos);
}

TEST(FsmText, Errors) {
  const std::string base = kAlternator;
  auto edit = [&](const std::string& from, const std::string& to) {
    std::string t = base;
    t.replace(t.find(from), from.size(), to);
    return t;
  };
  auto code = [](const std::string& t) { return error_code_of([&] { FsmEncoder::parse(t); }); };
  EXPECT_EQ(code(edit("[g2]", "[g3]")), ErrorCode::kFormat);
  EXPECT_EQ(code(edit("odd 1 \"0\"\n", "")), ErrorCode::kFormat);             // not total
  EXPECT_EQ(code(edit("odd 1 \"0\"\n", "odd 1 \"0\"\nodd 1 \"0\"\n")), ErrorCode::kFormat);
  EXPECT_EQ(code(edit("odd 1 \"0\"", "odd 1 \"2\"")), ErrorCode::kFormat);   // not binary
  EXPECT_EQ(code(edit("odd 1 \"0\"", "odd 1 0")), ErrorCode::kFormat);       // unquoted
  EXPECT_EQ(code(edit("odd 0 even", "odd 0 nowhere")), ErrorCode::kFormat);
  EXPECT_EQ(code(edit("z1 = z", "z1 = y")), ErrorCode::kFormat);
  EXPECT_EQ(code(edit("z1 = z", "z1 = z\nq = 1")), ErrorCode::kFormat);      // 2 states > q
  EXPECT_EQ(code(edit("[init]\n", "[init]\n[init]\n")), ErrorCode::kFormat);
  EXPECT_EQ(code("even 0 \"0\"\n"), ErrorCode::kFormat);
}

TEST(FsmRun, AlternatorTrace) {
  const FsmEncoder e = FsmEncoder::parse(kAlternator);
  const Sequence x = Sequence::from_string("0011");
  const Sequence y = Sequence::from_string("0110");
  const EncodingTrace t = run(e, x, y);
  EXPECT_EQ(t.outputs_u, (std::vector<std::string>{"0", "1", "1", "0"}));
  EXPECT_EQ(t.outputs_v, (std::vector<std::string>{"0", "1", "0", "1"}));
  EXPECT_EQ(t.states_s, (std::vector<std::uint32_t>{0, 1, 0, 1, 0}));
  EXPECT_EQ(t.length_u, 4u);
  EXPECT_EQ(t.length_v, 4u);
  EXPECT_DOUBLE_EQ(t.rho12(), 2.0);
  const auto lengths = FsmLengths(e).run(x.data(), y.data());
  EXPECT_EQ(lengths.first, t.length_u);
  EXPECT_EQ(lengths.second, t.length_v);
  EXPECT_EQ(error_code_of([&] { run(e, x, Sequence::from_string("012")); }).has_value(), true);
}

// Injectivity of the k-step output/final-state maps by direct enumeration.
bool naive_lossless(const FsmEncoder& e, std::size_t k_max) {
  const std::size_t beta = e.beta(), gamma = e.gamma();
  for (std::size_t k = 1; k <= k_max; ++k) {
    std::set<std::tuple<std::string, std::uint32_t>> stage1;
    std::set<std::tuple<std::string, std::string, std::uint32_t, std::uint32_t>> both;
    std::size_t xs = 1;
    for (std::size_t i = 0; i < k; ++i) xs *= beta;
    std::size_t ys = 1;
    for (std::size_t i = 0; i < k; ++i) ys *= gamma;
    for (std::size_t xi = 0; xi < xs; ++xi) {
      std::vector<Symbol> a(k);
      for (std::size_t i = 0, v = xi; i < k; ++i, v /= beta) a[k - 1 - i] = static_cast<Symbol>(v % beta);
      std::string u;
      std::uint32_t s = e.s1;
      for (Symbol c : a) {
        u += e.f1[e.f1_index(s, c)];
        s = e.g1[e.f1_index(s, c)];
      }
      if (!stage1.emplace(u, s).second) return false;
      for (std::size_t yi = 0; yi < ys; ++yi) {
        std::string v;
        std::uint32_t z = e.z1;
        for (std::size_t i = 0, r = yi; i < k; ++i, r /= gamma) {
          const Symbol b = static_cast<Symbol>(r % gamma);
          const Symbol c = a[i];
          v += e.f2[e.f2_index(z, c, b)];
          z = e.g2[e.f2_index(z, c, b)];
        }
        if (!both.emplace(u, v, s, z).second) return false;
      }
    }
  }
  return true;
}

TEST(FsmRun, DegenerateCoders) {
  FsmEncoder silent = FsmEncoder::identity(Alphabet::from_chars("01"), Alphabet::from_chars("01"));
  for (auto& w : silent.f1) w.clear();
  const Sequence x = Sequence::from_string("0110");
  EXPECT_EQ(run(silent, x, x).rho1(), 0.0);

  // Emits nothing on even steps and the 2-bit pair code on odd steps.
  FsmEncoder pairs;
  pairs.states_s = {"e", "o"};
  pairs.states_z = {"z"};
  pairs.q = 2;
  pairs.resize_tables();
  for (Symbol a = 0; a < 2; ++a) {
    pairs.f1[pairs.f1_index(0, a)] = "";
    pairs.g1[pairs.f1_index(0, a)] = 1;
    pairs.f1[pairs.f1_index(1, a)] = a ? "11" : "00";
    pairs.g1[pairs.f1_index(1, a)] = 0;
    for (Symbol b = 0; b < 2; ++b) pairs.f2[pairs.f2_index(0, a, b)] = b ? "1" : "0";
  }
  const Sequence zeros(Alphabet::from_chars("01"), {0, 0, 0, 0});
  const EncodingTrace t = run(pairs, Sequence::from_string("0110"), zeros);
  EXPECT_EQ(t.outputs_u, (std::vector<std::string>{"", "11", "", "00"}));
  EXPECT_EQ(t.length_u, 4u);
}

TEST(Lossless, AgreesWithEnumerationOracle) {
  std::mt19937_64 rng(41);
  const std::vector<std::string> words{"", "0", "1", "00", "01", "10", "11"};
  int lossless = 0;
  for (int trial = 0; trial < 400; ++trial) {
    FsmEncoder e;
    e.states_s = {"s0", "s1"};
    e.states_z = {"z0", "z1"};
    e.q = 2;
    e.resize_tables();
    for (auto& w : e.f1) w = words[rng() % words.size()];
    for (auto& w : e.f2) w = words[rng() % words.size()];
    for (auto& g : e.g1) g = static_cast<std::uint32_t>(rng() % 2);
    for (auto& g : e.g2) g = static_cast<std::uint32_t>(rng() % 2);
    const bool want = naive_lossless(e, 4);
    ASSERT_EQ(is_information_lossless(e, 4).lossless, want) << e.to_text();
    lossless += want;
  }
  EXPECT_GT(lossless, 0);
}

TEST(Lossless, Counterexample) {
  FsmEncoder e = FsmEncoder::identity(Alphabet::from_chars("01"), Alphabet::from_chars("01"));
  e.f1[e.f1_index(0, 1)] = "0";  // both primary symbols now emit "0"
  const LosslessReport r = is_information_lossless(e, 5);
  ASSERT_FALSE(r.lossless);
  ASSERT_TRUE(r.counterexample.has_value());
  EXPECT_EQ(r.counterexample->k, 1u);
  EXPECT_EQ(r.counterexample->condition, 1);
  EXPECT_EQ(r.counterexample->primary_a, std::vector<Symbol>{0});
  EXPECT_EQ(r.counterexample->primary_b, std::vector<Symbol>{1});

  FsmEncoder f = FsmEncoder::identity(Alphabet::from_chars("01"), Alphabet::from_chars("01"));
  f.f2[f.f2_index(0, 0, 1)] = "";  // an empty word makes concatenations ambiguous
  const LosslessReport r2 = is_information_lossless(f, 5);
  ASSERT_FALSE(r2.lossless);
  const LosslessCounterexample& c = *r2.counterexample;
  EXPECT_EQ(c.condition, 2);
  EXPECT_EQ(c.k, 2u);
  EXPECT_EQ(c.primary_a, c.primary_b);
  EXPECT_NE(c.secondary_a, c.secondary_b);
  auto v_of = [&](const std::vector<Symbol>& a, const std::vector<Symbol>& b) {
    return run(f, Sequence(f.primary, a), Sequence(f.secondary, b)).outputs_v;
  };
  auto joined = [](const std::vector<std::string>& w) {
    std::string s;
    for (const auto& p : w) s += p;
    return s;
  };
  EXPECT_EQ(joined(v_of(c.primary_a, c.secondary_a)), joined(v_of(c.primary_b, c.secondary_b)));

  EXPECT_TRUE(is_information_lossless(FsmEncoder::parse(kAlternator), 6).lossless);
}

TEST(Lossless, SmallCodebooks) {
  FsmEncoder silent = FsmEncoder::identity(Alphabet::from_chars("ab"), Alphabet::from_chars("ab"));
  for (auto& w : silent.f1) w.clear();
  const LosslessReport r = is_information_lossless(silent, 4);
  ASSERT_FALSE(r.lossless);
  EXPECT_EQ(r.counterexample->k, 1u);

  // a -> 0, b -> 1, c -> 00: "c" and "aa" collide at k = 2.
  FsmEncoder book = FsmEncoder::identity(Alphabet::from_chars("abc"), Alphabet::from_chars("x"));
  book.f1[book.f1_index(0, 0)] = "0";
  book.f1[book.f1_index(0, 1)] = "1";
  book.f1[book.f1_index(0, 2)] = "00";
  const LosslessReport r2 = is_information_lossless(book, 4);
  ASSERT_FALSE(r2.lossless);
  EXPECT_EQ(r2.counterexample->k, 2u);
  EXPECT_EQ(r2.counterexample->condition, 1);

  EXPECT_TRUE(is_information_lossless(FsmEncoder::identity(Alphabet::indexed(3), Alphabet::indexed(5)), 4).lossless);
}

TEST(EncoderFamily, BinaryOneStateMaxLenTwo) {
  const EncoderFamily fam = lossless_one_state_family(Alphabet::from_chars("01"), Alphabet::from_chars("01"), 2);
  EXPECT_EQ(fam.enumerated, 117649u);  // 7 output words in each of 6 cells
  EXPECT_EQ(fam.lossless, 16744u);
  EXPECT_EQ(fam.encoders.size(), 64u);
}

TEST(Kraft, IdentityEncoderAndBound) {
  const FsmEncoder id = FsmEncoder::identity(Alphabet::from_chars("01"), Alphabet::from_chars("01"));
  for (std::size_t l = 1; l <= 4; ++l) {
    const KraftReport r = kraft_check(id, l);
    EXPECT_DOUBLE_EQ(r.lhs, 1.0);
    EXPECT_TRUE(r.holds);
    EXPECT_NEAR(r.rhs, 1.0 + std::log2(1.0 + std::pow(4.0, static_cast<double>(l))), 1e-12);
  }
  EXPECT_NEAR(kraft_check(id, 1).rhs, 1.0 + std::log2(5.0), 1e-12);

  FsmEncoder silent = id;
  for (auto& w : silent.f1) w.clear();
  for (auto& w : silent.f2) w.clear();
  for (std::size_t l = 1; l <= 5; ++l) {
    EXPECT_DOUBLE_EQ(kraft_check(silent, l).lhs, std::pow(4.0, static_cast<double>(l)));
  }
  EXPECT_FALSE(kraft_check(silent, 5).holds);

  const KraftReport alt = kraft_check(FsmEncoder::parse(kAlternator), 3);
  EXPECT_EQ(alt.q, 2u);
  EXPECT_TRUE(alt.holds);
}

TEST(Converse, IdentityEncoder) {
  std::mt19937_64 rng(2);
  const FsmEncoder id = FsmEncoder::identity(Alphabet::from_chars("01"), Alphabet::from_chars("01"));
  const Sequence x = testing::binary_sequence(rng(), 64);
  const Sequence y = testing::binary_sequence(rng(), 64);
  const ConverseReport r = converse_check(id, x, y, 6);
  ASSERT_TRUE(r.applicable);
  EXPECT_DOUBLE_EQ(r.rho1, 1.0);
  EXPECT_DOUBLE_EQ(r.rho12, 2.0);
  EXPECT_TRUE(r.holds());
  EXPECT_EQ(r.inputs.phrase_count, parse(x).phrase_count);

  const Sequence worked = Sequence::from_string("abbabaabbaaabaa");
  const FsmEncoder ab = FsmEncoder::identity(worked.alphabet(), worked.alphabet());
  EXPECT_TRUE(converse_check(ab, worked, worked, 6).holds());

  FsmEncoder lossy = id;
  lossy.f1[lossy.f1_index(0, 1)] = "0";
  EXPECT_FALSE(converse_check(lossy, x, y, 6).applicable);
}

}  // namespace
}  // namespace srlz
