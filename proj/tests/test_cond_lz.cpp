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

#include <random>

#include "corpus.hpp"
#include "oracles.hpp"
#include "srlz.hpp"

namespace srlz {
namespace {

using testing::binary_sequence;
using testing::error_code_of;
using testing::naive_joint;
using testing::random_sequence;

TEST(JointParse, WorkedExample) {
  const Sequence x = Sequence::from_string("010101");
  const Sequence y = Sequence::from_string("010001");
  const JointParseResult j = joint_parse(x, y);
  EXPECT_EQ(j.joint_count, 4u);
  EXPECT_EQ(j.distinct_primary, 3u);
  EXPECT_EQ(j.occurrence_counts, (std::vector<std::size_t>{1, 1, 2}));
  EXPECT_EQ(j.rho_cond, 1.0 / 3.0);
  EXPECT_EQ(rho_cond(y, x), 1.0 / 3.0);
}

TEST(JointParse, IdenticalConstantPair) {
  // a|aa|a: the trailing repeat joins the class of "a".
  const Sequence a = Sequence::from_string("aaaa");
  const JointParseResult j = joint_parse(a, a);
  EXPECT_EQ(j.joint_count, 3u);
  EXPECT_TRUE(j.is_last_incomplete);
  EXPECT_EQ(j.occurrence_counts, (std::vector<std::size_t>{2, 1}));
  EXPECT_EQ(j.rho_cond, 0.5);

  const Sequence b = Sequence::from_string("aaaaaa");
  const JointParseResult k = joint_parse(b, b);
  EXPECT_EQ(k.joint_count, 3u);
  EXPECT_EQ(k.occurrence_counts, (std::vector<std::size_t>{1, 1, 1}));
  EXPECT_EQ(k.rho_cond, 0.0);
}

TEST(JointParse, TupleConditioningMatchesNaiveParser) {
  const Sequence target = Sequence::from_string("0101");
  const Sequence hat = Sequence::from_string("0000");
  const Sequence tilde = Sequence::from_string("0011");
  std::vector<Symbol> packed;
  for (std::size_t i = 0; i < 4; ++i) packed.push_back(static_cast<Symbol>(hat[i] * 2 + tilde[i]));
  const auto want = naive_joint(packed, {target.data().begin(), target.data().end()});
  const Sequence side[] = {hat, tilde};
  EXPECT_NEAR(rho_cond(target, side), want.rho_cond, 1e-15);
  EXPECT_EQ(joint_parse(pack(side), target).occurrence_counts, want.counts);
}

TEST(JointParse, MatchesNaiveParser) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = rng() % 200;
    const Sequence x = random_sequence(rng, 1 + rng() % 4, n);
    const Sequence y = random_sequence(rng, 1 + rng() % 4, n);
    const auto want = naive_joint({x.data().begin(), x.data().end()}, {y.data().begin(), y.data().end()});
    const JointParseResult j = joint_parse(x, y);
    ASSERT_EQ(j.joint_count, want.joint);
    ASSERT_EQ(j.distinct_primary, want.distinct_primary);
    ASSERT_EQ(j.occurrence_counts, want.counts);
    EXPECT_NEAR(j.rho_cond, want.rho_cond, 1e-12);
  }
}

TEST(JointParse, SelfConditioningIsFree) {
  for (std::size_t n = 1; n <= 10; ++n) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      const Sequence s = binary_sequence(bits, n);
      const auto want = naive_joint({s.data().begin(), s.data().end()}, {s.data().begin(), s.data().end()});
      ASSERT_EQ(rho_cond(s, s), want.rho_cond) << s.to_string();
      // A trailing repeat can land in an existing class, and only then.
      const auto p = parse(s);
      if (!p.is_last_incomplete) {
        ASSERT_EQ(rho_cond(s, s), 0.0) << s.to_string();
      }
    }
  }
}

TEST(JointParse, SelfPairEqualsPlainComplexity) {
  for (std::size_t n = 1; n <= 12; ++n) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      const Sequence s = binary_sequence(bits, n);
      ASSERT_EQ(rho_joint(s, s), rho_lz(s)) << s.to_string();
    }
  }
}

TEST(JointParse, ConditioningOnItselfLeavesOneEntryPerClass) {
  std::mt19937_64 rng(9);
  const Sequence s = random_sequence(rng, 3, 500);
  // Each primary phrase then pairs with exactly one joint phrase, except that
  // an incomplete tail may repeat one.
  const JointParseResult j = joint_parse(s, s);
  std::size_t extra = 0;
  for (auto c : j.occurrence_counts) extra += c - 1;
  EXPECT_LE(extra, 1u);
}

TEST(CondCodec, RoundTrip) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = rng() % 1200;
    const Sequence x = random_sequence(rng, 1 + rng() % 27, n);
    const Sequence y = random_sequence(rng, 1 + rng() % 27, n);
    const auto bytes = cond_encode(y, x).serialize();
    ASSERT_EQ(cond_decode(Bitstream::deserialize(bytes), x), y) << "trial " << trial;
  }
}

TEST(CondCodec, SmallCases) {
  const Sequence x = Sequence::from_string("010101");
  const Sequence y = Sequence::from_string("010001");
  EXPECT_EQ(cond_decode(cond_encode(y, x), x), y);
  const Sequence empty = Sequence::from_string("");
  const Bitstream bs = cond_encode(empty, empty);
  EXPECT_EQ(bs.payload_bits, 0u);
  EXPECT_EQ(cond_decode(Bitstream::deserialize(bs.serialize()), empty).size(), 0u);
}

TEST(CondCodec, NeverCostsMoreThanCodingThePair) {
  for (std::uint64_t i = 0; i < testing::kCorpusSize; ++i) {
    const testing::Case c = testing::make_case(testing::kCorpusSeed, i);
    const Bitstream cond = cond_encode(c.secondary, c.primary);
    const Bitstream joint = lz_encode(pack(c.primary, c.secondary));
    ASSERT_LE(cond.payload_bits, joint.payload_bits) << "case " << i;
  }
}

TEST(CondCodec, SelfConditionedBinaryIsWithinSlack) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const Sequence s = random_sequence(rng, 2, 1024);
    EXPECT_LE(static_cast<double>(cond_encode(s, s).payload_bits), 1024.0 * eps_hat(1024));
  }
}

TEST(CondCodec, BinaryRoundTrip) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = rng() % 2049;
    const Sequence x = random_sequence(rng, 2, n);
    const Sequence y = random_sequence(rng, 2, n);
    ASSERT_EQ(cond_decode(cond_encode(y, x), x), y) << "trial " << trial;
  }
}

TEST(CondCodec, CorrelatedPairsCostLittle) {
  std::mt19937_64 rng(4);
  const Sequence x = random_sequence(rng, 4, 4000);
  const Bitstream same = cond_encode(x, x);
  const Bitstream indep = cond_encode(random_sequence(rng, 4, 4000), x);
  EXPECT_LT(same.payload_bits * 2, indep.payload_bits);
  EXPECT_LE(rho_cond(x, x), 2.0 / 4000.0);
}

TEST(CondCodec, ConditionsOnTuples) {
  std::mt19937_64 rng(8);
  const Sequence a = random_sequence(rng, 2, 700);
  const Sequence b = random_sequence(rng, 3, 700);
  const Sequence c = random_sequence(rng, 2, 700);
  const Sequence y = random_sequence(rng, 5, 700);
  const Sequence parts[] = {a, b, c};
  const Bitstream bs = cond_encode(y, parts);
  EXPECT_EQ(cond_decode(bs, parts), y);
  EXPECT_EQ(rho_cond(y, parts), rho_cond(y, pack(parts)));
  const Sequence swapped[] = {b, a, c};
  EXPECT_EQ(error_code_of([&] { cond_decode(bs, swapped); }), ErrorCode::kChecksumMismatch);
}

TEST(CondCodec, Errors) {
  std::mt19937_64 rng(12);
  const Sequence x = random_sequence(rng, 2, 300);
  const Sequence y = random_sequence(rng, 2, 300);
  EXPECT_EQ(error_code_of([&] { cond_encode(y, x.slice(0, 299)); }), ErrorCode::kLengthMismatch);

  const Bitstream bs = cond_encode(y, x);
  const Sequence other = random_sequence(rng, 2, 300);
  EXPECT_EQ(error_code_of([&] { cond_decode(bs, other); }), ErrorCode::kChecksumMismatch);

  Bitstream tampered = bs;
  tampered.dictionary_hash ^= 1;
  EXPECT_EQ(error_code_of([&] { cond_decode(tampered, x); }), ErrorCode::kDictionaryMismatch);

  Bitstream truncated = bs;
  truncated.payload.resize(truncated.payload.size() / 2);
  truncated.payload_bits = truncated.payload.size() * 8;
  EXPECT_EQ(error_code_of([&] { cond_decode(truncated, x); }), ErrorCode::kTruncated);

  EXPECT_EQ(error_code_of([&] { cond_decode(lz_encode(y), x); }), ErrorCode::kModeMismatch);

  auto bytes = bs.serialize();
  bytes.resize(bytes.size() - 3);
  EXPECT_EQ(error_code_of([&] { cond_decode(Bitstream::deserialize(bytes), x); }).has_value(), true);
}

}  // namespace
}  // namespace srlz
