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

#include "oracles.hpp"
#include "srlz.hpp"

namespace srlz {
namespace {

using testing::error_code_of;
using testing::naive_phrases;
using testing::random_sequence;

std::vector<std::string> phrase_strings(const Sequence& s, const ParseResult& p) {
  std::vector<std::string> out;
  const std::string text = s.to_string();
  for (const Phrase& ph : p.phrases) out.push_back(text.substr(ph.start, ph.length));
  return out;
}

TEST(LzParse, WorkedExample) {
  const Sequence s = Sequence::from_string("abbabaabbaaabaa");
  const ParseResult p = parse(s);
  const std::vector<std::string> want{"a", "b", "ba", "baa", "bb", "aa", "ab", "aa"};
  EXPECT_EQ(phrase_strings(s, p), want);
  EXPECT_EQ(p.phrase_count, 8u);
  EXPECT_TRUE(p.is_last_incomplete);
  EXPECT_DOUBLE_EQ(p.rho_lz, 8.0 * 3.0 / 15.0);
}

TEST(LzParse, EdgeCases) {
  EXPECT_EQ(parse(Sequence::from_string("")).phrase_count, 0u);
  EXPECT_EQ(parse(Sequence::from_string("")).rho_lz, 0.0);
  const ParseResult one = parse(Sequence::from_string("a"));
  EXPECT_EQ(one.phrase_count, 1u);
  EXPECT_FALSE(one.is_last_incomplete);
  EXPECT_EQ(one.rho_lz, 0.0);
  const ParseResult run = parse(Sequence::from_string("aaaaaa"));  // a|aa|aaa
  EXPECT_EQ(run.phrase_count, 3u);
  EXPECT_FALSE(run.is_last_incomplete);
  EXPECT_NEAR(run.rho_lz, 0.79248, 5e-6);
}

TEST(LzCodec, SmallCases) {
  const Sequence worked = Sequence::from_string("abbabaabbaaabaa");
  EXPECT_EQ(lz_decode(lz_encode(worked)), worked);

  const Sequence run = Sequence::from_string("aaaaaa");
  const Bitstream bs = lz_encode(run);
  EXPECT_LE(static_cast<double>(bs.payload_bits), 3.0 * std::log2(3.0) + 6.0 * eps_slack(6, 2));

  const Bitstream empty = lz_encode(Sequence::from_string(""));
  EXPECT_EQ(empty.phrase_count, 0u);
  EXPECT_EQ(empty.payload_bits, 0u);
  EXPECT_EQ(lz_decode(Bitstream::deserialize(empty.serialize())).size(), 0u);
}

TEST(LzParse, MatchesNaiveParser) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t alphabet = 1 + rng() % 5;
    const Sequence s = random_sequence(rng, alphabet, rng() % 300);
    const auto want = naive_phrases({s.data().begin(), s.data().end()});
    const ParseResult p = parse(s);
    ASSERT_EQ(p.phrase_count, want.size());
    for (std::size_t j = 0; j < want.size(); ++j) {
      ASSERT_EQ(p.phrases[j].length, want[j].size()) << "trial " << trial << " phrase " << j;
    }
    const double c = static_cast<double>(want.size());
    const double expect = (s.size() == 0 || want.size() <= 1) ? 0.0 : c * std::log2(c) / static_cast<double>(s.size());
    EXPECT_DOUBLE_EQ(p.rho_lz, expect);
  }
}

TEST(LzCodec, PayloadLengthMatchesPointerAndSymbolFields) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t alphabet = 2 + rng() % 30;
    const Sequence s = random_sequence(rng, alphabet, 1 + rng() % 2000);
    const ParseResult p = parse(s);
    std::uint64_t bits = 0;
    for (std::size_t j = 1; j <= p.phrase_count; ++j) {
      bits += ceil_log2(j);
      if (!(p.is_last_incomplete && j == p.phrase_count)) bits += ceil_log2(alphabet);
    }
    const Bitstream bs = lz_encode(s);
    EXPECT_EQ(bs.payload_bits, bits);
    EXPECT_LE(static_cast<double>(bs.payload_bits), p.code_len_bound);
  }
}

TEST(LzCodec, RoundTripThroughBytes) {
  std::mt19937_64 rng(3);
  const std::size_t sizes[] = {2, 4, 26};
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t alphabet = sizes[trial % 3];
    const Sequence s = random_sequence(rng, alphabet, rng() % 4097);
    const auto bytes = lz_encode(s).serialize();
    const Sequence back = lz_decode(Bitstream::deserialize(bytes));
    ASSERT_EQ(back, s) << "trial " << trial;
  }
  const Sequence named = Sequence::from_string("hello, hello, world");
  EXPECT_EQ(lz_decode(Bitstream::deserialize(lz_encode(named).serialize())), named);
}

TEST(LzCodec, RejectsMalformedStreams) {
  const Sequence s = Sequence::from_string("abbabaabbaaabaaabab");
  const Bitstream good = lz_encode(s);
  const auto bytes = good.serialize();

  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_EQ(error_code_of([&] { Bitstream::deserialize(bad_magic); }), ErrorCode::kMalformedHeader);

  auto no_alphabet = bytes;
  no_alphabet[14] = no_alphabet[15] = no_alphabet[16] = no_alphabet[17] = 0;  // u32 alphabet size
  EXPECT_EQ(error_code_of([&] { Bitstream::deserialize(no_alphabet); }), ErrorCode::kMalformedHeader);

  auto truncated = bytes;
  truncated.resize(10);
  EXPECT_EQ(error_code_of([&] { Bitstream::deserialize(truncated); }), ErrorCode::kTruncated);

  Bitstream short_payload = good;
  short_payload.payload.resize(1);
  short_payload.payload_bits = 8;
  EXPECT_EQ(error_code_of([&] { lz_decode(short_payload); }), ErrorCode::kTruncated);

  Bitstream trailing = good;
  trailing.payload.push_back(0);
  trailing.payload_bits += 8;
  EXPECT_EQ(error_code_of([&] { lz_decode(trailing); }), ErrorCode::kMalformedPayload);

  Bitstream wrong_n = good;
  wrong_n.n += 1;
  EXPECT_EQ(error_code_of([&] { lz_decode(wrong_n); }), ErrorCode::kMalformedPayload);

  // Phrase 2 has a one-bit pointer; 1 is in range, so aim at phrase 3 (two
  // bits, values 0..2) and write 3.
  Bitstream bad_ptr = good;
  BitWriter w;
  w.write(0, 0);
  w.write(0, 1);  // phrase 1: 'a'
  w.write(0, 1);
  w.write(1, 1);  // phrase 2: 'b'
  w.write(3, 2);  // phrase 3: pointer 3 is out of range
  w.write(0, 1);
  bad_ptr.payload_bits = w.bit_count();
  bad_ptr.payload = w.take();
  EXPECT_EQ(error_code_of([&] { lz_decode(bad_ptr); }), ErrorCode::kPointerOutOfRange);

  Bitstream wrong_mode = good;
  wrong_mode.mode = Mode::kCond;
  EXPECT_EQ(error_code_of([&] { lz_decode(wrong_mode); }), ErrorCode::kModeMismatch);
}

}  // namespace
}  // namespace srlz
