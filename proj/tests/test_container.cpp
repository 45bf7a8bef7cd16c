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
using testing::random_sequence;

constexpr std::size_t kDirectoryStart = 8;
constexpr std::size_t kEntrySize = 25;

std::uint64_t be64(const std::vector<std::uint8_t>& b, std::size_t at) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < 8; ++i) v = v << 8 | b[at + i];
  return v;
}

Container sample() {
  std::mt19937_64 rng(61);
  const Sequence x = random_sequence(rng, 4, 300);
  const Sequence y = random_sequence(rng, 2, 300);
  return sr_encode(x, y).to_container();
}

TEST(Container, Layout) {
  const Container c = sample();
  const auto bytes = c.serialize();
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "SRLZ");
  EXPECT_EQ(bytes[5], static_cast<std::uint8_t>(Mode::kSr));
  EXPECT_EQ(bytes[6], 0);
  ASSERT_EQ(bytes[7], 2);
  const std::size_t body = kDirectoryStart + 2 * kEntrySize;
  std::uint64_t offset = 0;
  for (std::size_t i = 0; i < 2; ++i) {
    const std::size_t at = kDirectoryStart + i * kEntrySize;
    EXPECT_EQ(bytes[at], static_cast<std::uint8_t>(c.segments[i].role));
    EXPECT_EQ(be64(bytes, at + 1), c.segments[i].bit_length);
    EXPECT_EQ(be64(bytes, at + 9), offset);
    EXPECT_EQ(be64(bytes, at + 17), c.segments[i].bytes.size());
    EXPECT_TRUE(std::equal(c.segments[i].bytes.begin(), c.segments[i].bytes.end(), bytes.begin() + body + offset));
    offset += c.segments[i].bytes.size();
  }
  EXPECT_EQ(bytes.size(), body + offset);
  EXPECT_EQ(peek_mode(bytes), Mode::kSr);
}

TEST(Container, StageOneIsAPrefix) {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 50; ++trial) {
    const Sequence x = random_sequence(rng, 2 + rng() % 8, 1 + rng() % 2000);
    const Sequence y = random_sequence(rng, 2 + rng() % 8, x.size());
    const auto bytes = sr_encode(x, y).to_container().serialize();
    // Decoder 1 needs only the directory and the first segment.
    const std::size_t body = kDirectoryStart + bytes[7] * kEntrySize;
    ASSERT_EQ(bytes[kDirectoryStart], static_cast<std::uint8_t>(SegmentRole::kStage1));
    const std::size_t len = static_cast<std::size_t>(be64(bytes, kDirectoryStart + 17));
    const std::vector<std::uint8_t> prefix(bytes.begin() + body, bytes.begin() + body + len);
    EXPECT_EQ(lz_decode(Bitstream::deserialize(prefix)), x);
  }
}

TEST(Container, RoundTrip) {
  const Container c = sample();
  const Container back = Container::deserialize(c.serialize());
  EXPECT_EQ(back.mode, c.mode);
  ASSERT_EQ(back.segments.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(back.segments[i].role, c.segments[i].role);
    EXPECT_EQ(back.segments[i].bit_length, c.segments[i].bit_length);
    EXPECT_EQ(back.segments[i].bytes, c.segments[i].bytes);
  }
  EXPECT_EQ(back.payload_bits(), c.payload_bits());
  EXPECT_EQ(&back.require(SegmentRole::kStage2), back.find(SegmentRole::kStage2));
  EXPECT_EQ(error_code_of([&] { back.require(SegmentRole::kLzAux); }), ErrorCode::kMalformedPayload);
}

TEST(Container, Malformed) {
  const auto good = sample().serialize();
  auto with = [&](auto edit) {
    auto b = good;
    edit(b);
    return error_code_of([&] { Container::deserialize(b); });
  };
  EXPECT_EQ(with([](auto& b) { b[0] = 'X'; }), ErrorCode::kMalformedHeader);
  EXPECT_EQ(with([](auto& b) { b[4] = 99; }), ErrorCode::kMalformedHeader);
  EXPECT_EQ(with([](auto& b) { b[5] = static_cast<std::uint8_t>(Mode::kLz); }), ErrorCode::kModeMismatch);
  EXPECT_EQ(with([](auto& b) { b[6] = 1; }), ErrorCode::kMalformedHeader);
  EXPECT_EQ(with([](auto& b) { b[kDirectoryStart] = 0; }), ErrorCode::kMalformedHeader);
  EXPECT_EQ(with([](auto& b) { b[kDirectoryStart + kEntrySize + 16] ^= 1; }), ErrorCode::kMalformedHeader);
  EXPECT_EQ(with([](auto& b) { b[kDirectoryStart + 1] = 0xFF; }), ErrorCode::kMalformedHeader);
  EXPECT_EQ(with([](auto& b) { b.pop_back(); }), ErrorCode::kTruncated);
  EXPECT_EQ(with([](auto& b) { b.push_back(0); }), ErrorCode::kMalformedPayload);
  EXPECT_EQ(with([](auto& b) { b.resize(7); }), ErrorCode::kTruncated);
}

TEST(Container, RejectsBadShapes) {
  Container c = sample();
  c.description = 1;
  EXPECT_EQ(error_code_of([&] { c.serialize(); }), ErrorCode::kInvalidArgument);
  c.mode = Mode::kMd1;
  EXPECT_NO_THROW(c.serialize());
  c.mode = Mode::kLz;
  EXPECT_EQ(error_code_of([&] { c.serialize(); }), ErrorCode::kModeMismatch);
  Container big = sample();
  big.segments[0].bit_length = 8 * big.segments[0].bytes.size() + 1;
  EXPECT_EQ(error_code_of([&] { big.serialize(); }), ErrorCode::kInvalidArgument);
}

TEST(Container, SegmentBitLengthMustMatchPayload) {
  Container c = sample();
  Segment s = c.segments[0];
  const Bitstream bs = segment_stream(s);
  EXPECT_EQ(bs.payload_bits, s.bit_length);
  if (bs.payload_bits >= 8) {
    s.bit_length -= 8;
    EXPECT_EQ(error_code_of([&] { segment_stream(s); }), ErrorCode::kMalformedHeader);
  }
}

TEST(Container, ModeChecksAcrossFormats) {
  std::mt19937_64 rng(63);
  const Sequence x = random_sequence(rng, 2, 64);
  const auto lz = lz_encode(x).serialize();
  EXPECT_EQ(peek_mode(lz), Mode::kLz);
  EXPECT_EQ(error_code_of([&] { Container::deserialize(lz); }), ErrorCode::kModeMismatch);
  const auto sr = sr_encode(x, x).to_container().serialize();
  EXPECT_EQ(error_code_of([&] { Bitstream::deserialize(sr); }), ErrorCode::kModeMismatch);
}

}  // namespace
}  // namespace srlz
