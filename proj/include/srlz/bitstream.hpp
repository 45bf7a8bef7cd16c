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

#ifndef SRLZ_BITSTREAM_HPP_
#define SRLZ_BITSTREAM_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "srlz/bitio.hpp"
#include "srlz/error.hpp"
#include "srlz/sequence.hpp"

namespace srlz {

inline constexpr char kMagic[4] = {'S', 'R', 'L', 'Z'};
inline constexpr std::uint8_t kFormatVersion = 1;

enum class Mode : std::uint8_t { kLz = 1, kCond = 2, kSr = 3, kMd1 = 4, kMd2 = 5 };

inline std::string mode_name(Mode m) {
  switch (m) {
    case Mode::kLz: return "LZ";
    case Mode::kCond: return "COND";
    case Mode::kSr: return "SR";
    case Mode::kMd1: return "MD1";
    case Mode::kMd2: return "MD2";
  }
  return "?";
}

inline bool is_known_mode(std::uint8_t m) { return m >= 1 && m <= 5; }

namespace detail {

inline void write_preamble(ByteWriter& w, Mode mode) {
  for (char c : kMagic) w.u8(static_cast<std::uint8_t>(c));
  w.u8(kFormatVersion);
  w.u8(static_cast<std::uint8_t>(mode));
}

inline Mode read_preamble(ByteReader& r) {
  for (char c : kMagic) {
    if (r.u8() != static_cast<std::uint8_t>(c)) fail(ErrorCode::kMalformedHeader, "bad magic");
  }
  if (r.u8() != kFormatVersion) fail(ErrorCode::kMalformedHeader, "unsupported format version");
  const std::uint8_t mode = r.u8();
  if (!is_known_mode(mode)) fail(ErrorCode::kMalformedHeader, "unknown mode byte");
  return static_cast<Mode>(mode);
}

// Alphabet block: u32 size, u8 table kind (0 named, 1 indexed), then for a
// named table each symbol as u16 length + bytes.
inline void write_alphabet(ByteWriter& w, const Alphabet& a) {
  w.u32(static_cast<std::uint32_t>(a.size()));
  w.u8(a.is_indexed() ? 1 : 0);
  if (a.is_indexed()) return;
  for (const std::string& s : a.symbols()) {
    if (s.size() > 0xffff) fail(ErrorCode::kInvalidArgument, "symbol name too long");
    w.u16(static_cast<std::uint16_t>(s.size()));
    w.text(s);
  }
}

inline Alphabet read_alphabet(ByteReader& r) {
  const std::uint32_t size = r.u32();
  if (size == 0) fail(ErrorCode::kMalformedHeader, "alphabet size 0");
  const std::uint8_t kind = r.u8();
  if (kind == 1) return Alphabet::indexed(size);
  if (kind != 0) fail(ErrorCode::kMalformedHeader, "unknown alphabet table kind");
  // Every entry needs at least its length field.
  if (r.remaining() / 2 < size) fail(ErrorCode::kMalformedHeader, "alphabet table truncated");
  std::vector<std::string> names;
  names.reserve(size);
  for (std::uint32_t i = 0; i < size; ++i) names.push_back(r.text(r.u16()));
  try {
    return Alphabet(std::move(names));
  } catch (const Error& e) {
    fail(ErrorCode::kMalformedHeader, e.what());
  }
}

}  // namespace detail

// A single coded description (LZ or COND mode).
//
// Wire layout: magic "SRLZ", version, mode, u64 n, alphabet block, u64 phrase
// count, u8 incomplete-last flag, [COND: u64 side-information checksum],
// payload bits zero-padded to a byte, [COND: u64 dictionary hash trailer].
// All integers are big-endian.
struct Bitstream {
  Mode mode = Mode::kLz;
  std::uint64_t n = 0;
  Alphabet alphabet;
  std::uint64_t phrase_count = 0;
  bool last_incomplete = false;
  std::uint64_t side_checksum = 0;
  std::uint64_t dictionary_hash = 0;
  std::vector<std::uint8_t> payload;
  // Exact for freshly encoded streams. After deserialize() this is the padded
  // size (8 * payload bytes); decoders report the exact count they consume.
  std::uint64_t payload_bits = 0;

  std::vector<std::uint8_t> serialize() const {
    if (mode != Mode::kLz && mode != Mode::kCond) {
      fail(ErrorCode::kModeMismatch, "Bitstream holds only LZ or COND descriptions");
    }
    ByteWriter w;
    detail::write_preamble(w, mode);
    w.u64(n);
    detail::write_alphabet(w, alphabet);
    w.u64(phrase_count);
    w.u8(last_incomplete ? 1 : 0);
    if (mode == Mode::kCond) w.u64(side_checksum);
    w.bytes(std::span(payload).first(static_cast<std::size_t>((payload_bits + 7) / 8)));
    if (mode == Mode::kCond) w.u64(dictionary_hash);
    return w.take();
  }

  static Bitstream deserialize(std::span<const std::uint8_t> bytes) {
    ByteReader r(bytes);
    Bitstream bs;
    bs.mode = detail::read_preamble(r);
    if (bs.mode != Mode::kLz && bs.mode != Mode::kCond) {
      fail(ErrorCode::kModeMismatch, "expected an LZ or COND stream, found " + mode_name(bs.mode));
    }
    bs.n = r.u64();
    bs.alphabet = detail::read_alphabet(r);
    bs.phrase_count = r.u64();
    const std::uint8_t flag = r.u8();
    if (flag > 1) fail(ErrorCode::kMalformedHeader, "incomplete-last flag must be 0 or 1");
    bs.last_incomplete = flag == 1;
    if (bs.phrase_count > bs.n) fail(ErrorCode::kMalformedHeader, "more phrases than symbols");
    if ((bs.n == 0) != (bs.phrase_count == 0)) fail(ErrorCode::kMalformedHeader, "phrase count inconsistent with n");
    if (bs.n == 0 && bs.last_incomplete) fail(ErrorCode::kMalformedHeader, "empty stream flagged incomplete");
    if (bs.mode == Mode::kCond) {
      bs.side_checksum = r.u64();
      if (r.remaining() < 8) fail(ErrorCode::kTruncated, "missing dictionary trailer");
      auto body = r.bytes(r.remaining() - 8);
      bs.payload.assign(body.begin(), body.end());
      bs.dictionary_hash = r.u64();
    } else {
      auto body = r.rest();
      bs.payload.assign(body.begin(), body.end());
    }
    bs.payload_bits = bs.payload.size() * 8ULL;
    return bs;
  }
};

}  // namespace srlz

#endif  // SRLZ_BITSTREAM_HPP_
