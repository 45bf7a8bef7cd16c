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

#ifndef SRLZ_CONTAINER_HPP_
#define SRLZ_CONTAINER_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "srlz/bitio.hpp"
#include "srlz/bitstream.hpp"
#include "srlz/error.hpp"

namespace srlz {

enum class SegmentRole : std::uint8_t {
  kStage1 = 1,
  kStage2 = 2,
  kLzHat = 3,
  kLzTilde = 4,
  kLzAux = 5,
  kCondHatGivenAux = 6,
  kCondTildeGivenAux = 7,
  kRefineHeader = 8,
  kRefineShare = 9,
};

inline std::string role_name(SegmentRole r) {
  switch (r) {
    case SegmentRole::kStage1: return "stage1";
    case SegmentRole::kStage2: return "stage2";
    case SegmentRole::kLzHat: return "lz_hat";
    case SegmentRole::kLzTilde: return "lz_tilde";
    case SegmentRole::kLzAux: return "lz_aux";
    case SegmentRole::kCondHatGivenAux: return "cond_hat_u";
    case SegmentRole::kCondTildeGivenAux: return "cond_tilde_u";
    case SegmentRole::kRefineHeader: return "refine_header";
    case SegmentRole::kRefineShare: return "refine_share";
  }
  return "?";
}

// bit_length counts payload bits: for an embedded Bitstream the exact payload
// size of that stream, for a refinement share the valid leading bits.
struct Segment {
  SegmentRole role = SegmentRole::kStage1;
  std::uint64_t bit_length = 0;
  std::vector<std::uint8_t> bytes;
};

// Multi-segment file for SR and MD descriptions.
//
// Layout: magic "SRLZ", version, mode (SR / MD1 / MD2), u8 description
// index (0 for SR, 1 or 2 for MD), u8 segment count, per segment u8 role,
// u64 bit length, u64 offset, u64 byte length, then the segment bytes.
// Offsets are relative to the end of the directory; segments are stored
// contiguously in directory order.
struct Container {
  Mode mode = Mode::kSr;
  std::uint8_t description = 0;
  std::vector<Segment> segments;

  std::uint64_t payload_bits() const {
    std::uint64_t total = 0;
    for (const auto& s : segments) total += s.bit_length;
    return total;
  }

  const Segment* find(SegmentRole role) const {
    for (const auto& s : segments) {
      if (s.role == role) return &s;
    }
    return nullptr;
  }

  const Segment& require(SegmentRole role) const {
    const Segment* s = find(role);
    if (!s) fail(ErrorCode::kMalformedPayload, "container lacks a " + role_name(role) + " segment");
    return *s;
  }

  std::vector<std::uint8_t> serialize() const {
    check_mode(mode, description);
    if (segments.size() > 255) fail(ErrorCode::kInvalidArgument, "too many segments");
    ByteWriter w;
    detail::write_preamble(w, mode);
    w.u8(description);
    w.u8(static_cast<std::uint8_t>(segments.size()));
    std::uint64_t offset = 0;
    for (const auto& s : segments) {
      if (s.bit_length > 8 * static_cast<std::uint64_t>(s.bytes.size())) {
        fail(ErrorCode::kInvalidArgument, "segment bit length exceeds its bytes");
      }
      w.u8(static_cast<std::uint8_t>(s.role));
      w.u64(s.bit_length);
      w.u64(offset);
      w.u64(s.bytes.size());
      offset += s.bytes.size();
    }
    for (const auto& s : segments) w.bytes(s.bytes);
    return w.take();
  }

  static Container deserialize(std::span<const std::uint8_t> bytes) {
    ByteReader r(bytes);
    Container c;
    c.mode = detail::read_preamble(r);
    if (c.mode != Mode::kSr && c.mode != Mode::kMd1 && c.mode != Mode::kMd2) {
      fail(ErrorCode::kModeMismatch, "expected an SR or MD container, found " + mode_name(c.mode));
    }
    c.description = r.u8();
    try {
      check_mode(c.mode, c.description);
    } catch (const Error& e) {
      fail(ErrorCode::kMalformedHeader, e.what());
    }
    const std::uint8_t count = r.u8();
    struct Entry {
      std::uint8_t role;
      std::uint64_t bits, offset, length;
    };
    std::vector<Entry> dir;
    std::uint64_t expected = 0;
    for (std::uint8_t i = 0; i < count; ++i) {
      Entry e{r.u8(), r.u64(), r.u64(), r.u64()};
      if (e.role < 1 || e.role > 9) fail(ErrorCode::kMalformedHeader, "unknown segment role");
      if (e.offset != expected) fail(ErrorCode::kMalformedHeader, "segments are not contiguous");
      if (e.length > (std::uint64_t{1} << 60) || e.bits > 8 * e.length) {
        fail(ErrorCode::kMalformedHeader, "segment bit length exceeds its bytes");
      }
      expected += e.length;
      dir.push_back(e);
    }
    if (r.remaining() < expected) fail(ErrorCode::kTruncated, "container ends inside a segment");
    if (r.remaining() > expected) fail(ErrorCode::kMalformedPayload, "trailing bytes after the last segment");
    for (const Entry& e : dir) {
      auto b = r.bytes(static_cast<std::size_t>(e.length));
      c.segments.push_back({static_cast<SegmentRole>(e.role), e.bits, {b.begin(), b.end()}});
    }
    return c;
  }

 private:
  static void check_mode(Mode mode, std::uint8_t description) {
    if (mode == Mode::kSr) {
      if (description != 0) fail(ErrorCode::kInvalidArgument, "SR containers use description index 0");
    } else if (mode == Mode::kMd1 || mode == Mode::kMd2) {
      if (description != 1 && description != 2) fail(ErrorCode::kInvalidArgument, "MD description index must be 1 or 2");
    } else {
      fail(ErrorCode::kModeMismatch, "containers hold SR or MD descriptions only");
    }
  }
};

// Mode byte of a serialized stream or container.
inline Mode peek_mode(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  return detail::read_preamble(r);
}

// Segment holding a whole Bitstream; bit_length is its payload size.
inline Segment stream_segment(SegmentRole role, const Bitstream& bs) {
  return {role, bs.payload_bits, bs.serialize()};
}

inline Bitstream segment_stream(const Segment& s) {
  Bitstream bs = Bitstream::deserialize(s.bytes);
  const std::uint64_t bytes = bs.payload.size();
  if (s.bit_length > 8 * bytes || (bytes > 0 && s.bit_length <= 8 * (bytes - 1))) {
    fail(ErrorCode::kMalformedHeader, "segment bit length disagrees with the embedded payload");
  }
  bs.payload_bits = s.bit_length;
  return bs;
}

}  // namespace srlz

#endif  // SRLZ_CONTAINER_HPP_
