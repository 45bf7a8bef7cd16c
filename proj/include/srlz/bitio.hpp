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

#ifndef SRLZ_BITIO_HPP_
#define SRLZ_BITIO_HPP_

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "srlz/error.hpp"

namespace srlz {

// Smallest k with 2^k >= x; 0 for x <= 1.
constexpr unsigned ceil_log2(std::uint64_t x) {
  return x <= 1 ? 0u : static_cast<unsigned>(std::bit_width(x - 1));
}

// MSB-first bit packer.
class BitWriter {
 public:
  void write(std::uint64_t value, unsigned nbits) {
    for (unsigned i = nbits; i-- > 0;) put((value >> i) & 1u);
  }

  void put(bool bit) {
    if (bits_ % 8 == 0) bytes_.push_back(0);
    if (bit) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (bits_ % 8));
    ++bits_;
  }

  std::uint64_t bit_count() const { return bits_; }
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }
  std::vector<std::uint8_t> take() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
  std::uint64_t bits_ = 0;
};

class BitReader {
 public:
  BitReader(std::span<const std::uint8_t> bytes, std::uint64_t bit_limit)
      : bytes_(bytes), limit_(std::min<std::uint64_t>(bit_limit, bytes.size() * 8ULL)) {}

  explicit BitReader(std::span<const std::uint8_t> bytes)
      : BitReader(bytes, bytes.size() * 8ULL) {}

  std::uint64_t read(unsigned nbits) {
    if (nbits > 64) fail(ErrorCode::kMalformedPayload, "field wider than 64 bits");
    if (limit_ - pos_ < nbits) fail(ErrorCode::kTruncated, "payload ends mid-field");
    std::uint64_t v = 0;
    for (unsigned i = 0; i < nbits; ++i, ++pos_) {
      v = (v << 1) | ((bytes_[pos_ / 8] >> (7 - pos_ % 8)) & 1u);
    }
    return v;
  }

  std::uint64_t position() const { return pos_; }
  std::uint64_t limit() const { return limit_; }

  // Everything after the cursor must be zero padding inside the final byte.
  void expect_padding_only() const {
    if (limit_ - pos_ >= 8) fail(ErrorCode::kMalformedPayload, "trailing data after payload");
    for (std::uint64_t p = pos_; p < limit_; ++p) {
      if ((bytes_[p / 8] >> (7 - p % 8)) & 1u) fail(ErrorCode::kMalformedPayload, "nonzero padding bits");
    }
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::uint64_t limit_;
  std::uint64_t pos_ = 0;
};

// Big-endian byte-level helpers for container headers.
class ByteWriter {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) { put_be(v, 2); }
  void u32(std::uint32_t v) { put_be(v, 4); }
  void u64(std::uint64_t v) { put_be(v, 8); }
  void bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  void text(const std::string& s) { out_.insert(out_.end(), s.begin(), s.end()); }

  std::vector<std::uint8_t>& buffer() { return out_; }
  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  void put_be(std::uint64_t v, int width) {
    for (int i = width - 1; i >= 0; --i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  std::vector<std::uint8_t> out_;
};

class ByteReader {
 public:
  ByteReader(std::span<const std::uint8_t> in, ErrorCode short_read = ErrorCode::kTruncated)
      : in_(in), short_read_(short_read) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(get_be(1)); }
  std::uint16_t u16() { return static_cast<std::uint16_t>(get_be(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get_be(4)); }
  std::uint64_t u64() { return get_be(8); }

  std::span<const std::uint8_t> bytes(std::size_t n) {
    need(n);
    auto out = in_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  std::string text(std::size_t n) {
    auto b = bytes(n);
    return std::string(b.begin(), b.end());
  }

  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return in_.size() - pos_; }
  std::span<const std::uint8_t> rest() const { return in_.subspan(pos_); }

 private:
  void need(std::size_t n) const {
    if (in_.size() - pos_ < n) fail(short_read_, "stream ends inside header");
  }
  std::uint64_t get_be(int width) {
    need(static_cast<std::size_t>(width));
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) v = (v << 8) | in_[pos_++];
    return v;
  }

  std::span<const std::uint8_t> in_;
  ErrorCode short_read_;
  std::size_t pos_ = 0;
};

}  // namespace srlz

#endif  // SRLZ_BITIO_HPP_
