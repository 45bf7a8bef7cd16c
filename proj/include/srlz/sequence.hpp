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

#ifndef SRLZ_SEQUENCE_HPP_
#define SRLZ_SEQUENCE_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "srlz/error.hpp"

namespace srlz {

using Symbol = std::uint32_t;

// An ordered set of distinct symbol identifiers. The position of a symbol is
// its canonical integer code. Copies share the immutable symbol table.
//
// Two representations exist: a named table (explicit strings) and an indexed
// alphabet of a given size whose names are the decimal codes. The latter keeps
// product alphabets of packed tuples cheap to build.
class Alphabet {
 public:
  Alphabet() : Alphabet(indexed(1)) {}

  explicit Alphabet(std::vector<std::string> symbols) {
    if (symbols.empty()) fail(ErrorCode::kInvalidArgument, "alphabet must be nonempty");
    auto table = std::make_shared<Table>();
    table->size = symbols.size();
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      if (!table->index.emplace(symbols[i], static_cast<Symbol>(i)).second) {
        fail(ErrorCode::kInvalidArgument, "duplicate alphabet symbol '" + symbols[i] + "'");
      }
    }
    table->names = std::move(symbols);
    table_ = std::move(table);
  }

  static Alphabet indexed(std::size_t size) {
    if (size == 0) fail(ErrorCode::kInvalidArgument, "alphabet must be nonempty");
    if (size > (std::size_t{1} << 32)) fail(ErrorCode::kInvalidArgument, "alphabet too large");
    Alphabet a(Private{});
    auto table = std::make_shared<Table>();
    table->size = size;
    a.table_ = std::move(table);
    return a;
  }

  // One symbol per character of `chars`, in order.
  static Alphabet from_chars(std::string_view chars) {
    std::vector<std::string> names;
    names.reserve(chars.size());
    for (char c : chars) names.emplace_back(1, c);
    return Alphabet(std::move(names));
  }

  std::size_t size() const { return table_->size; }
  bool is_indexed() const { return table_->names.empty(); }

  std::string symbol(Symbol s) const {
    if (s >= size()) fail(ErrorCode::kInvalidArgument, "symbol index out of range");
    if (is_indexed()) return std::to_string(s);
    return table_->names[s];
  }

  std::optional<Symbol> index_of(std::string_view name) const {
    if (is_indexed()) {
      Symbol value = 0;
      if (name.empty() || name.size() > 10) return std::nullopt;
      for (char c : name) {
        if (c < '0' || c > '9') return std::nullopt;
        value = value * 10 + static_cast<Symbol>(c - '0');
      }
      if (name.size() > 1 && name.front() == '0') return std::nullopt;
      if (value >= size()) return std::nullopt;
      return value;
    }
    auto it = table_->index.find(std::string(name));
    if (it == table_->index.end()) return std::nullopt;
    return it->second;
  }

  std::vector<std::string> symbols() const {
    if (!is_indexed()) return table_->names;
    std::vector<std::string> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(std::to_string(i));
    return out;
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    if (a.table_ == b.table_) return true;
    if (a.size() != b.size()) return false;
    if (a.is_indexed() && b.is_indexed()) return true;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a.symbol(static_cast<Symbol>(i)) != b.symbol(static_cast<Symbol>(i))) return false;
    }
    return true;
  }

 private:
  struct Private {};
  struct Table {
    std::size_t size = 0;
    std::vector<std::string> names;
    std::unordered_map<std::string, Symbol> index;
  };
  explicit Alphabet(Private) {}

  std::shared_ptr<const Table> table_;
};

// A finite string over an alphabet, stored as canonical symbol codes.
class Sequence {
 public:
  Sequence() = default;

  Sequence(Alphabet alphabet, std::vector<Symbol> data)
      : alphabet_(std::move(alphabet)), data_(std::move(data)) {
    for (Symbol s : data_) {
      if (s >= alphabet_.size()) fail(ErrorCode::kInvalidArgument, "symbol index exceeds alphabet size");
    }
  }

  // Each character of `text` must be a single-character symbol of `alphabet`.
  static Sequence from_string(std::string_view text, const Alphabet& alphabet) {
    std::vector<Symbol> data;
    data.reserve(text.size());
    for (char c : text) {
      auto s = alphabet.index_of(std::string_view(&c, 1));
      if (!s) fail(ErrorCode::kAlphabetMismatch, std::string("character '") + c + "' not in alphabet");
      data.push_back(*s);
    }
    return Sequence(alphabet, std::move(data));
  }

  // Alphabet is the distinct characters of `text` in ascending byte order.
  static Sequence from_string(std::string_view text) {
    bool seen[256] = {};
    for (unsigned char c : text) seen[c] = true;
    std::string chars;
    for (int c = 0; c < 256; ++c) {
      if (seen[c]) chars.push_back(static_cast<char>(c));
    }
    if (chars.empty()) chars = "a";
    return from_string(text, Alphabet::from_chars(chars));
  }

  const Alphabet& alphabet() const { return alphabet_; }
  std::span<const Symbol> data() const { return data_; }
  const std::vector<Symbol>& symbols() const { return data_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }
  Symbol operator[](std::size_t i) const { return data_[i]; }

  Sequence slice(std::size_t pos, std::size_t len) const {
    if (pos > size() || len > size() - pos) fail(ErrorCode::kInvalidArgument, "slice out of range");
    return Sequence(alphabet_, std::vector<Symbol>(data_.begin() + pos, data_.begin() + pos + len));
  }

  // Concatenated symbol names.
  std::string to_string() const {
    std::string out;
    for (Symbol s : data_) out += alphabet_.symbol(s);
    return out;
  }

  friend bool operator==(const Sequence& a, const Sequence& b) {
    return a.data_ == b.data_ && a.alphabet_ == b.alphabet_;
  }

 private:
  Alphabet alphabet_;
  std::vector<Symbol> data_;
};

inline void require_same_length(std::size_t a, std::size_t b, std::string_view what) {
  if (a != b) {
    fail(ErrorCode::kLengthMismatch, std::string(what) + ": lengths " + std::to_string(a) +
                                         " and " + std::to_string(b) + " differ");
  }
}

// Packs equal-length sequences into one sequence over the product alphabet.
// The first sequence is the most significant digit.
inline Sequence pack(std::span<const Sequence> parts) {
  if (parts.empty()) fail(ErrorCode::kInvalidArgument, "pack needs at least one sequence");
  std::size_t product = 1;
  for (const Sequence& p : parts) {
    require_same_length(parts.front().size(), p.size(), "pack");
    product *= p.alphabet().size();
    if (product > (std::size_t{1} << 32)) fail(ErrorCode::kInvalidArgument, "product alphabet too large");
  }
  if (parts.size() == 1) return parts.front();
  std::vector<Symbol> data(parts.front().size(), 0);
  for (const Sequence& p : parts) {
    const auto radix = static_cast<std::uint64_t>(p.alphabet().size());
    for (std::size_t i = 0; i < data.size(); ++i) {
      data[i] = static_cast<Symbol>(data[i] * radix + p[i]);
    }
  }
  return Sequence(Alphabet::indexed(product), std::move(data));
}

inline Sequence pack(const Sequence& a, const Sequence& b) {
  const Sequence parts[] = {a, b};
  return pack(parts);
}

// 64-bit FNV-1a.
class Fnv1a {
 public:
  void add_byte(std::uint8_t b) {
    hash_ ^= b;
    hash_ *= 0x100000001b3ULL;
  }
  void add_u32(std::uint32_t v) {
    for (int shift = 24; shift >= 0; shift -= 8) add_byte(static_cast<std::uint8_t>(v >> shift));
  }
  void add_bytes(std::span<const std::uint8_t> bytes) {
    for (auto b : bytes) add_byte(b);
  }
  std::uint64_t value() const { return hash_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

// Checksum of a sequence: alphabet size then every code, each as a
// big-endian u32.
inline std::uint64_t checksum(std::span<const Symbol> data, std::size_t alphabet_size) {
  Fnv1a h;
  h.add_u32(static_cast<std::uint32_t>(alphabet_size));
  for (Symbol s : data) h.add_u32(s);
  return h.value();
}

inline std::uint64_t checksum(const Sequence& seq) {
  return checksum(seq.data(), seq.alphabet().size());
}

}  // namespace srlz

#endif  // SRLZ_SEQUENCE_HPP_
