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

#ifndef SRLZ_LZ_HPP_
#define SRLZ_LZ_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "srlz/bitio.hpp"
#include "srlz/bitstream.hpp"
#include "srlz/error.hpp"
#include "srlz/sequence.hpp"

namespace srlz {

// c * log2(c), with the 0 log 0 = 0 convention.
inline double clogc(double c) { return c > 0 ? c * std::log2(c) : 0.0; }

// Normalized LZ complexity from a phrase count: c log2 c / n, zero for n = 0
// or c <= 1.
inline double normalized_complexity(std::uint64_t c, std::uint64_t n) {
  if (n == 0 || c <= 1) return 0.0;
  return clogc(static_cast<double>(c)) / static_cast<double>(n);
}

struct Phrase {
  std::size_t start = 0;
  std::size_t length = 0;
  friend bool operator==(const Phrase&, const Phrase&) = default;
};

struct ParseResult {
  std::vector<Phrase> phrases;
  std::size_t phrase_count = 0;
  bool is_last_incomplete = false;
  double rho_lz = 0.0;
  // (c + 1) log2(2 beta (c + 1)), the classical LZ78 code-length bound.
  double code_len_bound = 0.0;
  // Dictionary structure: phrase j (1-based) extends phrase parent[j-1]
  // (0 = empty root) by innovation[j-1]. An incomplete last phrase is an exact
  // copy of phrase parent[c-1] and has no innovation symbol.
  std::vector<std::uint32_t> parent;
  std::vector<Symbol> innovation;
};

namespace detail {

// Incremental-parsing trie keyed by (node, symbol).
class PhraseTrie {
 public:
  explicit PhraseTrie(std::size_t expected = 0) { children_.reserve(expected); }

  // Returns the child or 0 when absent (node 0 is the root and never a child).
  std::uint32_t child(std::uint32_t node, Symbol s) const {
    auto it = children_.find(key(node, s));
    return it == children_.end() ? 0 : it->second;
  }

  void add(std::uint32_t node, Symbol s, std::uint32_t child) { children_.emplace(key(node, s), child); }

 private:
  static std::uint64_t key(std::uint32_t node, Symbol s) {
    return (static_cast<std::uint64_t>(node) << 32) | s;
  }
  std::unordered_map<std::uint64_t, std::uint32_t> children_;
};

}  // namespace detail

// LZ78 incremental parse of raw symbol codes. Each new phrase is the shortest
// string not yet seen as a phrase; a trailing repeat is kept as an incomplete
// final phrase and counted.
inline ParseResult parse(std::span<const Symbol> data, std::size_t alphabet_size) {
  ParseResult r;
  const std::size_t n = data.size();
  detail::PhraseTrie trie(n / 2 + 1);
  std::uint32_t next_id = 1;
  std::size_t pos = 0;
  while (pos < n) {
    std::uint32_t node = 0;
    std::size_t len = 0;
    while (pos + len < n) {
      std::uint32_t c = trie.child(node, data[pos + len]);
      if (c == 0) break;
      node = c;
      ++len;
    }
    if (pos + len == n) {
      // Ran off the end inside the dictionary: incomplete repeat of `node`.
      r.phrases.push_back({pos, len});
      r.parent.push_back(node);
      r.is_last_incomplete = true;
      break;
    }
    trie.add(node, data[pos + len], next_id++);
    r.phrases.push_back({pos, len + 1});
    r.parent.push_back(node);
    r.innovation.push_back(data[pos + len]);
    pos += len + 1;
  }
  r.phrase_count = r.phrases.size();
  r.rho_lz = normalized_complexity(r.phrase_count, n);
  const double c1 = static_cast<double>(r.phrase_count) + 1.0;
  r.code_len_bound = c1 * std::log2(2.0 * static_cast<double>(alphabet_size) * c1);
  return r;
}

inline ParseResult parse(const Sequence& seq) { return parse(seq.data(), seq.alphabet().size()); }

inline double rho_lz(std::span<const Symbol> data) {
  // The alphabet size only feeds code_len_bound.
  return parse(data, 1).rho_lz;
}

inline double rho_lz(const Sequence& seq) { return parse(seq).rho_lz; }

// LZ78 encoder. Phrase j (1-based) is written as a pointer to one of the j-1
// earlier phrases or the root in ceil(log2 j) bits, followed by its innovation
// symbol in ceil(log2 beta) bits. An incomplete final phrase is pointer-only.
inline Bitstream lz_encode(const Sequence& seq) {
  const ParseResult p = parse(seq);
  const unsigned symbol_bits = ceil_log2(seq.alphabet().size());
  BitWriter w;
  for (std::size_t j = 1; j <= p.phrase_count; ++j) {
    w.write(p.parent[j - 1], ceil_log2(j));
    if (j <= p.innovation.size()) w.write(p.innovation[j - 1], symbol_bits);
  }
  Bitstream bs;
  bs.mode = Mode::kLz;
  bs.n = seq.size();
  bs.alphabet = seq.alphabet();
  bs.phrase_count = p.phrase_count;
  bs.last_incomplete = p.is_last_incomplete;
  bs.payload_bits = w.bit_count();
  bs.payload = w.take();
  return bs;
}

struct LzDecodeResult {
  Sequence sequence;
  std::uint64_t payload_bits = 0;
};

inline LzDecodeResult lz_decode_detailed(const Bitstream& bs) {
  if (bs.mode != Mode::kLz) fail(ErrorCode::kModeMismatch, "expected LZ stream, found " + mode_name(bs.mode));
  if (bs.phrase_count > bs.n) fail(ErrorCode::kMalformedHeader, "more phrases than symbols");
  const std::size_t beta = bs.alphabet.size();
  const unsigned symbol_bits = ceil_log2(beta);
  const std::uint64_t c = bs.phrase_count;
  BitReader reader(bs.payload, bs.payload_bits);

  // Per phrase: source position of its first occurrence and its length.
  std::vector<std::uint64_t> start(1, 0), length(1, 0);
  std::vector<Symbol> out;
  out.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(bs.n, 1u << 24)));
  for (std::uint64_t j = 1; j <= c; ++j) {
    const std::uint64_t ptr = reader.read(ceil_log2(j));
    if (ptr >= j) fail(ErrorCode::kPointerOutOfRange, "phrase pointer beyond dictionary");
    const bool incomplete = bs.last_incomplete && j == c;
    if (incomplete && ptr == 0) fail(ErrorCode::kPointerOutOfRange, "incomplete phrase points at the root");
    const std::uint64_t copy_len = length[ptr];
    if (out.size() + copy_len + (incomplete ? 0 : 1) > bs.n) {
      fail(ErrorCode::kMalformedPayload, "decoded length exceeds header n");
    }
    const std::uint64_t from = start[ptr];
    const std::uint64_t here = out.size();
    for (std::uint64_t k = 0; k < copy_len; ++k) out.push_back(out[from + k]);
    if (!incomplete) {
      const std::uint64_t s = reader.read(symbol_bits);
      if (s >= beta) fail(ErrorCode::kMalformedPayload, "innovation symbol outside alphabet");
      out.push_back(static_cast<Symbol>(s));
      start.push_back(here);
      length.push_back(copy_len + 1);
    }
  }
  if (out.size() != bs.n) fail(ErrorCode::kMalformedPayload, "decoded length differs from header n");
  reader.expect_padding_only();
  return {Sequence(bs.alphabet, std::move(out)), reader.position()};
}

inline Sequence lz_decode(const Bitstream& bs) { return lz_decode_detailed(bs).sequence; }

}  // namespace srlz

#endif  // SRLZ_LZ_HPP_
