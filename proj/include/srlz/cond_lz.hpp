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

#ifndef SRLZ_COND_LZ_HPP_
#define SRLZ_COND_LZ_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "srlz/bitio.hpp"
#include "srlz/bitstream.hpp"
#include "srlz/error.hpp"
#include "srlz/lz.hpp"
#include "srlz/sequence.hpp"

namespace srlz {

struct JointParseResult {
  std::vector<Phrase> phrases;
  std::size_t joint_count = 0;
  // Distinct primary components among the joint phrases.
  std::size_t distinct_primary = 0;
  // Occurrences of each distinct primary phrase, in order of first appearance.
  std::vector<std::size_t> occurrence_counts;
  bool is_last_incomplete = false;
  double rho_cond = 0.0;
  double rho_joint = 0.0;
};

// Joint incremental parse of (primary_i, secondary_i) pairs.
inline JointParseResult joint_parse(std::span<const Symbol> primary, std::size_t primary_size,
                                    std::span<const Symbol> secondary, std::size_t secondary_size) {
  require_same_length(primary.size(), secondary.size(), "joint_parse");
  const std::size_t n = primary.size();
  const std::uint64_t pair_radix = secondary_size;
  if (static_cast<std::uint64_t>(primary_size) * pair_radix > (std::uint64_t{1} << 32)) {
    fail(ErrorCode::kInvalidArgument, "pair alphabet too large");
  }
  std::vector<Symbol> pairs(n);
  for (std::size_t i = 0; i < n; ++i) pairs[i] = static_cast<Symbol>(primary[i] * pair_radix + secondary[i]);
  const ParseResult p = parse(pairs, primary_size * secondary_size);

  JointParseResult r;
  r.phrases = p.phrases;
  r.joint_count = p.phrase_count;
  r.is_last_incomplete = p.is_last_incomplete;
  r.rho_joint = p.rho_lz;

  // Primary-projection class of every dictionary node (0 = root), via the
  // projection trie: class(child) = proj_child(class(parent), primary symbol).
  detail::PhraseTrie proj(n / 2 + 1);
  std::uint32_t next_class = 1;
  std::vector<std::uint32_t> class_of(1, 0);
  std::vector<std::size_t> slot_of_class(1, 0);  // class id -> index in occurrence_counts (+1)
  auto count_class = [&](std::uint32_t cls) {
    if (slot_of_class[cls] == 0) {
      r.occurrence_counts.push_back(0);
      slot_of_class[cls] = r.occurrence_counts.size();
    }
    ++r.occurrence_counts[slot_of_class[cls] - 1];
  };
  for (std::size_t j = 0; j < p.innovation.size(); ++j) {
    const std::uint32_t parent_class = class_of[p.parent[j]];
    const Symbol a = static_cast<Symbol>(p.innovation[j] / pair_radix);
    std::uint32_t cls = proj.child(parent_class, a);
    if (cls == 0) {
      cls = next_class++;
      proj.add(parent_class, a, cls);
      slot_of_class.push_back(0);
    }
    class_of.push_back(cls);
    count_class(cls);
  }
  if (p.is_last_incomplete) count_class(class_of[p.parent.back()]);

  r.distinct_primary = r.occurrence_counts.size();
  double sum = 0.0;
  for (std::size_t cl : r.occurrence_counts) sum += clogc(static_cast<double>(cl));
  r.rho_cond = n == 0 ? 0.0 : sum / static_cast<double>(n);
  return r;
}

inline JointParseResult joint_parse(const Sequence& primary, const Sequence& secondary) {
  return joint_parse(primary.data(), primary.alphabet().size(), secondary.data(), secondary.alphabet().size());
}

// Conditional LZ complexity of `secondary` given `primary`.
inline double rho_cond(const Sequence& secondary, const Sequence& primary) {
  return joint_parse(primary, secondary).rho_cond;
}

// Conditioning on several sequences packs them (left to right) into one.
inline double rho_cond(const Sequence& secondary, std::span<const Sequence> conditioning) {
  return rho_cond(secondary, pack(conditioning));
}

inline double rho_joint(const Sequence& a, const Sequence& b) { return joint_parse(a, b).rho_joint; }

namespace detail {

// Dictionary shared (bit-for-bit) by the conditional encoder and decoder.
//
// Joint phrases form a trie over (primary, secondary) pairs. Phrases with the
// same primary component form a class; a phrase is identified by its index
// inside its class. The primary projection of the trie is itself a trie, so
// the decoder, which holds the primary sequence, can walk it to bound the
// length of the next phrase.
class CondDictionary {
 public:
  CondDictionary(std::size_t primary_size, std::size_t secondary_size, std::size_t n)
      : beta_(primary_size), gamma_(secondary_size), joint_(n / 2 + 1), proj_(n / 2 + 1) {
    nodes_.push_back({0, 0, 0, 0, 0, 0});
    classes_.push_back({0});
  }

  struct Node {
    std::uint32_t parent;
    Symbol a, b;
    std::uint32_t cls;
    std::uint32_t index_in_class;
    std::uint64_t first_pos;  // where this phrase was first coded
  };

  std::uint32_t joint_child(std::uint32_t node, Symbol a, Symbol b) const {
    return joint_.child(node, pair(a, b));
  }

  std::uint32_t proj_child(std::uint32_t cls, Symbol a) const { return proj_.child(cls, a); }

  // Depth of the longest prefix of `primary` that is a class (primary phrase).
  std::size_t deepest_class_match(std::span<const Symbol> primary) const {
    std::uint32_t cls = 0;
    std::size_t t = 0;
    while (t < primary.size()) {
      std::uint32_t next = proj_.child(cls, primary[t]);
      if (next == 0) break;
      cls = next;
      ++t;
    }
    return t;
  }

  const Node& node(std::uint32_t id) const { return nodes_[id]; }
  const std::vector<std::uint32_t>& members(std::uint32_t cls) const { return classes_[cls]; }

  // Secondary symbols b with (a, b) already a child of `node`, ascending.
  const std::vector<Symbol>& taken(std::uint32_t node, Symbol a) const {
    static const std::vector<Symbol> kNone;
    auto it = taken_.find(static_cast<std::uint64_t>(node) * beta_ + a);
    return it == taken_.end() ? kNone : it->second;
  }

  void add(std::uint32_t parent, Symbol a, Symbol b, std::uint64_t first_pos) {
    const auto id = static_cast<std::uint32_t>(nodes_.size());
    const std::uint32_t parent_cls = nodes_[parent].cls;
    std::uint32_t cls = proj_.child(parent_cls, a);
    if (cls == 0) {
      cls = static_cast<std::uint32_t>(classes_.size());
      classes_.emplace_back();
      proj_.add(parent_cls, a, cls);
    }
    nodes_.push_back({parent, a, b, cls, static_cast<std::uint32_t>(classes_[cls].size()), first_pos});
    classes_[cls].push_back(id);
    joint_.add(parent, pair(a, b), id);
    auto& t = taken_[static_cast<std::uint64_t>(parent) * beta_ + a];
    t.insert(std::upper_bound(t.begin(), t.end(), b), b);
    hash_.add_u32(parent);
    hash_.add_u32(a);
    hash_.add_u32(b);
  }

  std::uint64_t hash() const { return hash_.value(); }
  std::size_t gamma() const { return gamma_; }

 private:
  Symbol pair(Symbol a, Symbol b) const { return static_cast<Symbol>(a * gamma_ + b); }

  std::size_t beta_, gamma_;
  PhraseTrie joint_, proj_;
  std::vector<Node> nodes_;
  std::vector<std::vector<std::uint32_t>> classes_;
  std::unordered_map<std::uint64_t, std::vector<Symbol>> taken_;
  Fnv1a hash_;
};

}  // namespace detail

// Conditional LZ encoder; the decoder must hold `primary` exactly.
//
// Phrases follow the joint incremental parse. A complete phrase of length d
// whose prefix is dictionary node P, followed by the new pair (a, b), is coded
// as
//   d - 1           in ceil(log2 D) bits, D = min(t + 1, remaining) where t is
//                   the depth of the longest primary-phrase match at this
//                   position (known to the decoder),
//   index of P      within its primary class, ceil(log2 |class|) bits,
//   rank of b       among the secondary symbols not yet paired with a under P,
//                   ceil(log2 (gamma - m)) bits.
// An incomplete final phrase spans the rest of the input and is coded by its
// index within its class only.
inline Bitstream cond_encode(const Sequence& secondary, const Sequence& primary) {
  require_same_length(primary.size(), secondary.size(), "cond_encode");
  const std::size_t n = primary.size();
  const std::size_t beta = primary.alphabet().size();
  const std::size_t gamma = secondary.alphabet().size();
  if (static_cast<std::uint64_t>(beta) * gamma > (std::uint64_t{1} << 32)) {
    fail(ErrorCode::kInvalidArgument, "pair alphabet too large");
  }
  const auto x = primary.data();
  const auto y = secondary.data();
  detail::CondDictionary dict(beta, gamma, n);
  BitWriter w;
  std::uint64_t phrases = 0;
  bool incomplete = false;
  std::size_t pos = 0;
  while (pos < n) {
    const std::size_t remaining = n - pos;
    std::uint32_t node = 0;
    std::size_t d = 0;
    while (d < remaining) {
      std::uint32_t next = dict.joint_child(node, x[pos + d], y[pos + d]);
      if (next == 0) break;
      node = next;
      ++d;
    }
    ++phrases;
    const auto& nd = dict.node(node);
    const std::size_t class_size = dict.members(nd.cls).size();
    if (d == remaining) {
      w.write(nd.index_in_class, ceil_log2(class_size));
      incomplete = true;
      break;
    }
    const std::size_t t = dict.deepest_class_match(x.subspan(pos, remaining));
    const std::size_t limit = std::min(t + 1, remaining);
    w.write(d, ceil_log2(limit));
    w.write(nd.index_in_class, ceil_log2(class_size));
    const Symbol a = x[pos + d];
    const Symbol b = y[pos + d];
    const auto& taken = dict.taken(node, a);
    const auto below = static_cast<Symbol>(std::lower_bound(taken.begin(), taken.end(), b) - taken.begin());
    w.write(b - below, ceil_log2(gamma - taken.size()));
    dict.add(node, a, b, pos);
    pos += d + 1;
  }
  Bitstream bs;
  bs.mode = Mode::kCond;
  bs.n = n;
  bs.alphabet = secondary.alphabet();
  bs.phrase_count = phrases;
  bs.last_incomplete = incomplete;
  bs.side_checksum = checksum(primary);
  bs.dictionary_hash = dict.hash();
  bs.payload_bits = w.bit_count();
  bs.payload = w.take();
  return bs;
}

inline Bitstream cond_encode(const Sequence& secondary, std::span<const Sequence> conditioning) {
  return cond_encode(secondary, pack(conditioning));
}

struct CondDecodeResult {
  Sequence sequence;
  std::uint64_t payload_bits = 0;
};

inline CondDecodeResult cond_decode_detailed(const Bitstream& bs, const Sequence& primary) {
  if (bs.mode != Mode::kCond) fail(ErrorCode::kModeMismatch, "expected COND stream, found " + mode_name(bs.mode));
  if (bs.n != primary.size() || bs.side_checksum != checksum(primary)) {
    fail(ErrorCode::kChecksumMismatch, "side information does not match the encoder's primary sequence");
  }
  if (bs.phrase_count > bs.n) fail(ErrorCode::kMalformedHeader, "more phrases than symbols");
  const std::size_t n = primary.size();
  const std::size_t beta = primary.alphabet().size();
  const std::size_t gamma = bs.alphabet.size();
  if (static_cast<std::uint64_t>(beta) * gamma > (std::uint64_t{1} << 32)) {
    fail(ErrorCode::kMalformedHeader, "pair alphabet too large");
  }
  const auto x = primary.data();
  detail::CondDictionary dict(beta, gamma, n);
  BitReader reader(bs.payload, bs.payload_bits);
  std::vector<Symbol> y;
  y.reserve(n);
  for (std::uint64_t j = 1; j <= bs.phrase_count; ++j) {
    const std::size_t pos = y.size();
    if (pos >= n) fail(ErrorCode::kMalformedPayload, "phrases extend past n");
    const std::size_t remaining = n - pos;
    const std::size_t t = dict.deepest_class_match(x.subspan(pos, remaining));
    const bool incomplete = bs.last_incomplete && j == bs.phrase_count;
    std::size_t d = remaining;
    if (!incomplete) {
      const std::size_t limit = std::min(t + 1, remaining);
      d = static_cast<std::size_t>(reader.read(ceil_log2(limit)));
      if (d >= limit) fail(ErrorCode::kPointerOutOfRange, "phrase length beyond primary match");
    } else if (t < remaining) {
      fail(ErrorCode::kMalformedPayload, "incomplete phrase is not a known primary phrase");
    }
    // Class of the primary component x[pos, pos + d).
    std::uint32_t cls = 0;
    for (std::size_t k = 0; k < d; ++k) cls = dict.proj_child(cls, x[pos + k]);
    if (incomplete && cls == 0) fail(ErrorCode::kMalformedPayload, "incomplete phrase is empty");
    const auto& members = dict.members(cls);
    const std::uint64_t index = reader.read(ceil_log2(members.size()));
    if (index >= members.size()) fail(ErrorCode::kPointerOutOfRange, "class index beyond class size");
    const std::uint32_t node = members[index];
    const auto src = dict.node(node).first_pos;
    for (std::size_t k = 0; k < d; ++k) y.push_back(y[src + k]);
    if (incomplete) break;
    const Symbol a = x[pos + d];
    const auto& taken = dict.taken(node, a);
    if (taken.size() >= gamma) fail(ErrorCode::kMalformedPayload, "no free secondary symbol");
    auto rank = static_cast<Symbol>(reader.read(ceil_log2(gamma - taken.size())));
    if (rank >= gamma - taken.size()) fail(ErrorCode::kMalformedPayload, "innovation rank out of range");
    // Map the rank back to a symbol, skipping those already taken.
    Symbol b = rank;
    for (Symbol s : taken) {
      if (s <= b) ++b;
    }
    y.push_back(b);
    dict.add(node, a, b, pos);
  }
  if (y.size() != n) fail(ErrorCode::kMalformedPayload, "decoded length differs from header n");
  reader.expect_padding_only();
  if (dict.hash() != bs.dictionary_hash) {
    fail(ErrorCode::kDictionaryMismatch, "decoder dictionary diverged from encoder");
  }
  return {Sequence(bs.alphabet, std::move(y)), reader.position()};
}

inline Sequence cond_decode(const Bitstream& bs, const Sequence& primary) {
  return cond_decode_detailed(bs, primary).sequence;
}

inline Sequence cond_decode(const Bitstream& bs, std::span<const Sequence> conditioning) {
  return cond_decode(bs, pack(conditioning));
}

}  // namespace srlz

#endif  // SRLZ_COND_LZ_HPP_
