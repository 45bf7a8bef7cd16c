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

#ifndef SRLZ_SR_CODEC_HPP_
#define SRLZ_SR_CODEC_HPP_

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "srlz/bitstream.hpp"
#include "srlz/cond_lz.hpp"
#include "srlz/container.hpp"
#include "srlz/distortion.hpp"
#include "srlz/error.hpp"
#include "srlz/lz.hpp"
#include "srlz/sequence.hpp"

namespace srlz {

// Two-stage description: LZ78 of x^ then conditional LZ of x~ given x^.
// A decoder that holds only stage 1 has stage2 empty.
struct SrEncoded {
  std::optional<Bitstream> stage1;
  std::optional<Bitstream> stage2;
  std::uint64_t n = 0;

  double r1() const { return rate(stage1); }
  double r2() const { return rate(stage2); }

  Container to_container() const {
    Container c;
    c.mode = Mode::kSr;
    if (stage1) c.segments.push_back(stream_segment(SegmentRole::kStage1, *stage1));
    if (stage2) c.segments.push_back(stream_segment(SegmentRole::kStage2, *stage2));
    return c;
  }

  static SrEncoded from_container(const Container& c) {
    if (c.mode != Mode::kSr) fail(ErrorCode::kModeMismatch, "expected an SR container, found " + mode_name(c.mode));
    SrEncoded e;
    if (const Segment* s = c.find(SegmentRole::kStage1)) e.stage1 = segment_stream(*s);
    if (const Segment* s = c.find(SegmentRole::kStage2)) e.stage2 = segment_stream(*s);
    if (!e.stage1 && !e.stage2) fail(ErrorCode::kMalformedPayload, "SR container has no stages");
    if (e.stage1 && e.stage1->mode != Mode::kLz) fail(ErrorCode::kModeMismatch, "stage 1 must be an LZ stream");
    if (e.stage2 && e.stage2->mode != Mode::kCond) fail(ErrorCode::kModeMismatch, "stage 2 must be a COND stream");
    e.n = e.stage1 ? e.stage1->n : e.stage2->n;
    return e;
  }

 private:
  double rate(const std::optional<Bitstream>& s) const {
    return s && n ? static_cast<double>(s->payload_bits) / static_cast<double>(n) : 0.0;
  }
};

inline SrEncoded sr_encode(const Sequence& primary, const Sequence& secondary) {
  require_same_length(primary.size(), secondary.size(), "sr_encode");
  SrEncoded e;
  e.n = primary.size();
  e.stage1 = lz_encode(primary);
  e.stage2 = cond_encode(secondary, primary);
  return e;
}

inline Sequence sr_decode_stage1(const SrEncoded& e) {
  if (!e.stage1) fail(ErrorCode::kPrecondition, "stage 1 description missing");
  return lz_decode(*e.stage1);
}

inline std::pair<Sequence, Sequence> sr_decode_full(const SrEncoded& e) {
  if (!e.stage1) fail(ErrorCode::kPrecondition, "stage 2 needs the stage 1 description as side information");
  if (!e.stage2) fail(ErrorCode::kPrecondition, "stage 2 description missing");
  Sequence primary = lz_decode(*e.stage1);
  Sequence secondary = cond_decode(*e.stage2, primary);
  return {std::move(primary), std::move(secondary)};
}

// Selection criterion for (x^, x~) inside B(x). The value minimized is
//   (1 - w) rho_LZ(x^) + w (rho_LZ(x^) + rho_LZ(x~ | x^)),
// so min-R1 is w = 0 and min-sum is w = 1.
struct Objective {
  enum class Kind { kMinR1, kMinSum, kWeighted };
  Kind kind = Kind::kWeighted;
  double w = 0.5;

  static Objective min_r1() { return {Kind::kMinR1, 0.0}; }
  static Objective min_sum() { return {Kind::kMinSum, 1.0}; }
  static Objective weighted(double w) {
    if (!(w >= 0.0 && w <= 1.0)) fail(ErrorCode::kInvalidArgument, "objective weight must lie in [0, 1]");
    return {Kind::kWeighted, w};
  }

  // "min-r1", "min-sum" or "weighted:<w>".
  static Objective parse(std::string_view text) {
    if (text == "min-r1") return min_r1();
    if (text == "min-sum") return min_sum();
    if (text.rfind("weighted", 0) == 0) {
      if (text == "weighted") return weighted(0.5);
      if (text.size() > 9 && text[8] == ':') {
        const std::string v(text.substr(9));
        std::size_t used = 0;
        double w = 0.0;
        try {
          w = std::stod(v, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used == v.size() && used > 0) return weighted(w);
      }
    }
    fail(ErrorCode::kInvalidArgument, "unknown objective '" + std::string(text) + "'");
  }

  double weight() const { return kind == Kind::kMinR1 ? 0.0 : kind == Kind::kMinSum ? 1.0 : w; }
  double value(double rho_lz, double rho_cond) const { return rho_lz + weight() * rho_cond; }

  std::string name() const {
    switch (kind) {
      case Kind::kMinR1: return "min-r1";
      case Kind::kMinSum: return "min-sum";
      case Kind::kWeighted: {
        char buf[32];
        auto res = std::to_chars(buf, buf + sizeof buf, w);
        return "weighted:" + std::string(buf, res.ptr);
      }
    }
    return "?";
  }
};

struct Selection {
  Sequence primary;
  Sequence secondary;
  double rho_lz = 0.0;
  double rho_cond = 0.0;
  double objective = 0.0;
  bool exhaustive = false;
  std::uint64_t evaluated = 0;
};

// Best member of B(x) under the objective; ties keep the first candidate in
// enumeration order.
inline Selection select_reproductions(const Sequence& x, const DistortionSpec& spec, const Objective& objective = {},
                                      const SearchStrategy& strategy = {}) {
  std::optional<Selection> best;
  const SearchOutcome outcome = search_ball(x, spec, strategy, {objective.weight()}, [&](const Candidate& c) {
    const double v = objective.value(c.rho_lz, c.rho_cond);
    if (!best || v < best->objective) best = Selection{c.primary, c.secondary, c.rho_lz, c.rho_cond, v, false, 0};
  });
  if (!best) fail(ErrorCode::kInfeasible, "no candidate reproductions found");
  best->exhaustive = outcome.exhaustive;
  best->evaluated = outcome.evaluated;
  return *best;
}

}  // namespace srlz

#endif  // SRLZ_SR_CODEC_HPP_
