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

#ifndef SRLZ_MDC_HPP_
#define SRLZ_MDC_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "srlz/bitio.hpp"
#include "srlz/bounds.hpp"
#include "srlz/cond_lz.hpp"
#include "srlz/container.hpp"
#include "srlz/error.hpp"
#include "srlz/lz.hpp"
#include "srlz/regions.hpp"
#include "srlz/sequence.hpp"

namespace srlz {

enum class MdKind { kOuter, kEgcInner, kZbInner };

inline std::string md_kind_name(MdKind k) {
  switch (k) {
    case MdKind::kOuter: return "outer";
    case MdKind::kEgcInner: return "egc-inner";
    case MdKind::kZbInner: return "zb-inner";
  }
  return "?";
}

// {(R1, R2) : R1 >= a, R2 >= b, R1 + R2 >= c}, clamped at zero.
struct MdRegion {
  MdKind kind = MdKind::kOuter;
  double a = 0.0, b = 0.0, c = 0.0;
  double raw_a = 0.0, raw_b = 0.0, raw_c = 0.0;
  bool clamped_a = false, clamped_b = false, clamped_c = false;

  static MdRegion make(MdKind kind, double a, double b, double c) {
    MdRegion r;
    r.kind = kind;
    r.raw_a = a;
    r.raw_b = b;
    r.raw_c = c;
    r.a = std::max(0.0, a);
    r.b = std::max(0.0, b);
    r.c = std::max(0.0, c);
    r.clamped_a = a < 0.0;
    r.clamped_b = b < 0.0;
    r.clamped_c = c < 0.0;
    return r;
  }

  bool contains(RatePoint p) const { return p.r1 >= a && p.r2 >= b && p.r1 + p.r2 >= c; }
  HalfPlaneRegion as_half_plane() const { return HalfPlaneRegion::make(raw_a, raw_c, raw_b); }
};

// Outer bound for the triple: R1 >= rho(x^) - Delta1, R2 >= rho(x~) - Delta1,
// R1 + R2 >= rho(x_ | x^, x~) + rho(x^, x~) - Delta2, with the Delta2 of the
// two-stage converse evaluated at (beta, gamma).
inline MdRegion md_outer_region(const Sequence& primary, const Sequence& secondary, const Sequence& central,
                                const BoundConfig& cfg = {}) {
  const std::uint64_t n = primary.size();
  require_same_length(n, secondary.size(), "md_outer_region");
  require_same_length(n, central.size(), "md_outer_region");
  const std::size_t beta = primary.alphabet().size(), gamma = secondary.alphabet().size();
  const double e1 = eps_n(n, beta, cfg.eps), e2 = eps_n(n, gamma, cfg.eps);
  const Sequence pair[] = {primary, secondary};
  const double joint = rho_joint(primary, secondary);
  return MdRegion::make(MdKind::kOuter, rho_lz(primary) - delta1(cfg.q, n, beta, e1),
                        rho_lz(secondary) - delta1(cfg.q, n, gamma, e2),
                        rho_cond(central, pair) + joint - delta2(cfg.q, n, beta, gamma, e1).value);
}

struct EmpiricalMutualInfo {
  double value = 0.0;
  bool conditional = false;
};

// rho(x^) + rho(x~) - rho(x^, x~), or with u the same combination of
// u-conditional complexities. May be negative.
inline EmpiricalMutualInfo empirical_mi(const Sequence& primary, const Sequence& secondary,
                                        const std::optional<Sequence>& aux = std::nullopt) {
  require_same_length(primary.size(), secondary.size(), "empirical_mi");
  if (!aux) return {rho_lz(primary) + rho_lz(secondary) - rho_joint(primary, secondary), false};
  require_same_length(primary.size(), aux->size(), "empirical_mi");
  return {rho_cond(primary, *aux) + rho_cond(secondary, *aux) - rho_cond(pack(primary, secondary), *aux), true};
}

// Achievable EGC-type rates from the code slacks:
//   R1 >= rho(x^) + eps(n), R2 >= rho(x~) + eps(n),
//   R1 + R2 >= rho(x^) + rho(x~) + rho(x_ | x^, x~) + eps(n) + eps(n) + eps_hat(n).
inline MdRegion egc_inner_region(const Sequence& primary, const Sequence& secondary, const Sequence& central,
                                 const EpsSpec& eps = {}) {
  const std::uint64_t n = primary.size();
  require_same_length(n, secondary.size(), "egc_inner_region");
  require_same_length(n, central.size(), "egc_inner_region");
  const double s1 = eps_slack(n, primary.alphabet().size(), eps);
  const double s2 = eps_slack(n, secondary.alphabet().size(), eps);
  const Sequence pair[] = {primary, secondary};
  const double r1 = rho_lz(primary), r2 = rho_lz(secondary);
  return MdRegion::make(MdKind::kEgcInner, r1 + s1, r2 + s2, r1 + r2 + rho_cond(central, pair) + s1 + s2 + eps_hat(n));
}

// As egc_inner_region with every description also carrying u.
inline MdRegion zb_inner_region(const Sequence& primary, const Sequence& secondary, const Sequence& central,
                                const Sequence& aux, const EpsSpec& eps = {}) {
  const std::uint64_t n = primary.size();
  require_same_length(n, secondary.size(), "zb_inner_region");
  require_same_length(n, central.size(), "zb_inner_region");
  require_same_length(n, aux.size(), "zb_inner_region");
  const double su = eps_slack(n, aux.alphabet().size(), eps);
  const double eh = eps_hat(n);
  const double ru = rho_lz(aux);
  const double r1 = ru + rho_cond(primary, aux) + su + eh;
  const double r2 = ru + rho_cond(secondary, aux) + su + eh;
  const Sequence triple[] = {primary, secondary, aux};
  return MdRegion::make(MdKind::kZbInner, r1, r2, r1 + r2 + rho_cond(central, triple) + eh);
}

struct SplitAllocation {
  double d = 0.0;
  double r1 = 0.0;  // A + D
  double r2 = 0.0;  // B + C - D
};

// Splits a refinement stream of rate C between two descriptions that carry
// A and B: D = min(R1 - A, C). Needs R1 >= A, R2 >= B, R1 + R2 >= A + B + C
// up to kInequalityTolerance.
inline SplitAllocation split_rates(double a, double b, double c, double r1, double r2) {
  for (double v : {a, b, c, r1, r2}) {
    if (!std::isfinite(v)) fail(ErrorCode::kPrecondition, "split_rates needs finite rates");
  }
  if (c < 0.0) fail(ErrorCode::kPrecondition, "refinement rate must be >= 0");
  const double tol = kInequalityTolerance;
  if (r1 < a - tol || r2 < b - tol || r1 + r2 < a + b + c - tol) fail(ErrorCode::kPrecondition, "rate pair below A + B + C");
  const double d = std::clamp(r1 - a, 0.0, c);
  return {d, a + d, b + (c - d)};
}

// Per-letter coarse map x -> floor(x / group) for an auxiliary sequence.
inline Sequence coarse_auxiliary(const Sequence& x, std::size_t group = 2) {
  if (group == 0) fail(ErrorCode::kInvalidArgument, "group must be positive");
  std::vector<Symbol> u(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) u[i] = static_cast<Symbol>(x[i] / group);
  return Sequence(Alphabet::indexed((x.alphabet().size() + group - 1) / group), std::move(u));
}

// Bit accounting of an MD encoding; rates are bits per symbol.
struct MdRates {
  std::uint64_t n = 0;
  std::uint64_t bits_primary = 0;    // lz(x^) for EGC, cond(x^ | u) for ZB
  std::uint64_t bits_secondary = 0;  // lz(x~) for EGC, cond(x~ | u) for ZB
  std::uint64_t bits_aux = 0;        // lz(u), carried by both descriptions (ZB)
  std::uint64_t bits_refine = 0;     // cond(x_ | ...)
  std::uint64_t bits_share1 = 0;
  std::uint64_t bits_share2 = 0;

  std::uint64_t bits1() const { return bits_aux + bits_primary + bits_share1; }
  std::uint64_t bits2() const { return bits_aux + bits_secondary + bits_share2; }
  double r1() const { return n ? static_cast<double>(bits1()) / static_cast<double>(n) : 0.0; }
  double r2() const { return n ? static_cast<double>(bits2()) / static_cast<double>(n) : 0.0; }
};

struct MdEncoded {
  Container description1;
  Container description2;
  MdRates rates;
};

struct MdDecoded {
  Sequence primary, secondary, central;
  std::optional<Sequence> aux;
};

namespace detail {

// Splits the refinement stream: a header segment (the stream with its
// payload removed) and ceil(f * bytes) payload bytes go to description 1,
// the rest of the payload to description 2. Empty shares are omitted.
inline void split_refinement(const Bitstream& refine, double fraction, Container& d1, Container& d2, MdRates& rates) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) fail(ErrorCode::kInvalidArgument, "split fraction must lie in [0, 1]");
  Bitstream header = refine;
  header.payload.clear();
  header.payload_bits = 0;
  d1.segments.push_back({SegmentRole::kRefineHeader, 0, header.serialize()});

  const std::uint64_t bits = refine.payload_bits;
  const std::uint64_t bytes = (bits + 7) / 8;
  const auto first = static_cast<std::uint64_t>(std::ceil(fraction * static_cast<double>(bytes)));
  const std::uint64_t share1_bits = std::min(bits, 8 * first);
  rates.bits_refine = bits;
  rates.bits_share1 = share1_bits;
  rates.bits_share2 = bits - share1_bits;
  auto payload = std::span<const std::uint8_t>(refine.payload).first(static_cast<std::size_t>(bytes));
  if (share1_bits > 0) {
    auto b = payload.first(static_cast<std::size_t>(first));
    d1.segments.push_back({SegmentRole::kRefineShare, share1_bits, {b.begin(), b.end()}});
  }
  if (bits > share1_bits) {
    auto b = payload.subspan(static_cast<std::size_t>(first));
    d2.segments.push_back({SegmentRole::kRefineShare, bits - share1_bits, {b.begin(), b.end()}});
  }
}

inline Bitstream join_refinement(const Container& d1, const Container& d2) {
  Bitstream bs = Bitstream::deserialize(d1.require(SegmentRole::kRefineHeader).bytes);
  if (bs.mode != Mode::kCond) fail(ErrorCode::kModeMismatch, "refinement header must be a COND stream");
  BitWriter w;
  for (const Container* c : {&d1, &d2}) {
    if (const Segment* s = c->find(SegmentRole::kRefineShare)) {
      BitReader r(s->bytes, s->bit_length);
      for (std::uint64_t i = 0; i < s->bit_length; ++i) w.put(r.read(1) != 0);
    }
  }
  bs.payload_bits = w.bit_count();
  bs.payload = w.take();
  return bs;
}

inline void require_pair(const Container& d1, const Container& d2, Mode mode) {
  if (d1.mode != mode || d2.mode != mode) fail(ErrorCode::kModeMismatch, "descriptions belong to a different MD scheme");
  if (d1.description != 1 || d2.description != 2) fail(ErrorCode::kMalformedHeader, "expected descriptions 1 and 2");
}

inline Container md_container(Mode mode, std::uint8_t index) {
  Container c;
  c.mode = mode;
  c.description = index;
  return c;
}

}  // namespace detail

// EGC-type scheme: description i carries LZ78 of its reproduction, and the
// conditional stream of x_ given (x^, x~) is split between them with
// `fraction` of its payload bytes (rounded up) in description 1.
inline MdEncoded egc_encode(const Sequence& primary, const Sequence& secondary, const Sequence& central,
                            double fraction) {
  const std::uint64_t n = primary.size();
  require_same_length(n, secondary.size(), "egc_encode");
  require_same_length(n, central.size(), "egc_encode");
  MdEncoded out{detail::md_container(Mode::kMd1, 1), detail::md_container(Mode::kMd1, 2), {}};
  out.rates.n = n;
  const Bitstream l1 = lz_encode(primary), l2 = lz_encode(secondary);
  out.rates.bits_primary = l1.payload_bits;
  out.rates.bits_secondary = l2.payload_bits;
  out.description1.segments.push_back(stream_segment(SegmentRole::kLzHat, l1));
  out.description2.segments.push_back(stream_segment(SegmentRole::kLzTilde, l2));
  const Sequence pair[] = {primary, secondary};
  detail::split_refinement(cond_encode(central, pair), fraction, out.description1, out.description2, out.rates);
  return out;
}

// ZB-type scheme: both descriptions carry LZ78 of u; description 1 adds
// x^ given u, description 2 adds x~ given u, and the stream of x_ given
// (x^, x~, u) is split with share alpha in description 1.
inline MdEncoded zb_encode(const Sequence& primary, const Sequence& secondary, const Sequence& central,
                           const Sequence& aux, double alpha) {
  const std::uint64_t n = primary.size();
  require_same_length(n, secondary.size(), "zb_encode");
  require_same_length(n, central.size(), "zb_encode");
  require_same_length(n, aux.size(), "zb_encode");
  if (!(alpha >= 0.0 && alpha <= 1.0)) fail(ErrorCode::kInvalidArgument, "alpha must lie in [0, 1]");
  MdEncoded out{detail::md_container(Mode::kMd2, 1), detail::md_container(Mode::kMd2, 2), {}};
  out.rates.n = n;
  const Bitstream lu = lz_encode(aux);
  const Bitstream c1 = cond_encode(primary, aux), c2 = cond_encode(secondary, aux);
  out.rates.bits_aux = lu.payload_bits;
  out.rates.bits_primary = c1.payload_bits;
  out.rates.bits_secondary = c2.payload_bits;
  out.description1.segments.push_back(stream_segment(SegmentRole::kLzAux, lu));
  out.description1.segments.push_back(stream_segment(SegmentRole::kCondHatGivenAux, c1));
  out.description2.segments.push_back(stream_segment(SegmentRole::kLzAux, lu));
  out.description2.segments.push_back(stream_segment(SegmentRole::kCondTildeGivenAux, c2));
  const Sequence triple[] = {primary, secondary, aux};
  detail::split_refinement(cond_encode(central, triple), alpha, out.description1, out.description2, out.rates);
  return out;
}

// Side decoder i: reads description i only.
inline MdDecoded md_decode_side(const Container& d) {
  MdDecoded out;
  const bool first = d.description == 1;
  if (d.mode == Mode::kMd1) {
    Sequence s = lz_decode(segment_stream(d.require(first ? SegmentRole::kLzHat : SegmentRole::kLzTilde)));
    (first ? out.primary : out.secondary) = std::move(s);
  } else if (d.mode == Mode::kMd2) {
    Sequence u = lz_decode(segment_stream(d.require(SegmentRole::kLzAux)));
    const auto& seg = d.require(first ? SegmentRole::kCondHatGivenAux : SegmentRole::kCondTildeGivenAux);
    (first ? out.primary : out.secondary) = cond_decode(segment_stream(seg), u);
    out.aux = std::move(u);
  } else {
    fail(ErrorCode::kModeMismatch, "expected an MD description, found " + mode_name(d.mode));
  }
  return out;
}

// Central decoder: both descriptions.
inline MdDecoded md_decode_central(const Container& d1, const Container& d2) {
  detail::require_pair(d1, d2, d1.mode);
  MdDecoded one = md_decode_side(d1);
  MdDecoded two = md_decode_side(d2);
  MdDecoded out;
  out.primary = std::move(one.primary);
  out.secondary = std::move(two.secondary);
  const Bitstream refine = detail::join_refinement(d1, d2);
  if (d1.mode == Mode::kMd1) {
    const Sequence pair[] = {out.primary, out.secondary};
    out.central = cond_decode(refine, pair);
  } else {
    if (!(*one.aux == *two.aux)) fail(ErrorCode::kChecksumMismatch, "descriptions carry different auxiliary sequences");
    const Sequence triple[] = {out.primary, out.secondary, *one.aux};
    out.central = cond_decode(refine, triple);
    out.aux = std::move(one.aux);
  }
  return out;
}

}  // namespace srlz

#endif  // SRLZ_MDC_HPP_
