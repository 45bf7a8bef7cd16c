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

#ifndef SRLZ_REGIONS_HPP_
#define SRLZ_REGIONS_HPP_

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "srlz/bounds.hpp"
#include "srlz/cond_lz.hpp"
#include "srlz/distortion.hpp"
#include "srlz/error.hpp"
#include "srlz/lz.hpp"
#include "srlz/sequence.hpp"

namespace srlz {

struct RatePoint {
  double r1 = 0.0;
  double r2 = 0.0;
  friend bool operator==(const RatePoint&, const RatePoint&) = default;
  friend auto operator<=>(const RatePoint&, const RatePoint&) = default;
};

// {(R1, R2) : R1 >= a, R1 + R2 >= b, R2 >= c}, restricted to nonnegative
// rates. Without a floor c is 0. The raw_* fields keep the bound values
// before clamping at zero.
struct HalfPlaneRegion {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  bool has_floor = false;
  bool clamped_a = false;
  bool clamped_b = false;
  bool clamped_c = false;
  double raw_a = 0.0;
  double raw_b = 0.0;
  double raw_c = 0.0;

  static HalfPlaneRegion make(double a, double b, std::optional<double> c = std::nullopt) {
    HalfPlaneRegion r;
    r.raw_a = a;
    r.raw_b = b;
    r.a = std::max(0.0, a);
    r.b = std::max(0.0, b);
    r.clamped_a = a < 0.0;
    r.clamped_b = b < 0.0;
    if (c) {
      r.has_floor = true;
      r.raw_c = *c;
      r.c = std::max(0.0, *c);
      r.clamped_c = *c < 0.0;
    }
    return r;
  }

  // Sum constraint implied by all three constraints together.
  double effective_sum() const { return std::max(b, a + c); }

  bool contains(RatePoint p) const { return p.r1 >= a && p.r2 >= c && p.r1 + p.r2 >= b; }

  // Lower-left vertices: (a, max(c, b - a)) and, for regions with an R2
  // floor whose sum constraint is active between the floors, (b - c, c).
  std::vector<RatePoint> corners() const {
    std::vector<RatePoint> out{{a, std::max(c, b - a)}};
    if (has_floor && b - c > a) out.push_back({b - c, c});
    return out;
  }

  friend bool operator==(const HalfPlaneRegion&, const HalfPlaneRegion&) = default;
};

namespace detail {

struct Corner {
  RatePoint p;
  double sum;  // exact sum bound of the owning region at this vertex
  std::size_t owner;
};

inline std::vector<Corner> corners_of(std::span<const HalfPlaneRegion> regions) {
  std::vector<Corner> out;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const HalfPlaneRegion& r = regions[i];
    const double s = r.effective_sum();
    for (const RatePoint& p : r.corners()) out.push_back({p, s, i});
  }
  return out;
}

inline bool contains_corner(const HalfPlaneRegion& r, const Corner& k) {
  return k.p.r1 >= r.a && k.p.r2 >= r.c && k.sum >= r.b;
}

// True when the region's vertices all lie in `other`.
inline bool region_within(const HalfPlaneRegion& r, const HalfPlaneRegion& other) {
  const double s = r.effective_sum();
  for (const RatePoint& p : r.corners()) {
    if (!contains_corner(other, Corner{p, s, 0})) return false;
  }
  return true;
}

inline std::vector<RatePoint> finish(std::vector<RatePoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// Regions without an R2 floor reduce to (a, b') with b' = max(a, b);
// containment is then componentwise order on (a, b'), and the minimal
// pairs have no further dominated vertices.
inline std::vector<RatePoint> frontier_no_floor(std::span<const HalfPlaneRegion> regions) {
  std::vector<std::pair<double, double>> ab;
  ab.reserve(regions.size());
  for (const auto& r : regions) ab.emplace_back(r.a, r.effective_sum());
  std::sort(ab.begin(), ab.end());
  std::vector<RatePoint> pts;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [a, s] : ab) {
    if (s < best) {
      pts.push_back({a, s - a});
      best = s;
    }
  }
  return finish(std::move(pts));
}

inline std::vector<RatePoint> frontier_general(std::span<const HalfPlaneRegion> regions) {
  std::vector<char> redundant(regions.size(), 0);
  for (std::size_t i = 0; i < regions.size(); ++i) {
    for (std::size_t j = 0; j < regions.size() && !redundant[i]; ++j) {
      if (i == j || redundant[j]) continue;
      if (region_within(regions[i], regions[j])) {
        // Equal regions keep the first occurrence.
        if (!region_within(regions[j], regions[i]) || j < i) redundant[i] = 1;
      }
    }
  }
  std::vector<RatePoint> pts;
  for (const Corner& k : corners_of(regions)) {
    if (redundant[k.owner]) continue;
    bool dominated = false;
    for (std::size_t j = 0; j < regions.size() && !dominated; ++j) {
      const HalfPlaneRegion& r = regions[j];
      dominated = contains_corner(r, k) && k.sum > r.b && (k.p.r1 > r.a || k.p.r2 > r.c);
    }
    if (!dominated) pts.push_back(k.p);
  }
  return finish(std::move(pts));
}

}  // namespace detail

// Minimal vertices of the union of the regions: ascending R1, ties by R2,
// duplicates removed. A vertex is dropped when its region lies inside
// another member or when a point of some member is strictly below-left of it.
inline std::vector<RatePoint> frontier(std::span<const HalfPlaneRegion> regions) {
  if (regions.empty()) fail(ErrorCode::kInvalidArgument, "frontier of an empty union");
  const bool floors = std::any_of(regions.begin(), regions.end(), [](const auto& r) { return r.has_floor; });
  return floors ? detail::frontier_general(regions) : detail::frontier_no_floor(regions);
}

inline std::vector<RatePoint> frontier(const std::vector<HalfPlaneRegion>& regions) {
  return frontier(std::span<const HalfPlaneRegion>(regions));
}

// Reference implementation of frontier() for floor-free regions, exposed for
// cross-checks: the general vertex-dominance path.
inline std::vector<RatePoint> frontier_reference(std::span<const HalfPlaneRegion> regions) {
  if (regions.empty()) fail(ErrorCode::kInvalidArgument, "frontier of an empty union");
  return detail::frontier_general(regions);
}

inline bool union_contains(std::span<const HalfPlaneRegion> regions, RatePoint p) {
  if (p.r1 < 0.0 || p.r2 < 0.0) return false;
  return std::any_of(regions.begin(), regions.end(), [&](const auto& r) { return r.contains(p); });
}

// The pair region of the converse:
//   R1 >= rho_LZ(x^) - Delta1,  R1 + R2 >= rho_LZ(x^) + rho_LZ(x~ | x^) - Delta2.
inline HalfPlaneRegion region_from_rates(double rho_lz, double rho_cond, std::uint64_t n, std::size_t beta,
                                         std::size_t gamma, const BoundConfig& cfg) {
  const double e = eps_n(n, beta, cfg.eps);
  return HalfPlaneRegion::make(rho_lz - delta1(cfg.q, n, beta, e),
                               rho_lz + rho_cond - delta2(cfg.q, n, beta, gamma, e).value);
}

inline HalfPlaneRegion region_for_pair(const Sequence& primary, const Sequence& secondary, const BoundConfig& cfg = {}) {
  require_same_length(primary.size(), secondary.size(), "region_for_pair");
  const auto j = joint_parse(primary, secondary);
  return region_from_rates(rho_lz(primary), j.rho_cond, primary.size(), primary.alphabet().size(),
                           secondary.alphabet().size(), cfg);
}

struct RegionMember {
  HalfPlaneRegion region;
  Sequence primary;
  Sequence secondary;
};

// Union of pair regions over searched members of B(x). Only non-redundant
// members are kept (no kept member lies inside another); `evaluated` counts
// every candidate that was considered.
struct RegionUnion {
  std::vector<RegionMember> members;
  std::vector<RatePoint> frontier;
  bool exhaustive = false;
  std::uint64_t evaluated = 0;
  SearchStrategy strategy;
  BoundConfig bounds;

  std::vector<HalfPlaneRegion> regions() const {
    std::vector<HalfPlaneRegion> out;
    for (const auto& m : members) out.push_back(m.region);
    return out;
  }
};

namespace detail {

// Incremental chain of floor-free regions minimal under containment, keyed
// by a with effective sums strictly decreasing.
class RegionChain {
 public:
  void offer(const HalfPlaneRegion& r, const Sequence& primary, const Sequence& secondary) {
    const double a = r.a, s = r.effective_sum();
    auto it = chain_.upper_bound(a);
    if (it != chain_.begin() && std::prev(it)->second.region.effective_sum() <= s) return;
    while (it != chain_.end() && it->second.region.effective_sum() >= s) it = chain_.erase(it);
    chain_.insert_or_assign(a, RegionMember{r, primary, secondary});
  }

  std::vector<RegionMember> take() {
    std::vector<RegionMember> out;
    for (auto& [a, m] : chain_) out.push_back(std::move(m));
    return out;
  }

 private:
  std::map<double, RegionMember> chain_;
};

}  // namespace detail

// Outer region for x: the union of pair regions over B(x).
// With a heuristic search the union covers only the visited candidates.
inline RegionUnion sr_outer_region(const Sequence& x, const DistortionSpec& spec, const BoundConfig& cfg = {},
                                   const SearchStrategy& strategy = {}) {
  const std::uint64_t n = x.size();
  if (n < 2) fail(ErrorCode::kInvalidArgument, "rate regions need n >= 2");
  detail::RegionChain chain;
  const std::size_t beta = spec.rep1(x).size(), gamma = spec.rep2(x).size();
  const double e = eps_n(n, beta, cfg.eps);
  const double d1 = delta1(cfg.q, n, beta, e);
  const double d2 = delta2(cfg.q, n, beta, gamma, e).value;
  const SearchOutcome outcome =
      search_ball(x, spec, strategy, {0.0, 0.25, 0.5, 0.75, 1.0}, [&](const Candidate& c) {
        chain.offer(HalfPlaneRegion::make(c.rho_lz - d1, c.rho_lz + c.rho_cond - d2), c.primary, c.secondary);
      });
  RegionUnion u;
  u.members = chain.take();
  u.exhaustive = outcome.exhaustive;
  u.evaluated = outcome.evaluated;
  u.strategy = strategy;
  u.bounds = cfg;
  u.frontier = frontier(u.regions());
  return u;
}

enum class BlockSide { kOuterMinus, kInnerPlus };

inline std::string side_name(BlockSide s) { return s == BlockSide::kOuterMinus ? "outer-minus" : "inner-plus"; }

struct BlockwiseRates {
  double mean_rho_lz = 0.0;    // (k/n) sum_t rho_LZ(block_t)
  double mean_rho_cond = 0.0;  // (k/n) sum_t rho_LZ(block~_t | block^_t)
};

inline BlockwiseRates blockwise_rates(const Sequence& primary, const Sequence& secondary, std::uint64_t k) {
  const std::uint64_t n = primary.size();
  require_same_length(n, secondary.size(), "blockwise_region");
  if (k < 2) fail(ErrorCode::kInvalidArgument, "blockwise regions need k >= 2");
  if (n % k != 0) fail(ErrorCode::kBlockLength, "k = " + std::to_string(k) + " does not divide n = " + std::to_string(n));
  BlockwiseRates r;
  const std::size_t beta = primary.alphabet().size(), gamma = secondary.alphabet().size();
  for (std::uint64_t t = 0; t < n; t += k) {
    const auto a = primary.data().subspan(t, k);
    const auto b = secondary.data().subspan(t, k);
    const auto j = joint_parse(a, beta, b, gamma);
    r.mean_rho_lz += parse(a, beta).rho_lz;
    r.mean_rho_cond += j.rho_cond;
  }
  const double blocks = static_cast<double>(n / k);
  r.mean_rho_lz /= blocks;
  r.mean_rho_cond /= blocks;
  return r;
}

// Blockwise region over n/k blocks of length k. The outer side subtracts
// Delta1(q, k) and Delta2(q, k); the inner side adds the code slacks eps(k)
// and eps_hat(k).
inline HalfPlaneRegion blockwise_region(const Sequence& primary, const Sequence& secondary, std::uint64_t k,
                                        BlockSide side, const BoundConfig& cfg = {}) {
  const BlockwiseRates r = blockwise_rates(primary, secondary, k);
  const std::size_t beta = primary.alphabet().size(), gamma = secondary.alphabet().size();
  const double e = eps_n(k, beta, cfg.eps);
  if (side == BlockSide::kOuterMinus) {
    return HalfPlaneRegion::make(r.mean_rho_lz - delta1(cfg.q, k, beta, e),
                                 r.mean_rho_lz + r.mean_rho_cond - delta2(cfg.q, k, beta, gamma, e).value);
  }
  const double slack1 = eps_slack(k, beta, e);
  return HalfPlaneRegion::make(r.mean_rho_lz + slack1, r.mean_rho_lz + r.mean_rho_cond + slack1 + eps_hat(k));
}

}  // namespace srlz

#endif  // SRLZ_REGIONS_HPP_
