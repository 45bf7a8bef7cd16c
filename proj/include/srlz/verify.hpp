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

#ifndef SRLZ_VERIFY_HPP_
#define SRLZ_VERIFY_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "srlz/bounds.hpp"
#include "srlz/empirics.hpp"
#include "srlz/error.hpp"
#include "srlz/fsm.hpp"
#include "srlz/mdc.hpp"
#include "srlz/regions.hpp"
#include "srlz/sequence.hpp"

namespace srlz {

// Outcome of one verification suite. `stats` holds suite-specific numbers
// (minimum slack, family sizes) keyed by name.
struct SuiteResult {
  std::string suite;
  std::uint64_t checked = 0;
  std::uint64_t passed = 0;
  bool exhaustive = true;
  std::vector<std::string> violations;
  std::map<std::string, double> stats;

  std::uint64_t failed() const { return checked - passed; }
  bool ok() const { return checked == passed; }

  void record(bool pass, const std::function<std::string()>& describe) {
    ++checked;
    if (pass) {
      ++passed;
    } else if (violations.size() < kMaxViolations) {
      violations.push_back(describe());
    }
  }

  void track_min(const std::string& key, double v) {
    auto [it, fresh] = stats.emplace(key, v);
    if (!fresh) it->second = std::min(it->second, v);
  }

  static constexpr std::size_t kMaxViolations = 8;
};

namespace detail {

inline std::uint64_t checked_power(std::uint64_t base, std::uint64_t exp, std::uint64_t budget) {
  std::uint64_t v = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && v > budget / base) fail(ErrorCode::kBudgetExceeded, "enumeration exceeds budget");
    v *= base;
  }
  if (v > budget) fail(ErrorCode::kBudgetExceeded, "enumeration exceeds budget");
  return v;
}

// Sequence number `index` in base `radix`, most significant symbol first.
inline void unrank(std::uint64_t index, std::size_t radix, std::vector<Symbol>& out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<Symbol>(index % radix);
    index /= radix;
  }
}

inline std::string symbols_text(std::span<const Symbol> s) {
  std::string out;
  for (Symbol v : s) out += std::to_string(v) + (s.size() > 1 ? " " : "");
  if (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

inline std::vector<std::uint64_t> block_lengths_for(std::uint64_t n, const std::vector<std::uint64_t>& requested) {
  if (requested.empty()) return divisors(n);
  for (std::uint64_t l : requested) {
    if (l == 0 || n % l != 0) fail(ErrorCode::kBlockLength, "block length " + std::to_string(l) + " does not divide n");
  }
  return requested;
}

}  // namespace detail

struct EntropySuiteConfig {
  std::uint64_t n = 16;
  std::size_t beta = 2;
  std::size_t gamma = 0;  // nonzero: conditional version over all pairs
  std::vector<std::uint64_t> block_lens;  // empty: every divisor of n
  EpsSpec eps;
  std::uint64_t budget = std::uint64_t{1} << 24;
};

// Exhaustive block-entropy inequality check. A sequence (or pair) passes when
// the inequality holds at every requested block length.
inline SuiteResult verify_entropy_inequality(const EntropySuiteConfig& cfg) {
  if (cfg.n < 2) fail(ErrorCode::kInvalidArgument, "n must be at least 2");
  if (cfg.beta < 1) fail(ErrorCode::kInvalidArgument, "beta must be positive");
  const bool conditional = cfg.gamma != 0;
  const auto lens = detail::block_lengths_for(cfg.n, cfg.block_lens);
  const std::uint64_t count_x = detail::checked_power(cfg.beta, cfg.n, cfg.budget);
  const std::uint64_t count_y = conditional ? detail::checked_power(cfg.gamma, cfg.n, cfg.budget) : 1;
  if (count_y > cfg.budget / count_x) fail(ErrorCode::kBudgetExceeded, "enumeration exceeds budget");

  SuiteResult res;
  res.suite = conditional ? "cond-entropy-ineq" : "entropy-ineq";
  const Alphabet ax = Alphabet::indexed(cfg.beta);
  const Alphabet ay = Alphabet::indexed(conditional ? cfg.gamma : 1);
  std::vector<Symbol> x(cfg.n), y(cfg.n);
  for (std::uint64_t i = 0; i < count_x; ++i) {
    detail::unrank(i, cfg.beta, x);
    const Sequence sx(ax, x);
    for (std::uint64_t j = 0; j < count_y; ++j) {
      bool all = true;
      std::uint64_t bad_l = 0;
      if (conditional) {
        detail::unrank(j, cfg.gamma, y);
        const Sequence sy(ay, y);
        for (std::uint64_t l : lens) {
          const InequalityReport r = check_cond_entropy_inequality(sy, sx, l, cfg.eps);
          res.track_min("min_margin", r.lhs - r.rhs);
          if (!r.holds && all) {
            all = false;
            bad_l = l;
          }
        }
      } else {
        for (std::uint64_t l : lens) {
          const InequalityReport r = check_entropy_inequality(sx, l, cfg.eps);
          res.track_min("min_margin", r.lhs - r.rhs);
          if (!r.holds && all) {
            all = false;
            bad_l = l;
          }
        }
      }
      res.record(all, [&] {
        std::string s = "x=" + detail::symbols_text(x);
        if (conditional) s += " y=" + detail::symbols_text(y);
        return s + " l=" + std::to_string(bad_l);
      });
    }
  }
  return res;
}

// Distinct length signatures of the information-lossless 1-state encoders
// with outputs of length <= max_len. Encoders sharing a signature produce
// identical L(u^n) and L(v^n) on every input. For binary alphabets and
// max_len 2 the lossless count is the same at every depth from 4 to 8.
inline constexpr std::size_t kFamilyLosslessDepth = 6;

struct EncoderFamily {
  std::vector<FsmEncoder> encoders;
  std::uint64_t enumerated = 0;
  std::uint64_t lossless = 0;
};

inline EncoderFamily lossless_one_state_family(const Alphabet& primary, const Alphabet& secondary,
                                               std::size_t max_len,
                                               std::size_t depth = kFamilyLosslessDepth) {
  EncoderFamily fam;
  std::set<FsmLengths> seen;
  for_each_one_state_encoder(primary, secondary, max_len, [&](const FsmEncoder& e) {
    ++fam.enumerated;
    if (!is_information_lossless(e, std::min(depth, default_lossless_depth(e))).lossless) return;
    ++fam.lossless;
    if (seen.insert(FsmLengths(e)).second) fam.encoders.push_back(e);
  });
  return fam;
}

struct KraftSuiteConfig {
  std::size_t beta = 2, gamma = 2;
  std::size_t max_len = 2;
  std::size_t max_block_len = 3;
  std::size_t lossless_depth = kFamilyLosslessDepth;
};

// Generalized Kraft inequality over the enumerated lossless family, one
// check per (signature, l).
inline SuiteResult verify_kraft(const KraftSuiteConfig& cfg) {
  SuiteResult res;
  res.suite = "kraft";
  const EncoderFamily fam =
      lossless_one_state_family(Alphabet::indexed(cfg.beta), Alphabet::indexed(cfg.gamma), cfg.max_len,
                                cfg.lossless_depth);
  res.stats["encoders_enumerated"] = static_cast<double>(fam.enumerated);
  res.stats["encoders_lossless"] = static_cast<double>(fam.lossless);
  res.stats["length_signatures"] = static_cast<double>(fam.encoders.size());
  for (std::size_t idx = 0; idx < fam.encoders.size(); ++idx) {
    for (std::size_t l = 1; l <= cfg.max_block_len; ++l) {
      const KraftReport r = kraft_check(fam.encoders[idx], l);
      res.track_min("min_margin", r.rhs - r.lhs);
      res.record(r.holds, [&] {
        std::ostringstream os;
        os << "l=" << l << " lhs=" << r.lhs << " rhs=" << r.rhs << "\n" << fam.encoders[idx].to_text();
        return os.str();
      });
    }
  }
  return res;
}

struct ConverseSuiteConfig {
  std::uint64_t n = 8;
  std::size_t beta = 2, gamma = 2;
  std::size_t max_len = 2;
  std::uint64_t q = 1;
  std::size_t lossless_depth = kFamilyLosslessDepth;
  // Pairs are enumerated exhaustively when (beta gamma)^n fits `budget`,
  // otherwise `samples` pairs are drawn with `seed`.
  std::uint64_t budget = std::uint64_t{1} << 20;
  std::uint64_t samples = 200;
  std::uint64_t seed = 1;
  EpsSpec eps;
};

// Converse inequalities (i)-(iii) for every lossless signature on every pair.
inline SuiteResult verify_converse(const ConverseSuiteConfig& cfg) {
  if (cfg.n < 2) fail(ErrorCode::kInvalidArgument, "n must be at least 2");
  SuiteResult res;
  res.suite = "converse";
  const Alphabet ax = Alphabet::indexed(cfg.beta), ay = Alphabet::indexed(cfg.gamma);
  const EncoderFamily fam = lossless_one_state_family(ax, ay, cfg.max_len, cfg.lossless_depth);
  std::vector<FsmLengths> lengths;
  for (const auto& e : fam.encoders) lengths.emplace_back(e);
  res.stats["encoders_enumerated"] = static_cast<double>(fam.enumerated);
  res.stats["encoders_lossless"] = static_cast<double>(fam.lossless);
  res.stats["length_signatures"] = static_cast<double>(fam.encoders.size());

  std::uint64_t pairs = 0;
  try {
    pairs = detail::checked_power(cfg.beta * cfg.gamma, cfg.n, cfg.budget);
  } catch (const Error&) {
    res.exhaustive = false;
    pairs = cfg.samples;
  }
  std::mt19937_64 rng(cfg.seed);
  std::vector<Symbol> x(cfg.n), y(cfg.n);
  for (std::uint64_t i = 0; i < pairs; ++i) {
    if (res.exhaustive) {
      detail::unrank(i / detail::checked_power(cfg.gamma, cfg.n, UINT64_MAX), cfg.beta, x);
      detail::unrank(i % detail::checked_power(cfg.gamma, cfg.n, UINT64_MAX), cfg.gamma, y);
    } else {
      for (auto& v : x) v = static_cast<Symbol>(rng() % cfg.beta);
      for (auto& v : y) v = static_cast<Symbol>(rng() % cfg.gamma);
    }
    const Sequence sx(ax, x), sy(ay, y);
    const ConverseInputs in = prepare_converse(sx, sy, cfg.q, cfg.eps);
    for (std::size_t k = 0; k < lengths.size(); ++k) {
      const auto [lu, lv] = lengths[k].run(x, y);
      const ConverseReport r = converse_check(in, lu, lv);
      res.track_min("min_margin_i", r.rho1 - r.bound_i);
      res.track_min("min_margin_ii", r.rho12 - r.bound_ii);
      res.track_min("min_margin_iii", r.rho1 - r.bound_iii);
      res.record(r.holds(), [&] {
        std::ostringstream os;
        os << "x=" << detail::symbols_text(x) << " y=" << detail::symbols_text(y) << " holds=" << r.holds_i
           << r.holds_ii << r.holds_iii << "\n"
           << fam.encoders[k].to_text();
        return os.str();
      });
    }
  }
  return res;
}

struct FrontierSuiteConfig {
  std::uint64_t unions = 100;
  std::size_t max_members = 20;
  double resolution = 1e-3;
  double max_rate = 3.0;
  std::uint64_t seed = 1;
  // Extraction under test; frontier() when empty.
  std::function<std::vector<RatePoint>(std::span<const HalfPlaneRegion>)> extract;
};

namespace detail {

// Lowest grid row inside the union in every grid column (SIZE_MAX when the
// column is empty), found by bisection since membership is upward closed.
inline std::vector<std::size_t> grid_envelope(std::span<const HalfPlaneRegion> regions, double h, std::size_t cols,
                                              std::size_t rows) {
  std::vector<std::size_t> lo(cols, SIZE_MAX);
  for (std::size_t i = 0; i < cols; ++i) {
    const double r1 = static_cast<double>(i) * h;
    if (!union_contains(regions, {r1, static_cast<double>(rows - 1) * h})) continue;
    std::size_t l = 0, r = rows - 1;
    while (l < r) {
      const std::size_t m = (l + r) / 2;
      if (union_contains(regions, {r1, static_cast<double>(m) * h})) {
        r = m;
      } else {
        l = m + 1;
      }
    }
    lo[i] = l;
  }
  return lo;
}

}  // namespace detail

// Frontier extraction against a brute-force grid. Regions are floor-free
// with bounds on a 0.01 lattice shifted by half a grid step, so no bound
// falls on a grid line and distinct vertices are at least ten steps apart.
// On the grid a vertex is a column where the envelope first appears or
// drops by two or more rows. Every frontier point must match a grid vertex
// to within one step (and vice versa), and its neighbourhood must agree:
// the point itself is inside, one step left or one step down is outside.
inline SuiteResult verify_frontier(const FrontierSuiteConfig& cfg) {
  SuiteResult res;
  res.suite = "frontier";
  const double h = cfg.resolution;
  const auto lattice = static_cast<std::uint64_t>(std::floor(cfg.max_rate * 100.0));
  const std::size_t cols = static_cast<std::size_t>(std::ceil(2.0 * cfg.max_rate / h)) + 4;
  const std::size_t rows = cols;
  std::mt19937_64 rng(cfg.seed);
  for (std::uint64_t u = 0; u < cfg.unions; ++u) {
    const std::size_t m = 1 + static_cast<std::size_t>(rng() % cfg.max_members);
    std::vector<HalfPlaneRegion> regions;
    for (std::size_t i = 0; i < m; ++i) {
      const double a = static_cast<double>(rng() % lattice) * 0.01 + h / 2;
      const double b = static_cast<double>(rng() % (2 * lattice)) * 0.01 + h / 2;
      regions.push_back(HalfPlaneRegion::make(a, b));
    }
    const std::vector<RatePoint> pts = cfg.extract ? cfg.extract(regions) : frontier(regions);
    const auto lo = detail::grid_envelope(regions, h, cols, rows);
    std::vector<RatePoint> grid;
    for (std::size_t i = 0; i < cols; ++i) {
      if (lo[i] == SIZE_MAX) continue;
      if (i == 0 || lo[i - 1] == SIZE_MAX || lo[i - 1] >= lo[i] + 2) {
        grid.push_back({static_cast<double>(i) * h, static_cast<double>(lo[i]) * h});
      }
    }
    auto near = [&](const RatePoint& p, const RatePoint& g) {
      return std::abs(p.r1 - g.r1) <= 1.5 * h && std::abs(p.r2 - g.r2) <= 1.5 * h;
    };
    bool ok = pts.size() == grid.size();
    for (std::size_t k = 0; ok && k < pts.size(); ++k) ok = near(pts[k], grid[k]);
    for (const RatePoint& p : pts) {
      const double e = 1e-9;
      ok = ok && union_contains(regions, {p.r1 + e, p.r2 + e}) && !union_contains(regions, {p.r1 - h, p.r2 + e}) &&
           !union_contains(regions, {p.r1 + e, p.r2 - h});
    }
    res.record(ok, [&] {
      std::ostringstream os;
      os << "union " << u << ":";
      for (const auto& r : regions) os << " (" << r.a << "," << r.b << ")";
      os << " frontier " << pts.size() << " points, grid " << grid.size();
      return os.str();
    });
  }
  return res;
}

struct SplitSuiteConfig {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
};

// Random (A, B, C, R1, R2) meeting the precondition; the allocation
// (A + D, B + C - D) must fit under (R1, R2) with 0 <= D <= C.
inline SuiteResult verify_split_lemma(const SplitSuiteConfig& cfg) {
  SuiteResult res;
  res.suite = "split-lemma";
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    const double a = 4.0 * unit(rng), b = 4.0 * unit(rng);
    const double c = (t % 16 == 0) ? 0.0 : 4.0 * unit(rng);
    // R1 >= A; R2 chosen so that R2 >= B and R1 + R2 >= A + B + C.
    const double r1 = a + (t % 8 == 1 ? 0.0 : 5.0 * unit(rng));
    const double r2 = std::max(b, a + b + c - r1) + (t % 8 == 2 ? 0.0 : unit(rng));
    const SplitAllocation s = split_rates(a, b, c, r1, r2);
    const bool pass = s.d >= 0.0 && s.d <= c && s.r1 <= r1 + kInequalityTolerance &&
                      s.r2 <= r2 + kInequalityTolerance;
    res.record(pass, [&] {
      std::ostringstream os;
      os.precision(17);
      os << "A=" << a << " B=" << b << " C=" << c << " R1=" << r1 << " R2=" << r2 << " D=" << s.d;
      return os.str();
    });
  }
  return res;
}

}  // namespace srlz

#endif  // SRLZ_VERIFY_HPP_
