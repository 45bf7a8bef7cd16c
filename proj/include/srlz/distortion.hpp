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

#ifndef SRLZ_DISTORTION_HPP_
#define SRLZ_DISTORTION_HPP_

#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "srlz/cond_lz.hpp"
#include "srlz/error.hpp"
#include "srlz/lz.hpp"
#include "srlz/sequence.hpp"

namespace srlz {

// Distortion between a source sequence and a reproduction. The per-letter
// kinds are additive over positions; kBlock wraps an arbitrary function of
// the whole pair and only supports exhaustive search.
class Distortion {
 public:
  enum class Kind { kHamming, kAbsDiff, kTable, kBlock };
  using BlockFn = std::function<double(const Sequence& source, const Sequence& reproduction)>;

  Distortion() = default;

  static Distortion hamming() { return Distortion(Kind::kHamming); }
  static Distortion absdiff() { return Distortion(Kind::kAbsDiff); }

  // table[x][y] for source symbol x and reproduction symbol y.
  static Distortion table(std::vector<std::vector<double>> table) {
    for (const auto& row : table) {
      for (double v : row) {
        if (!(v >= 0.0) || !std::isfinite(v)) fail(ErrorCode::kInvalidArgument, "distortion table entries must be finite and >= 0");
      }
    }
    Distortion d(Kind::kTable);
    d.table_ = std::move(table);
    return d;
  }

  static Distortion block(BlockFn fn) {
    Distortion d(Kind::kBlock);
    d.block_ = std::move(fn);
    return d;
  }

  // "hamming" or "absdiff".
  static Distortion parse(std::string_view name) {
    if (name == "hamming") return hamming();
    if (name == "absdiff") return absdiff();
    fail(ErrorCode::kInvalidArgument, "unknown distortion '" + std::string(name) + "'");
  }

  Kind kind() const { return kind_; }
  bool additive() const { return kind_ != Kind::kBlock; }

  std::string name() const {
    switch (kind_) {
      case Kind::kHamming: return "hamming";
      case Kind::kAbsDiff: return "absdiff";
      case Kind::kTable: return "table";
      case Kind::kBlock: return "block";
    }
    return "?";
  }

  // Per-letter matrix d(x, y) over the two alphabets.
  std::vector<std::vector<double>> letter_matrix(const Alphabet& source, const Alphabet& rep) const {
    if (!additive()) fail(ErrorCode::kInvalidArgument, "block distortion has no per-letter form");
    std::vector<std::vector<double>> m(source.size(), std::vector<double>(rep.size(), 0.0));
    auto integer = [](const Alphabet& a, Symbol s) {
      const std::string name = a.symbol(s);
      long long v = 0;
      auto [p, ec] = std::from_chars(name.data(), name.data() + name.size(), v);
      if (ec != std::errc() || p != name.data() + name.size()) {
        fail(ErrorCode::kInvalidArgument, "absdiff distortion needs integer symbols, got '" + name + "'");
      }
      return static_cast<double>(v);
    };
    for (Symbol x = 0; x < source.size(); ++x) {
      for (Symbol y = 0; y < rep.size(); ++y) {
        switch (kind_) {
          case Kind::kHamming: m[x][y] = source.symbol(x) == rep.symbol(y) ? 0.0 : 1.0; break;
          case Kind::kAbsDiff: m[x][y] = std::fabs(integer(source, x) - integer(rep, y)); break;
          case Kind::kTable:
            if (x >= table_.size() || y >= table_[x].size()) fail(ErrorCode::kInvalidArgument, "distortion table too small for the alphabets");
            m[x][y] = table_[x][y];
            break;
          case Kind::kBlock: break;
        }
      }
    }
    return m;
  }

  double total(const Sequence& source, const Sequence& rep) const {
    require_same_length(source.size(), rep.size(), "distortion");
    if (!additive()) return block_(source, rep);
    const auto m = letter_matrix(source.alphabet(), rep.alphabet());
    double sum = 0.0;
    for (std::size_t i = 0; i < source.size(); ++i) sum += m[source[i]][rep[i]];
    return sum;
  }

 private:
  explicit Distortion(Kind k) : kind_(k) {}

  Kind kind_ = Kind::kHamming;
  std::vector<std::vector<double>> table_;
  BlockFn block_;
};

// Distortion constraints d_i(x, .) <= n D_i. Reproduction alphabets default
// to the source alphabet. d0 / level0 apply to the central MD decoder.
struct DistortionSpec {
  Distortion d1, d2, d0;
  double level1 = 0.0, level2 = 0.0, level0 = 0.0;
  std::optional<Alphabet> alphabet1, alphabet2;

  const Alphabet& rep1(const Sequence& x) const { return alphabet1 ? *alphabet1 : x.alphabet(); }
  const Alphabet& rep2(const Sequence& x) const { return alphabet2 ? *alphabet2 : x.alphabet(); }

  void validate() const {
    for (double d : {level1, level2, level0}) {
      if (!(d >= 0.0) || !std::isfinite(d)) fail(ErrorCode::kInfeasible, "distortion levels must be finite and >= 0");
    }
  }
};

inline constexpr double kDistortionTolerance = 1e-9;

inline bool within(double total, std::size_t n, double level) {
  return total <= static_cast<double>(n) * level + kDistortionTolerance;
}

// (x^, x~) in B(x).
inline bool in_ball(const Sequence& x, const Sequence& primary, const Sequence& secondary, const DistortionSpec& spec) {
  spec.validate();
  require_same_length(x.size(), primary.size(), "in_ball");
  require_same_length(x.size(), secondary.size(), "in_ball");
  return within(spec.d1.total(x, primary), x.size(), spec.level1) &&
         within(spec.d2.total(x, secondary), x.size(), spec.level2);
}

struct SearchStrategy {
  enum class Mode { kAuto, kExhaustive, kHeuristic };
  Mode mode = Mode::kAuto;
  std::uint64_t budget = 20000;  // heuristic evaluations
  std::uint64_t seed = 1;
  unsigned restarts = 4;
  std::uint64_t exhaustive_limit = std::uint64_t{1} << 24;  // max |B1| |B2|
};

inline std::string mode_name(SearchStrategy::Mode m) {
  switch (m) {
    case SearchStrategy::Mode::kAuto: return "auto";
    case SearchStrategy::Mode::kExhaustive: return "exhaustive";
    case SearchStrategy::Mode::kHeuristic: return "heuristic";
  }
  return "?";
}

// One evaluated member of B(x).
struct Candidate {
  const Sequence& primary;
  const Sequence& secondary;
  double rho_lz;
  double rho_cond;
};

struct SearchOutcome {
  bool exhaustive = false;
  std::uint64_t evaluated = 0;
};

namespace detail {

// Calls visit(y) for every reproduction y over `rep` with d(x, y) <= n level,
// in lexicographic order of symbol codes.
inline void enumerate_reproductions(const Sequence& x, const Alphabet& rep, const Distortion& d, double level,
                                    const std::function<void(const std::vector<Symbol>&)>& visit) {
  const std::size_t n = x.size();
  std::vector<Symbol> cur(n, 0);
  if (!d.additive()) {
    while (true) {
      if (within(d.total(x, Sequence(rep, cur)), n, level)) visit(cur);
      std::size_t i = n;
      while (i-- > 0) {
        if (++cur[i] < rep.size()) break;
        cur[i] = 0;
      }
      if (i == static_cast<std::size_t>(-1)) return;
    }
  }
  const auto m = d.letter_matrix(x.alphabet(), rep);
  std::vector<double> min_rest(n + 1, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    min_rest[i] = min_rest[i + 1] + *std::min_element(m[x[i]].begin(), m[x[i]].end());
  }
  const double limit = static_cast<double>(n) * level + kDistortionTolerance;
  std::function<void(std::size_t, double)> dfs = [&](std::size_t i, double acc) {
    if (i == n) {
      visit(cur);
      return;
    }
    for (Symbol y = 0; y < rep.size(); ++y) {
      const double next = acc + m[x[i]][y];
      if (next + min_rest[i + 1] > limit) continue;
      cur[i] = y;
      dfs(i + 1, next);
    }
  };
  dfs(0, 0.0);
}

// |{y : d(x, y) <= n level}| when it is at most cap, otherwise nullopt.
// Integer-valued per-letter distortions are counted by dynamic programming
// over the accumulated distortion; other cases by a bounded walk.
inline std::optional<std::uint64_t> count_reproductions(const Sequence& x, const Alphabet& rep, const Distortion& d,
                                                        double level, std::uint64_t cap) {
  const std::size_t n = x.size();
  if (!d.additive()) {
    const double space = std::pow(static_cast<double>(rep.size()), static_cast<double>(n));
    if (space > static_cast<double>(cap)) return std::nullopt;
    std::uint64_t count = 0;
    enumerate_reproductions(x, rep, d, level, [&](const std::vector<Symbol>&) { ++count; });
    return count;
  }
  const auto m = d.letter_matrix(x.alphabet(), rep);
  const double limit = static_cast<double>(n) * level + kDistortionTolerance;
  std::vector<double> best(n);
  double base = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    best[i] = *std::min_element(m[x[i]].begin(), m[x[i]].end());
    base += best[i];
  }
  if (base > limit) return 0;
  // Every single-letter deviation that fits the budget is its own member.
  std::uint64_t singles = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (double v : m[x[i]]) singles += (base - best[i] + v <= limit) ? 1 : 0;
    singles -= 1;  // the nearest letter itself
    if (singles > cap) return std::nullopt;
  }

  bool integral = true;
  double top = 0.0;
  for (const auto& row : m) {
    for (double v : row) {
      integral = integral && v == std::floor(v);
      top = std::max(top, v);
    }
  }
  const double budget = std::floor(limit);
  if (integral && budget + 1.0 <= 1e6 && static_cast<double>(n) * (budget + 1.0) <= 5e7) {
    const std::size_t width = static_cast<std::size_t>(budget) + 1;
    std::vector<std::uint64_t> dp(width, 0), next(width);
    dp[0] = 1;
    const std::uint64_t sat = cap + 1;
    for (std::size_t i = 0; i < n; ++i) {
      std::fill(next.begin(), next.end(), 0);
      for (std::size_t acc = 0; acc < width; ++acc) {
        if (!dp[acc]) continue;
        for (double v : m[x[i]]) {
          const std::size_t to = acc + static_cast<std::size_t>(v);
          if (to < width) next[to] = std::min(sat, next[to] + dp[acc]);
        }
      }
      dp.swap(next);
    }
    std::uint64_t total = 0;
    for (auto c : dp) total = std::min(sat, total + c);
    if (total > cap) return std::nullopt;
    return total;
  }

  // Bounded walk: give up after a fixed amount of work.
  std::vector<double> min_rest(n + 1, 0.0);
  for (std::size_t i = n; i-- > 0;) min_rest[i] = min_rest[i + 1] + best[i];
  std::uint64_t count = 0, steps = 0;
  const std::uint64_t max_steps = 64 * (cap + 1);
  bool gave_up = false;
  std::function<void(std::size_t, double)> dfs = [&](std::size_t i, double acc) {
    if (gave_up) return;
    if (++steps > max_steps || count > cap) {
      gave_up = true;
      return;
    }
    if (i == n) {
      ++count;
      return;
    }
    for (double v : m[x[i]]) {
      if (acc + v + min_rest[i + 1] <= limit) dfs(i + 1, acc + v);
      if (gave_up) return;
    }
  };
  dfs(0, 0.0);
  if (gave_up || count > cap) return std::nullopt;
  return count;
}

// Position-wise nearest reproduction (first minimizer per letter).
inline std::vector<Symbol> nearest(const Sequence& x, const std::vector<std::vector<double>>& m) {
  std::vector<Symbol> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto& row = m[x[i]];
    y[i] = static_cast<Symbol>(std::min_element(row.begin(), row.end()) - row.begin());
  }
  return y;
}

}  // namespace detail

// Visits members of B(x): every member when the ball is small enough for
// exhaustive enumeration, otherwise the trajectory of a seeded
// coordinate-descent / annealing search minimizing
//   (1 - w) rho_LZ(x^) + w (rho_LZ(x^) + rho_LZ(x~ | x^))
// for each weight in `weights` (one or more restarts per weight).
// Throws kInfeasible when B(x) is empty.
inline SearchOutcome search_ball(const Sequence& x, const DistortionSpec& spec, const SearchStrategy& strategy,
                                 const std::vector<double>& weights,
                                 const std::function<void(const Candidate&)>& visit) {
  spec.validate();
  const std::size_t n = x.size();
  const Alphabet& rep1 = spec.rep1(x);
  const Alphabet& rep2 = spec.rep2(x);
  SearchOutcome outcome;

  auto evaluate = [&](const Sequence& a, const Sequence& b) {
    const ParseResult p = parse(a);
    const double rc = joint_parse(a, b).rho_cond;
    ++outcome.evaluated;
    visit(Candidate{a, b, p.rho_lz, rc});
    return std::make_pair(p.rho_lz, rc);
  };

  if (strategy.mode != SearchStrategy::Mode::kHeuristic) {
    const std::uint64_t cap = strategy.exhaustive_limit;
    const auto n1 = detail::count_reproductions(x, rep1, spec.d1, spec.level1, cap);
    if (n1 && *n1 == 0) fail(ErrorCode::kInfeasible, "distortion ball is empty");
    std::optional<std::uint64_t> n2;
    if (n1) n2 = detail::count_reproductions(x, rep2, spec.d2, spec.level2, cap / *n1);
    if (n2 && *n2 == 0) fail(ErrorCode::kInfeasible, "distortion ball is empty");
    if (n1 && n2) {
      outcome.exhaustive = true;
      // The smaller factor is materialized when it is the inner one.
      const bool store = *n2 <= *n1 || *n2 <= 4096;
      std::vector<Sequence> seconds;
      if (store) {
        seconds.reserve(*n2);
        detail::enumerate_reproductions(x, rep2, spec.d2, spec.level2,
                                        [&](const std::vector<Symbol>& v) { seconds.emplace_back(rep2, v); });
      }
      detail::enumerate_reproductions(x, rep1, spec.d1, spec.level1, [&](const std::vector<Symbol>& v) {
        const Sequence a(rep1, v);
        const ParseResult p = parse(a);
        auto one = [&](const Sequence& b) {
          ++outcome.evaluated;
          visit(Candidate{a, b, p.rho_lz, joint_parse(a, b).rho_cond});
        };
        if (store) {
          for (const Sequence& b : seconds) one(b);
        } else {
          detail::enumerate_reproductions(x, rep2, spec.d2, spec.level2,
                                          [&](const std::vector<Symbol>& w) { one(Sequence(rep2, w)); });
        }
      });
      return outcome;
    }
    if (strategy.mode == SearchStrategy::Mode::kExhaustive) {
      fail(ErrorCode::kBudgetExceeded, "distortion ball exceeds the exhaustive limit");
    }
  }

  if (!spec.d1.additive() || !spec.d2.additive()) {
    fail(ErrorCode::kInvalidArgument, "heuristic search requires per-letter distortions");
  }
  const auto m1 = spec.d1.letter_matrix(x.alphabet(), rep1);
  const auto m2 = spec.d2.letter_matrix(x.alphabet(), rep2);
  std::vector<Symbol> start1 = detail::nearest(x, m1), start2 = detail::nearest(x, m2);
  double d1 = 0.0, d2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    d1 += m1[x[i]][start1[i]];
    d2 += m2[x[i]][start2[i]];
  }
  if (!within(d1, n, spec.level1) || !within(d2, n, spec.level2)) fail(ErrorCode::kInfeasible, "distortion ball is empty");

  const std::vector<double> ws = weights.empty() ? std::vector<double>{0.5} : weights;
  const unsigned restarts = std::max<unsigned>(strategy.restarts, 1);
  const std::uint64_t runs = static_cast<std::uint64_t>(ws.size()) * restarts;
  const std::uint64_t per_run = std::max<std::uint64_t>(strategy.budget / runs, 1);
  for (std::uint64_t run = 0; run < runs; ++run) {
    const double w = ws[run % ws.size()];
    std::mt19937_64 rng(strategy.seed * 0x9E3779B97F4A7C15ULL + run);
    std::vector<Symbol> y1 = start1, y2 = start2;
    double t1 = d1, t2 = d2;
    if (run >= ws.size() && n > 0) {
      // Random feasible perturbation of the nearest reproduction.
      for (std::size_t step = 0; step < n; ++step) {
        const bool first = rng() & 1U;
        const std::size_t i = rng() % n;
        auto& y = first ? y1 : y2;
        const auto& m = first ? m1 : m2;
        const Symbol v = static_cast<Symbol>(rng() % (first ? rep1.size() : rep2.size()));
        double& t = first ? t1 : t2;
        const double nt = t - m[x[i]][y[i]] + m[x[i]][v];
        if (within(nt, n, first ? spec.level1 : spec.level2)) {
          y[i] = v;
          t = nt;
        }
      }
    }
    auto objective = [w](std::pair<double, double> r) { return r.first + w * r.second; };
    double cur = objective(evaluate(Sequence(rep1, y1), Sequence(rep2, y2)));
    const double t0 = 0.25;
    std::uint64_t spent = 1;
    for (std::uint64_t attempt = 1; spent < per_run && attempt < 16 * per_run && n > 0; ++attempt) {
      const bool first = (rep2.size() < 2) || ((rep1.size() >= 2) && (rng() & 1U));
      const std::size_t size = first ? rep1.size() : rep2.size();
      if (size < 2) break;
      auto& y = first ? y1 : y2;
      const auto& m = first ? m1 : m2;
      const std::size_t i = rng() % n;
      Symbol v = static_cast<Symbol>(rng() % (size - 1));
      if (v >= y[i]) ++v;
      double& t = first ? t1 : t2;
      const double nt = t - m[x[i]][y[i]] + m[x[i]][v];
      if (!within(nt, n, first ? spec.level1 : spec.level2)) continue;
      const Symbol old = y[i];
      y[i] = v;
      const double val = objective(evaluate(Sequence(rep1, y1), Sequence(rep2, y2)));
      ++spent;
      const double temp = t0 * (1.0 - static_cast<double>(spent) / static_cast<double>(per_run));
      const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      if (val <= cur || (temp > 0.0 && u < std::exp((cur - val) / temp))) {
        cur = val;
        t = nt;
      } else {
        y[i] = old;
      }
    }
  }
  return outcome;
}

}  // namespace srlz

#endif  // SRLZ_DISTORTION_HPP_
