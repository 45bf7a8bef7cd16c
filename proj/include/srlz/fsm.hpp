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

#ifndef SRLZ_FSM_HPP_
#define SRLZ_FSM_HPP_

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "srlz/bitio.hpp"
#include "srlz/bounds.hpp"
#include "srlz/cond_lz.hpp"
#include "srlz/error.hpp"
#include "srlz/lz.hpp"
#include "srlz/sequence.hpp"

namespace srlz {

// Two-stage finite-state encoder. Stage 1 reads the primary symbol a and
// emits f1(s, a); stage 2 reads (a, b) and emits f2(z, a, b). Tables are
// dense, indexed by f1_index() and f2_index().
struct FsmEncoder {
  std::uint64_t q = 1;
  std::vector<std::string> states_s{"s0"};
  std::vector<std::string> states_z{"z0"};
  Alphabet primary = Alphabet::from_chars("01");
  Alphabet secondary = Alphabet::from_chars("01");
  std::vector<std::string> f1;
  std::vector<std::uint32_t> g1;
  std::vector<std::string> f2;
  std::vector<std::uint32_t> g2;
  std::uint32_t s1 = 0;
  std::uint32_t z1 = 0;

  std::size_t beta() const { return primary.size(); }
  std::size_t gamma() const { return secondary.size(); }
  std::size_t f1_index(std::uint32_t s, Symbol a) const { return s * beta() + a; }
  std::size_t f2_index(std::uint32_t z, Symbol a, Symbol b) const { return (z * beta() + a) * gamma() + b; }

  void resize_tables() {
    f1.assign(states_s.size() * beta(), std::string());
    g1.assign(states_s.size() * beta(), 0);
    f2.assign(states_z.size() * beta() * gamma(), std::string());
    g2.assign(states_z.size() * beta() * gamma(), 0);
  }

  void validate() const {
    auto bad = [](const std::string& msg) { fail(ErrorCode::kFormat, "fsm: " + msg); };
    if (q == 0) bad("q must be positive");
    if (states_s.empty() || states_z.empty()) bad("state sets must be nonempty");
    if (states_s.size() > q || states_z.size() > q) bad("state count exceeds q");
    if (f1.size() != states_s.size() * beta() || g1.size() != f1.size()) bad("stage-1 table size");
    if (f2.size() != states_z.size() * beta() * gamma() || g2.size() != f2.size()) bad("stage-2 table size");
    for (auto s : g1) if (s >= states_s.size()) bad("g1 target out of range");
    for (auto z : g2) if (z >= states_z.size()) bad("g2 target out of range");
    if (s1 >= states_s.size() || z1 >= states_z.size()) bad("initial state out of range");
    auto binary = [](const std::string& w) { return w.find_first_not_of("01") == std::string::npos; };
    for (const auto& w : f1) if (!binary(w)) bad("f1 output is not a binary string");
    for (const auto& w : f2) if (!binary(w)) bad("f2 output is not a binary string");
  }

  // One state per stage; f1 and f2 emit the fixed-length binary code of
  // the current symbol.
  static FsmEncoder identity(const Alphabet& primary, const Alphabet& secondary) {
    FsmEncoder e;
    e.primary = primary;
    e.secondary = secondary;
    e.resize_tables();
    auto code = [](Symbol v, unsigned width) {
      std::string w(width, '0');
      for (unsigned i = 0; i < width; ++i) w[width - 1 - i] = ((v >> i) & 1U) ? '1' : '0';
      return w;
    };
    const unsigned wb = ceil_log2(e.beta());
    const unsigned wg = ceil_log2(e.gamma());
    for (Symbol a = 0; a < e.beta(); ++a) {
      e.f1[e.f1_index(0, a)] = code(a, wb);
      for (Symbol b = 0; b < e.gamma(); ++b) e.f2[e.f2_index(0, a, b)] = code(b, wg);
    }
    return e;
  }

  static FsmEncoder parse(std::string_view text);
  std::string to_text() const;
};

struct EncodingTrace {
  std::vector<std::string> outputs_u;
  std::vector<std::string> outputs_v;
  std::vector<std::uint32_t> states_s;  // s_1 .. s_{n+1}
  std::vector<std::uint32_t> states_z;
  std::uint64_t length_u = 0;
  std::uint64_t length_v = 0;
  std::uint64_t n = 0;

  double rho1() const { return n ? static_cast<double>(length_u) / static_cast<double>(n) : 0.0; }
  double rho12() const { return n ? static_cast<double>(length_u + length_v) / static_cast<double>(n) : 0.0; }
};

namespace detail {

inline void require_fsm_alphabet(const Alphabet& table, const Alphabet& seq, const char* which) {
  bool ok = table.size() == seq.size();
  if (ok && !table.is_indexed() && !seq.is_indexed()) ok = table == seq;
  if (!ok) fail(ErrorCode::kAlphabetMismatch, std::string("fsm: ") + which + " alphabet does not match the tables");
}

}  // namespace detail

inline EncodingTrace run(const FsmEncoder& e, const Sequence& primary, const Sequence& secondary) {
  require_same_length(primary.size(), secondary.size(), "fsm run");
  detail::require_fsm_alphabet(e.primary, primary.alphabet(), "primary");
  detail::require_fsm_alphabet(e.secondary, secondary.alphabet(), "secondary");
  EncodingTrace t;
  t.n = primary.size();
  std::uint32_t s = e.s1, z = e.z1;
  t.states_s.push_back(s);
  t.states_z.push_back(z);
  for (std::size_t i = 0; i < primary.size(); ++i) {
    const Symbol a = primary[i], b = secondary[i];
    const std::size_t i1 = e.f1_index(s, a), i2 = e.f2_index(z, a, b);
    t.outputs_u.push_back(e.f1[i1]);
    t.outputs_v.push_back(e.f2[i2]);
    t.length_u += e.f1[i1].size();
    t.length_v += e.f2[i2].size();
    s = e.g1[i1];
    z = e.g2[i2];
    t.states_s.push_back(s);
    t.states_z.push_back(z);
  }
  return t;
}

// Output lengths only. An encoder is reduced to its length tables, which is
// all L(u^n) and L(v^n) depend on.
struct FsmLengths {
  std::vector<std::uint32_t> l1, g1, l2, g2;
  std::size_t beta = 0, gamma = 0;
  std::uint32_t s1 = 0, z1 = 0;

  explicit FsmLengths(const FsmEncoder& e)
      : g1(e.g1), g2(e.g2), beta(e.beta()), gamma(e.gamma()), s1(e.s1), z1(e.z1) {
    for (const auto& w : e.f1) l1.push_back(static_cast<std::uint32_t>(w.size()));
    for (const auto& w : e.f2) l2.push_back(static_cast<std::uint32_t>(w.size()));
  }

  std::pair<std::uint64_t, std::uint64_t> run(std::span<const Symbol> a, std::span<const Symbol> b) const {
    std::uint64_t lu = 0, lv = 0;
    std::uint32_t s = s1, z = z1;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::size_t i1 = s * beta + a[i];
      const std::size_t i2 = (z * beta + a[i]) * gamma + b[i];
      lu += l1[i1];
      lv += l2[i2];
      s = g1[i1];
      z = g2[i2];
    }
    return {lu, lv};
  }

  friend bool operator<(const FsmLengths& x, const FsmLengths& y) {
    return std::tie(x.l1, x.g1, x.l2, x.g2, x.beta, x.gamma, x.s1, x.z1) <
           std::tie(y.l1, y.g1, y.l2, y.g2, y.beta, y.gamma, y.s1, y.z1);
  }
};

struct LosslessCounterexample {
  std::size_t k = 0;
  int condition = 1;  // 1: stage-1 tuple collides; 2: combined tuple collides
  std::vector<Symbol> primary_a, secondary_a, primary_b, secondary_b;
};

struct LosslessReport {
  bool lossless = true;
  std::size_t k_checked = 0;
  std::optional<LosslessCounterexample> counterexample;
};

inline constexpr std::uint64_t kLosslessBudget = 10'000'000;

namespace detail {

// Output string packed MSB-first into at most 64 bits.
struct PackedWord {
  std::uint64_t bits = 0;
  std::uint32_t len = 0;
  friend bool operator==(const PackedWord&, const PackedWord&) = default;
  friend auto operator<=>(const PackedWord&, const PackedWord&) = default;
};

inline PackedWord concat(const PackedWord& x, const PackedWord& y) {
  if (y.len == 0) return x;
  if (y.len >= 64) return {y.bits, x.len + y.len};
  return {(x.bits << y.len) | y.bits, x.len + y.len};
}
inline std::string concat(const std::string& x, const std::string& y) { return x + y; }

inline PackedWord to_word(const std::string& w, PackedWord) {
  PackedWord p;
  for (char c : w) p = concat(p, PackedWord{static_cast<std::uint64_t>(c == '1'), 1});
  return p;
}
inline std::string to_word(const std::string& w, const std::string&) { return w; }

template <class Word>
LosslessReport lossless_impl(const FsmEncoder& e, std::size_t k_max) {
  struct Node {
    std::size_t parent;
    Symbol a, b;
    Word u, v;
    std::uint32_t s, z;
  };
  std::vector<Word> w1, w2;
  for (const auto& w : e.f1) w1.push_back(to_word(w, Word{}));
  for (const auto& w : e.f2) w2.push_back(to_word(w, Word{}));
  const std::size_t beta = e.beta(), gamma = e.gamma();
  std::vector<std::vector<Node>> levels{{Node{0, 0, 0, Word{}, Word{}, e.s1, e.z1}}};
  std::vector<std::vector<Node>> levels1 = levels;  // stage-1 prefixes only
  auto history = [](const std::vector<std::vector<Node>>& lv, std::size_t k, std::size_t i, bool primary) {
    std::vector<Symbol> out(k);
    for (std::size_t d = k; d > 0; --d) {
      const Node& n = lv[d][i];
      out[d - 1] = primary ? n.a : n.b;
      i = n.parent;
    }
    return out;
  };
  // Returns the first pair of indices whose keys coincide.
  auto collision = [](const std::vector<Node>& lv, bool with_stage2) -> std::optional<std::pair<std::size_t, std::size_t>> {
    std::vector<std::size_t> order(lv.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto key = [&](std::size_t i) {
      const Node& n = lv[i];
      return std::tie(n.u, n.s, with_stage2 ? n.v : lv[0].v, with_stage2 ? n.z : lv[0].z);
    };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return key(x) < key(y); });
    std::optional<std::pair<std::size_t, std::size_t>> found;
    for (std::size_t i = 1; i < order.size(); ++i) {
      if (key(order[i - 1]) == key(order[i])) {
        std::pair<std::size_t, std::size_t> p{order[i - 1], order[i]};
        if (!found || p < *found) found = p;
      }
    }
    return found;
  };

  LosslessReport report;
  for (std::size_t k = 1; k <= k_max; ++k) {
    std::vector<Node> next1;
    next1.reserve(levels1.back().size() * beta);
    for (std::size_t pi = 0; pi < levels1.back().size(); ++pi) {
      const Node& p = levels1.back()[pi];
      for (Symbol a = 0; a < beta; ++a) {
        const std::size_t i1 = e.f1_index(p.s, a);
        next1.push_back(Node{pi, a, 0, concat(p.u, w1[i1]), Word{}, e.g1[i1], 0});
      }
    }
    levels1.push_back(std::move(next1));
    if (auto c = collision(levels1.back(), false)) {
      report.lossless = false;
      report.k_checked = k;
      report.counterexample =
          LosslessCounterexample{k, 1, history(levels1, k, c->first, true), {}, history(levels1, k, c->second, true), {}};
      return report;
    }

    std::vector<Node> next;
    next.reserve(levels.back().size() * beta * gamma);
    for (std::size_t pi = 0; pi < levels.back().size(); ++pi) {
      const Node& p = levels.back()[pi];
      for (Symbol a = 0; a < beta; ++a) {
        const std::size_t i1 = e.f1_index(p.s, a);
        for (Symbol b = 0; b < gamma; ++b) {
          const std::size_t i2 = e.f2_index(p.z, a, b);
          next.push_back(Node{pi, a, b, concat(p.u, w1[i1]), concat(p.v, w2[i2]), e.g1[i1], e.g2[i2]});
        }
      }
    }
    levels.push_back(std::move(next));
    if (auto c = collision(levels.back(), true)) {
      report.lossless = false;
      report.k_checked = k;
      report.counterexample =
          LosslessCounterexample{k, 2, history(levels, k, c->first, true), history(levels, k, c->first, false),
                                 history(levels, k, c->second, true), history(levels, k, c->second, false)};
      return report;
    }
    report.k_checked = k;
  }
  return report;
}

}  // namespace detail

// Bounded certificate: checks every input length k <= k_max. For each k the
// stage-1 tuple (f1(s1, x^k), g1(s1, x^k)) must determine x^k, and
// (f1(s1, x^k), f2(z1, x^k, y^k), g1(s1, x^k), g2(z1, x^k, y^k)) must determine
// (x^k, y^k). The counterexample is the lexicographically first colliding
// pair at the failing depth.
inline LosslessReport is_information_lossless(const FsmEncoder& e, std::size_t k_max) {
  e.validate();
  if (k_max == 0) fail(ErrorCode::kInvalidArgument, "k_max must be positive");
  const std::uint64_t radix = static_cast<std::uint64_t>(e.beta()) * e.gamma();
  std::uint64_t total = 0, level = 1;
  for (std::size_t k = 1; k <= k_max; ++k) {
    if (level > kLosslessBudget / radix) fail(ErrorCode::kBudgetExceeded, "losslessness enumeration exceeds budget");
    level *= radix;
    total += level;
    if (total > kLosslessBudget) fail(ErrorCode::kBudgetExceeded, "losslessness enumeration exceeds budget");
  }
  std::size_t longest = 0;
  for (const auto& w : e.f1) longest = std::max(longest, w.size());
  for (const auto& w : e.f2) longest = std::max(longest, w.size());
  if (longest * k_max <= 64) return detail::lossless_impl<detail::PackedWord>(e, k_max);
  return detail::lossless_impl<std::string>(e, k_max);
}

// Largest certificate depth whose enumeration fits the budget, capped at cap.
inline std::size_t default_lossless_depth(const FsmEncoder& e, std::size_t cap = 8) {
  const std::uint64_t radix = static_cast<std::uint64_t>(e.beta()) * e.gamma();
  std::uint64_t total = 0, level = 1;
  std::size_t k = 0;
  while (k < cap) {
    if (radix > 1 && level > kLosslessBudget / radix) break;
    const std::uint64_t nl = level * radix;
    if (total + nl > kLosslessBudget) break;
    level = nl;
    total += nl;
    ++k;
  }
  return std::max<std::size_t>(k, 1);
}

struct KraftReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
  std::size_t block_len = 1;
  std::uint64_t q = 1;
};

// Right-hand side q^4 (1 + log(1 + beta^l gamma^l / q^4)).
inline double kraft_rhs(std::uint64_t q, std::size_t l, std::size_t beta, std::size_t gamma) {
  return std::exp2(static_cast<double>(l) * kraft_penalty(q, l, beta, gamma));
}

// Sum over all (x^l, y^l) of 2^-(min_s L[f1(s, x^l)] + min_z L[f2(z, x^l, y^l)]).
// q defaults to the encoder's per-stage state budget.
inline KraftReport kraft_check(const FsmEncoder& e, std::size_t l, std::optional<std::uint64_t> q = std::nullopt) {
  e.validate();
  if (l == 0) fail(ErrorCode::kInvalidArgument, "block length must be positive");
  const std::size_t beta = e.beta(), gamma = e.gamma();
  double pairs = std::pow(static_cast<double>(beta * gamma), static_cast<double>(l));
  pairs *= static_cast<double>(std::max(e.states_s.size(), e.states_z.size()));
  if (pairs > static_cast<double>(kLosslessBudget)) fail(ErrorCode::kBudgetExceeded, "kraft enumeration exceeds budget");

  std::vector<Symbol> a(l, 0), b(l, 0);
  auto min_l1 = [&]() {
    std::uint64_t best = UINT64_MAX;
    for (std::uint32_t s0 = 0; s0 < e.states_s.size(); ++s0) {
      std::uint64_t len = 0;
      std::uint32_t s = s0;
      for (Symbol x : a) {
        len += e.f1[e.f1_index(s, x)].size();
        s = e.g1[e.f1_index(s, x)];
      }
      best = std::min(best, len);
    }
    return best;
  };
  auto min_l2 = [&]() {
    std::uint64_t best = UINT64_MAX;
    for (std::uint32_t z0 = 0; z0 < e.states_z.size(); ++z0) {
      std::uint64_t len = 0;
      std::uint32_t z = z0;
      for (std::size_t i = 0; i < l; ++i) {
        const std::size_t idx = e.f2_index(z, a[i], b[i]);
        len += e.f2[idx].size();
        z = e.g2[idx];
      }
      best = std::min(best, len);
    }
    return best;
  };
  auto advance = [](std::vector<Symbol>& v, std::size_t radix) {
    for (std::size_t i = v.size(); i-- > 0;) {
      if (++v[i] < radix) return true;
      v[i] = 0;
    }
    return false;
  };

  KraftReport r;
  r.block_len = l;
  r.q = q.value_or(e.q);
  do {
    const std::uint64_t m1 = min_l1();
    std::fill(b.begin(), b.end(), 0);
    do {
      r.lhs += std::exp2(-static_cast<double>(m1 + min_l2()));
    } while (advance(b, gamma));
  } while (advance(a, beta));
  r.rhs = kraft_rhs(r.q, l, beta, gamma);
  r.holds = r.lhs <= r.rhs;
  return r;
}

// Per-input quantities of the converse chain, shared across encoders.
struct ConverseInputs {
  std::uint64_t n = 0;
  std::uint64_t q = 1;
  std::uint64_t phrase_count = 0;
  double rho_lz = 0.0;
  double rho_cond = 0.0;
  double eps_n = 0.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  std::uint64_t delta2_block_len = 1;
};

inline ConverseInputs prepare_converse(const Sequence& primary, const Sequence& secondary, std::uint64_t q,
                                       const EpsSpec& eps = {}) {
  require_same_length(primary.size(), secondary.size(), "converse_check");
  const std::uint64_t n = primary.size();
  const std::size_t beta = primary.alphabet().size(), gamma = secondary.alphabet().size();
  ConverseInputs in;
  in.n = n;
  in.q = q;
  const ParseResult p = parse(primary);
  in.phrase_count = p.phrase_count;
  in.rho_lz = p.rho_lz;
  in.rho_cond = rho_cond(secondary, primary);
  in.eps_n = eps_n(n, beta, eps);
  in.delta1 = delta1(q, n, beta, in.eps_n);
  const Delta2 d2 = delta2(q, n, beta, gamma, in.eps_n);
  in.delta2 = d2.value;
  in.delta2_block_len = d2.argmin_block_len;
  return in;
}

struct ConverseReport {
  bool applicable = true;
  std::size_t lossless_depth = 0;
  double rho1 = 0.0;
  double rho12 = 0.0;
  double bound_i = 0.0;    // rho_LZ - Delta1
  double bound_ii = 0.0;   // rho_LZ + rho_cond - Delta2
  double bound_iii = 0.0;  // (c + q^2)/n log((c + q^2)/(4 q^2)) + 2 q^2 / n
  bool holds_i = true;
  bool holds_ii = true;
  bool holds_iii = true;
  ConverseInputs inputs;

  bool holds() const { return holds_i && holds_ii && holds_iii; }
};

inline ConverseReport converse_check(const ConverseInputs& in, std::uint64_t length_u, std::uint64_t length_v) {
  ConverseReport r;
  r.inputs = in;
  const double n = static_cast<double>(in.n);
  r.rho1 = static_cast<double>(length_u) / n;
  r.rho12 = static_cast<double>(length_u + length_v) / n;
  const double q2 = static_cast<double>(in.q) * static_cast<double>(in.q);
  const double cq = static_cast<double>(in.phrase_count) + q2;
  r.bound_i = in.rho_lz - in.delta1;
  r.bound_ii = in.rho_lz + in.rho_cond - in.delta2;
  r.bound_iii = cq / n * std::log2(cq / (4.0 * q2)) + 2.0 * q2 / n;
  r.holds_i = r.rho1 >= r.bound_i - kInequalityTolerance;
  r.holds_ii = r.rho12 >= r.bound_ii - kInequalityTolerance;
  r.holds_iii = r.rho1 >= r.bound_iii - kInequalityTolerance;
  return r;
}

// Runs e on the pair after certifying losslessness to depth k_max; a failed
// certificate marks the report not applicable.
inline ConverseReport converse_check(const FsmEncoder& e, const Sequence& primary, const Sequence& secondary,
                                     std::size_t k_max, const EpsSpec& eps = {}) {
  const LosslessReport cert = is_information_lossless(e, k_max);
  if (!cert.lossless) {
    ConverseReport r;
    r.applicable = false;
    r.lossless_depth = cert.k_checked;
    return r;
  }
  const EncodingTrace t = run(e, primary, secondary);
  ConverseReport r = converse_check(prepare_converse(primary, secondary, e.q, eps), t.length_u, t.length_v);
  r.lossless_depth = cert.k_checked;
  return r;
}

// Calls visit(e) for every 1-state encoder over the given alphabets whose
// outputs are binary strings of length <= max_len (including the empty one).
inline void for_each_one_state_encoder(const Alphabet& primary, const Alphabet& secondary, std::size_t max_len,
                                       const std::function<void(const FsmEncoder&)>& visit) {
  std::vector<std::string> words{""};
  for (std::size_t len = 1; len <= max_len; ++len) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
      std::string w(len, '0');
      for (std::size_t i = 0; i < len; ++i) w[len - 1 - i] = ((v >> i) & 1U) ? '1' : '0';
      words.push_back(w);
    }
  }
  FsmEncoder e;
  e.primary = primary;
  e.secondary = secondary;
  e.resize_tables();
  const std::size_t cells = e.f1.size() + e.f2.size();
  std::vector<std::size_t> choice(cells, 0);
  while (true) {
    for (std::size_t i = 0; i < e.f1.size(); ++i) e.f1[i] = words[choice[i]];
    for (std::size_t i = 0; i < e.f2.size(); ++i) e.f2[i] = words[choice[e.f1.size() + i]];
    visit(e);
    std::size_t i = cells;
    while (i-- > 0) {
      if (++choice[i] < words.size()) break;
      choice[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) return;
  }
}

// ---- text format ----------------------------------------------------------

namespace detail {

inline std::vector<std::string> fsm_tokens(std::string_view line, std::size_t lineno) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    } else if (line[i] == '"') {
      const std::size_t end = line.find('"', i + 1);
      if (end == std::string_view::npos) fail(ErrorCode::kFormat, "fsm line " + std::to_string(lineno) + ": unterminated string");
      out.emplace_back(line.substr(i, end - i + 1));
      i = end + 1;
    } else {
      std::size_t end = i;
      while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
      out.emplace_back(line.substr(i, end - i));
      i = end;
    }
  }
  return out;
}

}  // namespace detail

// Line-oriented format. '#' starts a comment. Sections:
//   [S] / [Z]    state names, whitespace separated
//   [f1]         <s> <a> "<bits>"
//   [g1]         <s> <a> <next s>
//   [f2]         <z> <a> <b> "<bits>"
//   [g2]         <z> <a> <b> <next z>
//   [init]       primary = <symbols...>, secondary = <symbols...>,
//                s1 = <s>, z1 = <z>, q = <int> (defaults to the larger state count)
// Every table entry must appear exactly once.
inline FsmEncoder FsmEncoder::parse(std::string_view text) {
  struct Line {
    std::size_t no;
    std::vector<std::string> tok;
  };
  std::map<std::string, std::vector<Line>> sections;
  std::string current;
  std::size_t lineno = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    std::string_view line = raw;
    bool in_quote = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') in_quote = !in_quote;
      if (line[i] == '#' && !in_quote) {
        line = line.substr(0, i);
        break;
      }
    }
    auto tok = detail::fsm_tokens(line, lineno);
    if (tok.empty()) continue;
    if (tok.size() == 1 && tok[0].size() > 2 && tok[0].front() == '[' && tok[0].back() == ']') {
      current = tok[0].substr(1, tok[0].size() - 2);
      static const char* kKnown[] = {"S", "Z", "f1", "g1", "f2", "g2", "init"};
      if (std::find(std::begin(kKnown), std::end(kKnown), current) == std::end(kKnown)) {
        fail(ErrorCode::kFormat, "fsm line " + std::to_string(lineno) + ": unknown section [" + current + "]");
      }
      if (sections.count(current)) fail(ErrorCode::kFormat, "fsm: duplicate section [" + current + "]");
      sections[current];
      continue;
    }
    if (current.empty()) fail(ErrorCode::kFormat, "fsm line " + std::to_string(lineno) + ": entry outside a section");
    sections[current].push_back({lineno, std::move(tok)});
  }
  for (const char* name : {"S", "Z", "f1", "g1", "f2", "g2", "init"}) {
    if (!sections.count(name)) fail(ErrorCode::kFormat, std::string("fsm: missing section [") + name + "]");
  }

  auto where = [](const Line& l) { return "fsm line " + std::to_string(l.no) + ": "; };
  FsmEncoder e;
  std::optional<std::uint64_t> q;
  std::optional<std::string> s1, z1;
  std::optional<Alphabet> pa, sa;
  for (const Line& l : sections["init"]) {
    if (l.tok.size() < 3 || l.tok[1] != "=") fail(ErrorCode::kFormat, where(l) + "expected 'key = value'");
    const std::string& key = l.tok[0];
    std::vector<std::string> vals(l.tok.begin() + 2, l.tok.end());
    if (key == "primary" || key == "secondary") {
      (key == "primary" ? pa : sa) = Alphabet(vals);
    } else if (vals.size() != 1) {
      fail(ErrorCode::kFormat, where(l) + "expected a single value for " + key);
    } else if (key == "s1") {
      s1 = vals[0];
    } else if (key == "z1") {
      z1 = vals[0];
    } else if (key == "q") {
      std::uint64_t v = 0;
      auto [p, ec] = std::from_chars(vals[0].data(), vals[0].data() + vals[0].size(), v);
      if (ec != std::errc() || p != vals[0].data() + vals[0].size() || v == 0) {
        fail(ErrorCode::kFormat, where(l) + "q must be a positive integer");
      }
      q = v;
    } else {
      fail(ErrorCode::kFormat, where(l) + "unknown key '" + key + "'");
    }
  }
  if (!pa || !sa) fail(ErrorCode::kFormat, "fsm: [init] must declare primary and secondary alphabets");
  e.primary = *pa;
  e.secondary = *sa;

  auto read_states = [&](const char* name) {
    std::vector<std::string> out;
    std::map<std::string, std::uint32_t> seen;
    for (const Line& l : sections[name]) {
      for (const auto& t : l.tok) {
        if (!seen.emplace(t, static_cast<std::uint32_t>(out.size())).second) {
          fail(ErrorCode::kFormat, where(l) + "duplicate state '" + t + "'");
        }
        out.push_back(t);
      }
    }
    if (out.empty()) fail(ErrorCode::kFormat, std::string("fsm: [") + name + "] is empty");
    return std::make_pair(out, seen);
  };
  auto [ss, s_index] = read_states("S");
  auto [zz, z_index] = read_states("Z");
  e.states_s = ss;
  e.states_z = zz;
  e.q = q.value_or(std::max(ss.size(), zz.size()));
  e.resize_tables();

  auto state = [&](const Line& l, const std::map<std::string, std::uint32_t>& idx, const std::string& t) {
    auto it = idx.find(t);
    if (it == idx.end()) fail(ErrorCode::kFormat, where(l) + "unknown state '" + t + "'");
    return it->second;
  };
  auto symbol = [&](const Line& l, const Alphabet& a, const std::string& t) {
    auto v = a.index_of(t);
    if (!v) fail(ErrorCode::kFormat, where(l) + "unknown symbol '" + t + "'");
    return *v;
  };
  auto bits = [&](const Line& l, const std::string& t) {
    if (t.size() < 2 || t.front() != '"' || t.back() != '"') fail(ErrorCode::kFormat, where(l) + "output must be a quoted bit string");
    std::string w = t.substr(1, t.size() - 2);
    if (w.find_first_not_of("01") != std::string::npos) fail(ErrorCode::kFormat, where(l) + "output must contain only 0 and 1");
    return w;
  };

  std::vector<char> seen_f1(e.f1.size()), seen_g1(e.g1.size()), seen_f2(e.f2.size()), seen_g2(e.g2.size());
  auto mark = [&](std::vector<char>& seen, std::size_t i, const Line& l) {
    if (seen[i]) fail(ErrorCode::kFormat, where(l) + "duplicate table entry");
    seen[i] = 1;
  };
  for (const Line& l : sections["f1"]) {
    if (l.tok.size() != 3) fail(ErrorCode::kFormat, where(l) + "f1 entry needs <s> <a> \"bits\"");
    const std::size_t i = e.f1_index(state(l, s_index, l.tok[0]), symbol(l, e.primary, l.tok[1]));
    mark(seen_f1, i, l);
    e.f1[i] = bits(l, l.tok[2]);
  }
  for (const Line& l : sections["g1"]) {
    if (l.tok.size() != 3) fail(ErrorCode::kFormat, where(l) + "g1 entry needs <s> <a> <next>");
    const std::size_t i = e.f1_index(state(l, s_index, l.tok[0]), symbol(l, e.primary, l.tok[1]));
    mark(seen_g1, i, l);
    e.g1[i] = state(l, s_index, l.tok[2]);
  }
  for (const Line& l : sections["f2"]) {
    if (l.tok.size() != 4) fail(ErrorCode::kFormat, where(l) + "f2 entry needs <z> <a> <b> \"bits\"");
    const std::size_t i = e.f2_index(state(l, z_index, l.tok[0]), symbol(l, e.primary, l.tok[1]),
                                     symbol(l, e.secondary, l.tok[2]));
    mark(seen_f2, i, l);
    e.f2[i] = bits(l, l.tok[3]);
  }
  for (const Line& l : sections["g2"]) {
    if (l.tok.size() != 4) fail(ErrorCode::kFormat, where(l) + "g2 entry needs <z> <a> <b> <next>");
    const std::size_t i = e.f2_index(state(l, z_index, l.tok[0]), symbol(l, e.primary, l.tok[1]),
                                     symbol(l, e.secondary, l.tok[2]));
    mark(seen_g2, i, l);
    e.g2[i] = state(l, z_index, l.tok[3]);
  }
  for (const auto* seen : {&seen_f1, &seen_g1, &seen_f2, &seen_g2}) {
    if (std::find(seen->begin(), seen->end(), 0) != seen->end()) fail(ErrorCode::kFormat, "fsm: table is not total");
  }
  if (s1 && !s_index.count(*s1)) fail(ErrorCode::kFormat, "fsm: unknown s1 state '" + *s1 + "'");
  if (z1 && !z_index.count(*z1)) fail(ErrorCode::kFormat, "fsm: unknown z1 state '" + *z1 + "'");
  e.s1 = s1 ? s_index.at(*s1) : 0;
  e.z1 = z1 ? z_index.at(*z1) : 0;
  e.validate();
  return e;
}

inline std::string FsmEncoder::to_text() const {
  validate();
  std::ostringstream out;
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i];
    return s;
  };
  out << "[S]\n" << join(states_s) << "\n[Z]\n" << join(states_z) << "\n[f1]\n";
  for (std::uint32_t s = 0; s < states_s.size(); ++s)
    for (Symbol a = 0; a < beta(); ++a)
      out << states_s[s] << ' ' << primary.symbol(a) << " \"" << f1[f1_index(s, a)] << "\"\n";
  out << "[g1]\n";
  for (std::uint32_t s = 0; s < states_s.size(); ++s)
    for (Symbol a = 0; a < beta(); ++a)
      out << states_s[s] << ' ' << primary.symbol(a) << ' ' << states_s[g1[f1_index(s, a)]] << '\n';
  out << "[f2]\n";
  for (std::uint32_t z = 0; z < states_z.size(); ++z)
    for (Symbol a = 0; a < beta(); ++a)
      for (Symbol b = 0; b < gamma(); ++b)
        out << states_z[z] << ' ' << primary.symbol(a) << ' ' << secondary.symbol(b) << " \""
            << f2[f2_index(z, a, b)] << "\"\n";
  out << "[g2]\n";
  for (std::uint32_t z = 0; z < states_z.size(); ++z)
    for (Symbol a = 0; a < beta(); ++a)
      for (Symbol b = 0; b < gamma(); ++b)
        out << states_z[z] << ' ' << primary.symbol(a) << ' ' << secondary.symbol(b) << ' '
            << states_z[g2[f2_index(z, a, b)]] << '\n';
  out << "[init]\n"
      << "primary = " << join(primary.symbols()) << '\n'
      << "secondary = " << join(secondary.symbols()) << '\n'
      << "s1 = " << states_s[s1] << '\n'
      << "z1 = " << states_z[z1] << '\n'
      << "q = " << q << '\n';
  return out.str();
}

}  // namespace srlz

#endif  // SRLZ_FSM_HPP_
