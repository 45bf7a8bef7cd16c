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

#ifndef SRLZ_BOUNDS_HPP_
#define SRLZ_BOUNDS_HPP_

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "srlz/error.hpp"

// Slack and penalty terms of the finite-state converse and of the LZ code
// length bounds. All logarithms are base 2. Terms that overflow a double are
// returned as +inf; std::isinf() is the overflow flag.

namespace srlz {

enum class EpsMode { kDefault, kZero, kCustom };

// How the vanishing term eps_n of the LZ78 phrase-count lemma is instantiated.
struct EpsSpec {
  EpsMode mode = EpsMode::kDefault;
  double custom = 0.0;

  static EpsSpec zero() { return {EpsMode::kZero, 0.0}; }
  static EpsSpec constant(double v) {
    if (!(v >= 0.0 && v < 1.0)) fail(ErrorCode::kInvalidArgument, "eps_n must lie in [0, 1)");
    return {EpsMode::kCustom, v};
  }

  // "default", "zero", or a number in [0, 1). "paper-default" and
  // "zero-override" are accepted as aliases.
  static EpsSpec parse(std::string_view text) {
    if (text == "default" || text == "paper-default") return {};
    if (text == "zero" || text == "zero-override") return zero();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      fail(ErrorCode::kInvalidArgument, "unknown eps mode '" + std::string(text) + "'");
    }
    return constant(v);
  }

  std::string name() const {
    switch (mode) {
      case EpsMode::kDefault: return "default";
      case EpsMode::kZero: return "zero";
      case EpsMode::kCustom: {
        char buf[32];
        auto res = std::to_chars(buf, buf + sizeof buf, custom);
        return "custom:" + std::string(buf, res.ptr);
      }
    }
    return "?";
  }
};

namespace detail {
inline void require_n(std::uint64_t n) {
  if (n < 2) fail(ErrorCode::kInvalidArgument, "bound terms need n >= 2");
}
inline double lg(double x) { return std::log2(x); }
}  // namespace detail

// Default: min(0.999, (log log(beta n) + 4) / log n).
inline double eps_n(std::uint64_t n, std::size_t beta, const EpsSpec& spec = {}) {
  detail::require_n(n);
  switch (spec.mode) {
    case EpsMode::kZero: return 0.0;
    case EpsMode::kCustom: return spec.custom;
    case EpsMode::kDefault: break;
  }
  const double ln = detail::lg(static_cast<double>(n));
  const double v = (detail::lg(detail::lg(static_cast<double>(beta) * static_cast<double>(n))) + 4.0) / ln;
  return std::min(0.999, v);
}

// Delta_1(q, n) = log(4q^2) log(beta) / ((1 - eps) log n) + q^2 log(4q^2) / n.
inline double delta1(std::uint64_t q, std::uint64_t n, std::size_t beta, double eps) {
  detail::require_n(n);
  const double q2 = static_cast<double>(q) * static_cast<double>(q);
  const double l4q2 = detail::lg(4.0 * q2);
  return l4q2 * detail::lg(static_cast<double>(beta)) / ((1.0 - eps) * detail::lg(static_cast<double>(n))) +
         q2 * l4q2 / static_cast<double>(n);
}

namespace detail {

// log(4 A^2) log(beta) / ((1 - eps) log n) + A^2 log(4 A^2) / n + 1/l, with
// log A = log_states passed in so that A = beta^l or (beta gamma)^l never has
// to be formed.
inline double block_entropy_gap(double log_states, std::uint64_t l, std::uint64_t n, std::size_t beta,
                                double eps) {
  const double log_4a2 = 2.0 + 2.0 * log_states;
  const double ln = lg(static_cast<double>(n));
  const double t1 = log_4a2 * lg(static_cast<double>(beta)) / ((1.0 - eps) * ln);
  const double t2 = std::exp2(2.0 * log_states - ln) * log_4a2;
  return t1 + t2 + 1.0 / static_cast<double>(l);
}

}  // namespace detail

// delta_n(l) of the block-entropy versus LZ-complexity inequality.
inline double delta_n(std::uint64_t l, std::uint64_t n, std::size_t beta, double eps) {
  detail::require_n(n);
  if (l == 0) fail(ErrorCode::kInvalidArgument, "block length must be positive");
  return detail::block_entropy_gap(static_cast<double>(l) * detail::lg(static_cast<double>(beta)), l, n, beta,
                                   eps);
}

// delta'_n(l): as delta_n(l) with beta^l replaced by (beta gamma)^l. The
// lone log(beta) factor is kept.
inline double delta_n_prime(std::uint64_t l, std::uint64_t n, std::size_t beta, std::size_t gamma, double eps) {
  detail::require_n(n);
  if (l == 0) fail(ErrorCode::kInvalidArgument, "block length must be positive");
  const double log_states = static_cast<double>(l) * detail::lg(static_cast<double>(beta) * static_cast<double>(gamma));
  return detail::block_entropy_gap(log_states, l, n, beta, eps);
}

// (1/l) log[q^4 (1 + log(1 + beta^l gamma^l / q^4))], computed in logs.
inline double kraft_penalty(std::uint64_t q, std::uint64_t l, std::size_t beta, std::size_t gamma) {
  const double log_q4 = 4.0 * detail::lg(static_cast<double>(q));
  const double log_ratio = static_cast<double>(l) * detail::lg(static_cast<double>(beta) * static_cast<double>(gamma)) - log_q4;
  // log2(1 + 2^x) without overflow.
  const double log1p_ratio = log_ratio > 60.0 ? log_ratio + std::log2(1.0 + std::exp2(-log_ratio))
                                              : std::log2(1.0 + std::exp2(log_ratio));
  return (log_q4 + detail::lg(1.0 + log1p_ratio)) / static_cast<double>(l);
}

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

struct Delta2 {
  double value = 0.0;
  std::uint64_t argmin_block_len = 1;
};

// Delta_2(q, n) = min over l | n of
//   delta_n(l) + delta'_n(l) + (1/l) log[q^4 (1 + log(1 + beta^l gamma^l / q^4))].
// Ties keep the smallest l.
inline Delta2 delta2(std::uint64_t q, std::uint64_t n, std::size_t beta, std::size_t gamma, double eps) {
  detail::require_n(n);
  Delta2 best{std::numeric_limits<double>::infinity(), 1};
  for (std::uint64_t l : divisors(n)) {
    const double v = delta_n(l, n, beta, eps) + delta_n_prime(l, n, beta, gamma, eps) + kraft_penalty(q, l, beta, gamma);
    if (v < best.value) best = {v, l};
  }
  return best;
}

// Per-symbol slack of the LZ78 code length:
//   eps(n) = [log e + n log(beta) log(2 beta) / ((1 - eps_n) log n) + log(2 beta (n + 1))] / n.
inline double eps_slack(std::uint64_t n, std::size_t beta, double eps) {
  detail::require_n(n);
  const double nd = static_cast<double>(n);
  const double b = static_cast<double>(beta);
  const double v = std::log2(std::exp(1.0)) + nd * detail::lg(b) * detail::lg(2.0 * b) / ((1.0 - eps) * detail::lg(nd)) +
                   detail::lg(2.0 * b * (nd + 1.0));
  return v / nd;
}

inline double eps_slack(std::uint64_t n, std::size_t beta, const EpsSpec& spec = {}) {
  return eps_slack(n, beta, eps_n(n, beta, spec));
}

// Scale K of the conditional-code slack eps_hat(n) = K log(log n) / log n.
// Smallest power of two for which every stream of the seeded calibration
// corpus (tools/calibrate_eps_hat) meets n rho_cond + n eps_hat(n).
inline constexpr double kEpsHatScale = 16.0;

inline double eps_hat(std::uint64_t n, double scale = kEpsHatScale) {
  detail::require_n(n);
  const double ln = detail::lg(static_cast<double>(n));
  return scale * detail::lg(ln) / ln;
}

// Absolute tolerance of every numerically verified inequality.
inline constexpr double kInequalityTolerance = 1e-12;

// Evaluation context for the bound terms: state budget and eps_n mode.
struct BoundConfig {
  std::uint64_t q = 1;
  EpsSpec eps;
};

}  // namespace srlz

#endif  // SRLZ_BOUNDS_HPP_
