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

#ifndef SRLZ_EMPIRICS_HPP_
#define SRLZ_EMPIRICS_HPP_

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "srlz/bounds.hpp"
#include "srlz/cond_lz.hpp"
#include "srlz/error.hpp"
#include "srlz/lz.hpp"
#include "srlz/sequence.hpp"

namespace srlz {

using Block = std::vector<Symbol>;

// Empirical distribution of non-overlapping l-blocks of a sequence or of a
// pair of sequences, with entropies in bits per block.
struct BlockEmpirics {
  std::size_t block_len = 1;
  std::map<std::pair<Block, Block>, double> joint_dist;  // secondary block empty when absent
  double h_joint = 0.0;
  double h_primary = 0.0;
  double h_cond = 0.0;

  std::map<Block, double> primary_dist() const {
    std::map<Block, double> out;
    for (const auto& [key, p] : joint_dist) out[key.first] += p;
    return out;
  }
};

namespace detail {

inline double entropy_term(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

inline void require_block_len(std::size_t n, std::size_t l) {
  if (l == 0 || n % l != 0) {
    fail(ErrorCode::kBlockLength, "block length " + std::to_string(l) + " does not divide n = " + std::to_string(n));
  }
}

}  // namespace detail

inline BlockEmpirics block_empirics(const Sequence& primary, const std::optional<Sequence>& secondary,
                                    std::size_t l) {
  const std::size_t n = primary.size();
  if (secondary) require_same_length(n, secondary->size(), "block_empirics");
  detail::require_block_len(n, l);
  BlockEmpirics e;
  e.block_len = l;
  if (n == 0) return e;

  std::map<std::pair<Block, Block>, std::uint64_t> counts;
  std::map<Block, std::uint64_t> primary_counts;
  const auto x = primary.data();
  for (std::size_t i = 0; i < n; i += l) {
    Block a(x.begin() + i, x.begin() + i + l);
    Block b;
    if (secondary) {
      const auto y = secondary->data();
      b.assign(y.begin() + i, y.begin() + i + l);
    }
    ++primary_counts[a];
    ++counts[{std::move(a), std::move(b)}];
  }
  const double blocks = static_cast<double>(n / l);
  for (const auto& [key, k] : counts) {
    const double p = static_cast<double>(k) / blocks;
    e.joint_dist.emplace(key, p);
    e.h_joint += detail::entropy_term(p);
    const double pa = static_cast<double>(primary_counts.at(key.first)) / blocks;
    e.h_cond += p * std::log2(pa / p);
  }
  for (const auto& [a, k] : primary_counts) e.h_primary += detail::entropy_term(static_cast<double>(k) / blocks);
  return e;
}

inline BlockEmpirics block_empirics(const Sequence& primary, std::size_t l) {
  return block_empirics(primary, std::nullopt, l);
}

struct InequalityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
  double slack = 0.0;  // delta_n(l) or delta'_n(l)
  std::size_t block_len = 1;
  double eps_n = 0.0;
};

// H(X^l)/l >= rho_LZ(x) - delta_n(l).
inline InequalityReport check_entropy_inequality(const Sequence& seq, std::size_t l, const EpsSpec& eps = {}) {
  const std::size_t n = seq.size();
  detail::require_block_len(n, l);
  InequalityReport r;
  r.block_len = l;
  r.eps_n = eps_n(n, seq.alphabet().size(), eps);
  r.slack = delta_n(l, n, seq.alphabet().size(), r.eps_n);
  r.lhs = block_empirics(seq, l).h_primary / static_cast<double>(l);
  r.rhs = rho_lz(seq) - r.slack;
  r.holds = r.lhs >= r.rhs - kInequalityTolerance;
  return r;
}

// H(Y^l | X^l)/l >= rho_LZ(y | x) - delta'_n(l).
inline InequalityReport check_cond_entropy_inequality(const Sequence& secondary, const Sequence& primary,
                                                      std::size_t l, const EpsSpec& eps = {}) {
  const std::size_t n = primary.size();
  require_same_length(n, secondary.size(), "check_cond_entropy_inequality");
  detail::require_block_len(n, l);
  const std::size_t beta = primary.alphabet().size();
  InequalityReport r;
  r.block_len = l;
  r.eps_n = eps_n(n, beta, eps);
  r.slack = delta_n_prime(l, n, beta, secondary.alphabet().size(), r.eps_n);
  r.lhs = block_empirics(primary, secondary, l).h_cond / static_cast<double>(l);
  r.rhs = rho_cond(secondary, primary) - r.slack;
  r.holds = r.lhs >= r.rhs - kInequalityTolerance;
  return r;
}

}  // namespace srlz

#endif  // SRLZ_EMPIRICS_HPP_
