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

#ifndef SRLZ_TESTS_SUPPORT_CORPUS_HPP_
#define SRLZ_TESTS_SUPPORT_CORPUS_HPP_

// Seeded random corpus shared by the tests, the acceptance gate and the
// eps_hat calibration tool.

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "srlz.hpp"

namespace srlz::testing {

inline constexpr std::size_t kAlphabetSizes[] = {2, 4, 26};
inline constexpr std::uint64_t kMinLength = 16;
inline constexpr std::uint64_t kMaxLength = 4096;

// Source shapes: i.i.d. uniform, sticky Markov (long runs), noisy periodic.
inline std::vector<Symbol> draw(std::mt19937_64& rng, std::size_t alphabet, std::uint64_t n, int shape) {
  std::vector<Symbol> out(n);
  std::uniform_int_distribution<Symbol> sym(0, static_cast<Symbol>(alphabet - 1));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::uint64_t period = 1 + rng() % 12;
  for (std::uint64_t i = 0; i < n; ++i) {
    switch (shape) {
      case 0:
        out[i] = sym(rng);
        break;
      case 1:
        out[i] = (i > 0 && unit(rng) < 0.9) ? out[i - 1] : sym(rng);
        break;
      default:
        out[i] = (i >= period && unit(rng) < 0.95) ? out[i - period] : sym(rng);
        break;
    }
  }
  return out;
}

// A noisy copy of `base` mapped into an alphabet of the given size.
inline std::vector<Symbol> correlate(std::mt19937_64& rng, const std::vector<Symbol>& base, std::size_t alphabet,
                                     double noise) {
  std::vector<Symbol> out(base.size());
  std::uniform_int_distribution<Symbol> sym(0, static_cast<Symbol>(alphabet - 1));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < base.size(); ++i) {
    out[i] = unit(rng) < noise ? sym(rng) : static_cast<Symbol>(base[i] % alphabet);
  }
  return out;
}

struct Case {
  std::uint64_t index = 0;
  Sequence primary;    // x^
  Sequence secondary;  // x~
  Sequence central;    // x_ (MD central reproduction)
  Sequence aux;        // u
};

inline Case make_case(std::uint64_t seed, std::uint64_t index) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + index);
  const std::size_t beta = kAlphabetSizes[rng() % 3];
  const std::size_t gamma = kAlphabetSizes[rng() % 3];
  const std::uint64_t n = kMinLength + rng() % (kMaxLength - kMinLength + 1);
  const int shape = static_cast<int>(rng() % 3);
  const double noise = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  Case c;
  c.index = index;
  const auto x = draw(rng, beta, n, shape);
  c.primary = Sequence(Alphabet::indexed(beta), x);
  c.secondary = Sequence(Alphabet::indexed(gamma), correlate(rng, x, gamma, noise));
  c.central = Sequence(Alphabet::indexed(beta), correlate(rng, x, beta, noise / 2));
  c.aux = coarse_auxiliary(c.primary);
  return c;
}

inline std::vector<Case> make_corpus(std::uint64_t seed, std::uint64_t count) {
  std::vector<Case> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(make_case(seed, i));
  return out;
}

// Every conditional stream the codecs produce for a case, with the
// conditional complexity it is measured against.
struct CondStream {
  const char* what;
  std::uint64_t bits;
  std::uint64_t n;
  double rho_cond;
};

inline void for_each_cond_stream(const Case& c, const std::function<void(const CondStream&)>& visit) {
  const std::uint64_t n = c.primary.size();
  auto emit = [&](const char* what, const Sequence& target, const Sequence& side) {
    visit({what, cond_encode(target, side).payload_bits, n, rho_cond(target, side)});
  };
  emit("secondary|primary", c.secondary, c.primary);
  emit("primary|aux", c.primary, c.aux);
  emit("secondary|aux", c.secondary, c.aux);
  const Sequence pair[] = {c.primary, c.secondary};
  emit("central|pair", c.central, pack(pair));
  const Sequence triple[] = {c.primary, c.secondary, c.aux};
  emit("central|triple", c.central, pack(triple));
}

inline constexpr std::uint64_t kCorpusSeed = 20260101;
inline constexpr std::uint64_t kCorpusSize = 500;

}  // namespace srlz::testing

#endif  // SRLZ_TESTS_SUPPORT_CORPUS_HPP_
