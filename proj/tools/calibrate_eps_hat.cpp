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

// Measures the eps_hat scale K needed by the conditional code on the seeded
// corpus: K(stream) = (bits / n - rho_cond) log n / log log n. Prints the
// worst case, the smallest power of two covering it and the frozen value.
// Exits nonzero when the frozen scale does not cover the corpus.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "corpus.hpp"
#include "srlz.hpp"

int main(int argc, char** argv) {
  using namespace srlz;
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : testing::kCorpusSeed;
  const std::uint64_t count = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : testing::kCorpusSize;
  double worst = -INFINITY;
  std::string worst_what;
  std::uint64_t worst_case = 0, worst_n = 0, streams = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    const testing::Case c = testing::make_case(seed, i);
    testing::for_each_cond_stream(c, [&](const testing::CondStream& s) {
      ++streams;
      const double ln = std::log2(static_cast<double>(s.n));
      const double k = (static_cast<double>(s.bits) / static_cast<double>(s.n) - s.rho_cond) * ln / std::log2(ln);
      if (k > worst) {
        worst = k;
        worst_what = s.what;
        worst_case = c.index;
        worst_n = s.n;
      }
    });
  }
  const double pow2 = std::exp2(std::ceil(std::log2(std::max(worst, 1.0))));
  std::printf("{\"seed\": %llu, \"cases\": %llu, \"streams\": %llu, \"worst_k\": %.6f, \"worst_stream\": \"%s\", "
              "\"worst_case\": %llu, \"worst_n\": %llu, \"power_of_two\": %g, \"frozen\": %g}\n",
              static_cast<unsigned long long>(seed), static_cast<unsigned long long>(count),
              static_cast<unsigned long long>(streams), worst, worst_what.c_str(),
              static_cast<unsigned long long>(worst_case), static_cast<unsigned long long>(worst_n), pow2,
              kEpsHatScale);
  return worst <= kEpsHatScale ? 0 : 1;
}
