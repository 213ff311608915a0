// Copyright 2026 The aqpe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "aqpe/rng.hpp"

#include <array>
#include <cmath>

namespace aqpe {

namespace {

std::mt19937_64 seeded(std::initializer_list<std::uint32_t> words) {
  std::seed_seq seq(words);
  return std::mt19937_64(seq);
}

std::uint32_t lo(std::uint64_t v) { return static_cast<std::uint32_t>(v); }
std::uint32_t hi(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }

}  // namespace

Rng::Rng(std::uint64_t seed) : engine_(seeded({lo(seed), hi(seed)})) {}

Rng Rng::stream(std::uint64_t master, std::uint64_t index, std::uint64_t slot) {
  Rng r;
  r.engine_ = seeded({lo(master), hi(master), lo(index), hi(index), lo(slot),
                      hi(slot), 0x61717065u});
  return r;
}

std::uint64_t Rng::below(std::uint64_t n) {
  // Rejection keeps the result exactly uniform.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % n;
}

std::uint64_t Rng::poisson(double mean) {
  if (!(mean > 0.0)) return 0;
  // Sum of Poisson variates is Poisson; chunking keeps exp(-mean) away from
  // underflow in the inversion loop.
  std::uint64_t total = 0;
  while (mean > 0.0) {
    const double chunk = mean > 30.0 ? 30.0 : mean;
    mean -= chunk;
    const double u = uniform();
    double p = std::exp(-chunk);
    double cdf = p;
    std::uint64_t k = 0;
    while (u >= cdf && p > 0.0) {
      ++k;
      p *= chunk / static_cast<double>(k);
      cdf += p;
    }
    total += k;
  }
  return total;
}

}  // namespace aqpe
