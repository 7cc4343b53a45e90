// Copyright 2025 The EvoStage Authors
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

#ifndef EVOSTAGE_RNG_HPP_
#define EVOSTAGE_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>

namespace evostage {

// Deterministic random source. All floating-point draws are derived from the
// raw mt19937_64 output stream (whose sequence the standard pins down exactly),
// not from std::*_distribution, so the same seed yields the same numbers on
// every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of entropy.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [lo, hi] inclusive.
  int uniform_int(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
  }

  // Standard normal via Box-Muller; the pair is consumed one value at a time.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    double u2 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  // Derives an independent stream, e.g. one per evaluation task.
  Rng fork(std::uint64_t stream) {
    return Rng(mix(engine_() ^ (0x9e3779b97f4a7c15ULL * (stream + 1))));
  }

  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Radical-inverse (Halton) sequence value for a 1-based index.
inline double halton(std::uint64_t index, std::uint32_t base) {
  double result = 0.0;
  double f = 1.0;
  while (index > 0) {
    f /= static_cast<double>(base);
    result += f * static_cast<double>(index % base);
    index /= base;
  }
  return result;
}

}  // namespace evostage

#endif  // EVOSTAGE_RNG_HPP_
