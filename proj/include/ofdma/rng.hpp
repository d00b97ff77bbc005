// ofdma-ia-sim
// Copyright (C) 2026 The ofdma-ia-sim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#ifndef OFDMA_RNG_HPP
#define OFDMA_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>

namespace ofdma {

// Counter-based generator with splittable substreams. Each (master seed,
// substream index) pair yields an independent stream whose output does not
// depend on how many draws other substreams made, so trials can run in any
// order, or in parallel, and still reproduce bit for bit.
class Rng {
 public:
  explicit Rng(std::uint64_t key) : key_(key) {}

  static Rng substream(std::uint64_t master_seed, std::uint64_t index) {
    std::uint64_t k = mix64(master_seed ^ 0x6a09e667f3bcc909ULL);
    k = mix64(k ^ (0xd1b54a32d192ed03ULL * (index + 1)));
    return Rng(k);
  }

  std::uint64_t next_u64() {
    return mix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_);
  }

  // Uniform on (0, 1]; never returns 0, so log() is safe.
  double next_unit() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Circularly symmetric complex Gaussian CN(0, variance) via Box-Muller.
  // Consumes exactly two uniforms per sample.
  std::complex<double> next_cgauss(double variance) {
    const double u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-variance * std::log(u1));
    const double phi = 6.283185307179586476925286766559 * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
  }

 private:
  static std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace ofdma

#endif
