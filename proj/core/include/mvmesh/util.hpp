// Copyright 2026 The mvmesh Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

namespace mvmesh {

// splitmix64 mixer. Used wherever the toolkit needs reproducible,
// platform-independent pseudo-randomness (std:: distributions are
// implementation-defined and would break bitwise determinism).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Tiny counter-based RNG: stream selected by (seed, stream), values drawn
// by advancing a counter. Identical sequences on every platform.
class SeededRng {
 public:
  SeededRng(std::uint64_t seed, std::uint64_t stream)
      : state_(splitmix64(splitmix64(seed) ^ stream)) {}

  std::uint64_t next() {
    state_ = splitmix64(state_);
    return state_;
  }

  // Uniform in [0, n). Modulo bias is ~n/2^64, far below any tolerance here.
  std::uint64_t next_below(std::uint64_t n) { return next() % n; }

  // Uniform in [lo, hi).
  double next_double(double lo, double hi) {
    double u = static_cast<double>(next() >> 11) * 0x1.0p-53;  // [0,1)
    return lo + u * (hi - lo);
  }

 private:
  std::uint64_t state_;
};

// FNV-1a 64-bit content hash, used for the reproducibility manifests.
std::uint64_t fnv1a64(const void* data, std::size_t size);
std::string hash_hex(std::uint64_t h);
std::string hash_file(const std::string& path);

}  // namespace mvmesh
