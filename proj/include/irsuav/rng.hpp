// SPDX-License-Identifier: Apache-2.0
//
// Counter-based SplitMix64 stream. The n-th output depends only on
// (key, n), so draws are reproducible across platforms and independent of
// evaluation order. Gaussians use Box-Muller on two consecutive counters,
// never the standard library distributions (their output is
// implementation-defined).
#pragma once

#include <cstdint>

#include "irsuav/linalg.hpp"

namespace irsuav {

std::uint64_t splitmix64(std::uint64_t x);

/// Per-trial seed: splitmix64(splitmix64(splitmix64(base) ^ trial) ^ (sweep + 0x9E3779B97F4A7C15)).
std::uint64_t mix_seed(std::uint64_t base_seed, std::uint64_t trial_index, std::uint64_t sweep_index);

class CounterRng {
 public:
  /// `stream` separates independent sequences under one seed.
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  /// Uniform on (0, 1).
  double uniform();
  double standard_normal();
  /// Circularly-symmetric CN(0, 1): real and imaginary parts N(0, 1/2).
  cplx complex_normal();

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace irsuav
