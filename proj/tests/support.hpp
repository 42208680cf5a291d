// SPDX-License-Identifier: Apache-2.0
//
// Seeded instance builders shared by the unit and acceptance tests.
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "irsuav/ao.hpp"
#include "irsuav/rng.hpp"

namespace irsuav::testing {

inline CVec random_cvec(CounterRng& rng, Eigen::Index n) {
  CVec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.complex_normal();
  return v;
}

inline CVec random_unit_modulus(CounterRng& rng, Eigen::Index n) {
  CVec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
  return v;
}

/// Uniform on the complex unit sphere.
inline CVec random_unit_vector(CounterRng& rng, Eigen::Index n) {
  CVec v = random_cvec(rng, n);
  return v / v.norm();
}

inline CMat random_psd(CounterRng& rng, Eigen::Index n, double shift) {
  CMat g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
  CMat a = g * g.adjoint();
  a += shift * CMat::Identity(n, n);
  return 0.5 * (a + a.adjoint());
}

/// Reference-scenario problem with N antennas, M elements and the UAV at a.
struct Instance {
  Problem problem;
  SmallScaleDraw draw;
  ChannelSet channels;
  Vec2 a;
};

inline Instance make_instance(std::uint64_t seed, int n, int m, const Vec2& a = Vec2(1.5, 2.5)) {
  Instance inst;
  inst.problem.radio.n_antennas = n;
  inst.problem.radio.n_elements = m;
  inst.problem.layout.uav_xy = a;
  inst.a = a;
  inst.draw = SmallScaleDraw::generate(inst.problem.layout, n, m, seed);
  inst.channels = channels_at(inst.problem, inst.draw, a);
  return inst;
}

inline ReflectionParams reflection_params(const Problem& p) {
  return {p.radio.noise_bob, p.radio.noise_eve, p.r_min};
}

}  // namespace irsuav::testing
