// SPDX-License-Identifier: Apache-2.0
//
// Transmitter placement for a fixed precoder and reflection.
//
// Only the distance- and elevation-dependent weights of the UAV links
// (direct to Bob, direct to Eve, UAV-IRS) move with the horizontal position
// a. Each link's factor is
//   w_los(X) g + w_nlos(X) g~,   X = ||a - y||^2 + hbar^2 = d^2,
//   w_los = X^alpha sqrt(k/(k+1)),  w_nlos = X^alpha sqrt(1/(k+1)),
//   alpha = -c/4,  k = A1 exp(A2 asin(hbar / sqrt(X))),
// and the first-order expansion in x = ||a - y||^2 - ||a^ - y||^2 gives the
// surrogate used by the Dinkelbach / DC placement loop.
#pragma once

#include "irsuav/secrecy.hpp"

namespace irsuav {

enum class Target { Bob, Eve, Irs };

struct SearchBox {
  Vec2 lo{-100.0, -100.0};
  Vec2 hi{100.0, 100.0};

  bool contains(const Vec2& a) const;
  Vec2 clamp(const Vec2& a) const;
};

/// Position-dependent part of one UAV link.
struct LinkFactor {
  double los_weight = 0.0;
  double nlos_weight = 0.0;
  CMat value;  // N x 1 for Bob/Eve, M x N for the IRS
};

/// d^{-c/2} sqrt(1/(k+1)) (sqrt(k) g + g~) with the link's frozen small-scale
/// components. Throws OutOfRange for d < 1 m.
LinkFactor channel_factor(const Vec2& a, Target target, const NodeLayout& layout, const SmallScaleDraw& draw,
                          const RadioParams& radio);

struct TaylorExpansion {
  Vec2 anchor_xy{0.0, 0.0};
  Vec2 target_xy{0.0, 0.0};
  double height_diff = 0.0;
  double alpha = 0.0;  // -c/4
  double X = 0.0;      // ||anchor - target||^2 + height_diff^2

  double rician_k = 0.0;
  double dk_dx = 0.0;
  double los_weight = 0.0;
  double nlos_weight = 0.0;
  double d_los_weight = 0.0;  // d w_los / dx at x = 0
  double d_nlos_weight = 0.0;

  CMat tau_hat;     // factor at the anchor
  CMat lambda_hat;  // d factor / dx at the anchor

  double offset(const Vec2& a) const { return (a - target_xy).squaredNorm() - (anchor_xy - target_xy).squaredNorm(); }
  /// tau_hat + lambda_hat * offset(a)
  CMat evaluate(const Vec2& a) const { return tau_hat + lambda_hat * offset(a); }
};

/// Throws OutOfRange for d < 1 m or an anchor directly above the target
/// (the elevation is not differentiable in x there).
TaylorExpansion taylor_expand(const Vec2& anchor, Target target, const NodeLayout& layout,
                              const SmallScaleDraw& draw, const RadioParams& radio);

/// Position-independent scalars for the received amplitudes, normalized by
/// the receiver noise amplitude:
///   A_n(a) = w_los_ar(a) alpha_n_los + w_nlos_ar(a) alpha_n_nlos
///          + w_los_an(a) omega_n_los + w_nlos_an(a) omega_n_nlos,
/// so gamma_n = |A_n(a)|^2.
struct DeployConstants {
  cplx alpha_bob_los{}, alpha_bob_nlos{}, alpha_eve_los{}, alpha_eve_nlos{};  // s^-1 sqrt(b0) h_rn^H Theta {G, G~} f
  CVec omega_bob, omega_eve;                                                   // s^-1 sqrt(b0) f
  cplx omega_bob_los{}, omega_bob_nlos{}, omega_eve_los{}, omega_eve_nlos{};  // {g, g~}^H omega
};

/// h_rb and h_re are taken from `channels` (they do not depend on a); pass a
/// channel set with the cascade disabled to get zero IRS terms.
DeployConstants deploy_constants(const ChannelSet& channels, const PhaseVector& theta, const Precoder& f,
                                 const SmallScaleDraw& draw, const RadioParams& radio);

struct DeployValue {
  double ratio = 0.0;  // (1 + gamma_b) / (1 + gamma_e)
  double gamma_bob = 0.0;
  double gamma_eve = 0.0;
  bool bob_rate_ok = false;
};

DeployValue deploy_objective(const Vec2& a, const DeployConstants& constants, const NodeLayout& layout,
                             const RadioParams& radio, double r_min);

struct DeployOptions {
  int max_outer = 100;
  int max_inner = 50;
  int max_halvings = 20;
  double initial_step = 10.0;  // metres, surrogate ascent
  double min_step = 1e-4;
  double rel_tol = 1e-8;       // Dinkelbach stop on relative ratio gain
};

struct DeployResult {
  Vec2 position{0.0, 0.0};
  DeployValue value;
  int outer_iterations = 0;
  int accepted_steps = 0;
};

/// Throws BoxViolation when the box excludes a_init and InfeasibleStart when
/// Bob's rate floor fails at a_init. The true ratio never decreases.
DeployResult solve_deployment(const Vec2& a_init, const DeployConstants& constants, const NodeLayout& layout,
                              const RadioParams& radio, double r_min, const SearchBox& box,
                              const DeployOptions& opts = {});

}  // namespace irsuav
