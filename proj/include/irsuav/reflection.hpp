// SPDX-License-Identifier: Apache-2.0
//
// Phase-shift design for a fixed precoder and position. Maximizes
//   phi_B(theta) / phi_E(theta),  phi_n = |theta^H h_n + h~_n|^2 + s_n^2
// subject to R(theta) = phi_B - 2^Rmin sb^2 >= 0, via a Dinkelbach root
// search on mu over
//   phi(theta | mu) = phi_E(theta) - mu R(theta),
// where each inner minimization is majorization-minimization with the
// spectral bound
//   phi(theta | mu) <= lambda_max(H) ||theta||^2 - 2 Re{theta^H beta} + c,
//   H = h_E h_E^H - mu h_B h_B^H,
// whose minimizer over unit-modulus theta is theta_m = exp(j arg beta_m).
#pragma once

#include <vector>

#include "irsuav/secrecy.hpp"

namespace irsuav {

struct ReflectionParams {
  double noise_bob = 0.0;
  double noise_eve = 0.0;
  double r_min = 0.0;
};

double phi_bob(const EffectiveChannels& eff, const CVec& theta, const ReflectionParams& p);
double phi_eve(const EffectiveChannels& eff, const CVec& theta, const ReflectionParams& p);
/// R(theta); non-negative iff Bob meets the rate floor.
double rate_margin(const EffectiveChannels& eff, const CVec& theta, const ReflectionParams& p);
double dinkelbach_objective(const EffectiveChannels& eff, const CVec& theta, double mu, const ReflectionParams& p);
/// phi_B / phi_E; equals (sb^2 / se^2) (1 + gamma_b) / (1 + gamma_e).
double reflection_ratio(const EffectiveChannels& eff, const CVec& theta, const ReflectionParams& p);

/// lambda_max(h_E h_E^H - mu h_B h_B^H) from the 2x2 Gram reduction.
double rank_two_max_eigenvalue(const CVec& h_eve, const CVec& h_bob, double mu);

struct MMState {
  CVec theta_tilde;
  double mu = 0.0;
  double lambda_max = 0.0;
  CVec beta;
  double c = 0.0;
};

MMState surrogate_coefficients(const EffectiveChannels& eff, const CVec& theta_tilde, double mu,
                               const ReflectionParams& p);
MMState surrogate_coefficients(const EffectiveChannels& eff, const PhaseVector& theta_tilde, double mu,
                               const ReflectionParams& p);

/// lambda_max ||theta||^2 - 2 Re{theta^H beta} + c
double surrogate_value(const MMState& state, const CVec& theta);

/// theta_m = exp(j arg beta_m). Elements whose beta_m is numerically zero
/// keep the phase of theta_tilde.
PhaseVector phase_closed_form(const MMState& state);

struct MMOptions {
  int max_iterations = 200;
  // stop once one iteration lowers phi by less than tolerance * noise_eve
  double tolerance = 1e-6;
};

struct MMResult {
  PhaseVector theta;
  double phi = 0.0;
  int iterations = 0;
  std::vector<double> trace;  // phi after each accepted iteration, starting with the initial value
};

MMResult mm_minimize(const EffectiveChannels& eff, const PhaseVector& theta_init, double mu,
                     const ReflectionParams& p, const MMOptions& opts = {});

/// The MM approximation of min_theta phi(theta | mu), started from theta_start.
double dinkelbach_value(const EffectiveChannels& eff, const PhaseVector& theta_start, double mu,
                        const ReflectionParams& p, const MMOptions& opts = {});

struct ReflectionOptions {
  MMOptions mm{};
  double f_tol = 1e-8;       // |phi~*(mu)| <= f_tol * noise_eve ends the root search
  double mu_tol = 1e-9;      // or a bracket narrower than mu_tol * max(1, mu)
  // Dinkelbach steps on phi_E - mu phi_B after the root search; each step
  // keeps the rate floor and cannot lower phi_B / phi_E
  int polish_iterations = 50;
  double polish_rel_tol = 1e-12;
};

struct ReflectionResult {
  PhaseVector theta;
  double mu_root = 0.0;
  double ratio = 0.0;
  int polish_steps = 0;
  // set when floating-point slack forced a fallback (negative margin at the
  // root, or a ratio below the starting point's)
  bool fallback = false;
  int evaluations = 0;
};

/// Throws NoSignChange when no mu makes phi~* negative (R < 0 everywhere
/// the iterates reach).
ReflectionResult solve_reflection(const EffectiveChannels& eff, const PhaseVector& theta_init,
                                  const ReflectionParams& p, const ReflectionOptions& opts = {});

}  // namespace irsuav
