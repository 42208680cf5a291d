// SPDX-License-Identifier: Apache-2.0

#include "irsuav/reflection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "irsuav/error.hpp"
#include "irsuav/kernels.hpp"
#include "irsuav/numerics.hpp"

namespace irsuav {
namespace {

struct Gram {
  double eve = 0.0;   // ||h_E||^2
  double bob = 0.0;   // ||h_B||^2
  double cross = 0.0; // |h_E^H h_B|^2
  Eigen::Index m = 0;
};

Gram gram_of(const CVec& h_eve, const CVec& h_bob) {
  if (h_eve.size() != h_bob.size()) raise(ErrorKind::DimensionMismatch, "h_E and h_B differ in length");
  return {kernels::norm2(view(h_eve)), kernels::norm2(view(h_bob)), std::norm(kernels::cdot(view(h_eve), view(h_bob))),
          h_eve.size()};
}

double max_eigenvalue_from_gram(const Gram& g, double mu) {
  const double trace = g.eve - mu * g.bob;
  if (g.m == 1) return trace;
  // Nonzero spectrum of U D U^H equals that of D U^H U with U = [h_E h_B],
  // D = diag(1, -mu). The determinant -mu (|h_E|^2 |h_B|^2 - |h_E^H h_B|^2)
  // is <= 0, so the larger root is >= 0 and dominates the zero eigenvalues.
  const double det = -mu * std::max(0.0, g.eve * g.bob - g.cross);
  const double half = 0.5 * trace;
  const double disc = std::sqrt(half * half - det);
  if (half >= 0.0) return half + disc;
  return -det / (disc - half);
}

// theta^H h_B and theta^H h_E
struct Projections {
  cplx bob;
  cplx eve;
};

Projections project(const EffectiveChannels& eff, const CVec& theta) {
  if (theta.size() != eff.hB.size() || theta.size() != eff.hE.size())
    raise(ErrorKind::DimensionMismatch, "theta length differs from M");
  return {kernels::cdot(view(theta), view(eff.hB)), kernels::cdot(view(theta), view(eff.hE))};
}

double objective_from(const EffectiveChannels& eff, const Projections& pr, double mu, const ReflectionParams& p) {
  const double phi_b = std::norm(pr.bob + eff.hB_direct) + p.noise_bob;
  const double phi_e = std::norm(pr.eve + eff.hE_direct) + p.noise_eve;
  return phi_e - mu * (phi_b - std::exp2(p.r_min) * p.noise_bob);
}

MMState coefficients(const EffectiveChannels& eff, const CVec& theta_tilde, const Projections& pr, double lambda,
                     double mu, const ReflectionParams& p) {
  MMState s;
  s.theta_tilde = theta_tilde;
  s.mu = mu;
  s.lambda_max = lambda;
  s.beta.resize(theta_tilde.size());
  // beta = (lambda I - H) theta~ + mu conj(h~_B) h_B - conj(h~_E) h_E
  //      = lambda theta~ + mu (h_B^H theta~ + conj(h~_B)) h_B - (h_E^H theta~ + conj(h~_E)) h_E
  const cplx bob_coeff = mu * (std::conj(pr.bob) + std::conj(eff.hB_direct));
  const cplx eve_coeff = -(std::conj(pr.eve) + std::conj(eff.hE_direct));
  kernels::lincomb3(lambda, view(theta_tilde), bob_coeff, view(eff.hB), eve_coeff, view(eff.hE), view(s.beta));
  const double quad = std::norm(pr.eve) - mu * std::norm(pr.bob);  // theta~^H H theta~
  s.c = lambda * kernels::norm2(view(theta_tilde)) - quad + std::norm(eff.hE_direct) + p.noise_eve -
        mu * std::norm(eff.hB_direct) - mu * (1.0 - std::exp2(p.r_min)) * p.noise_bob;
  return s;
}

void closed_form_into(const CVec& beta, CVec& theta) {
  const double rms = std::sqrt(kernels::norm2(view(beta)) / static_cast<double>(std::max<Eigen::Index>(1, beta.size())));
  kernels::unit_phase(view(beta), view(theta), 1e-14 * rms);
}

}  // namespace

double phi_bob(const EffectiveChannels& eff, const CVec& theta, const ReflectionParams& p) {
  return received_power(eff, theta, Receiver::Bob) + p.noise_bob;
}

double phi_eve(const EffectiveChannels& eff, const CVec& theta, const ReflectionParams& p) {
  return received_power(eff, theta, Receiver::Eve) + p.noise_eve;
}

double rate_margin(const EffectiveChannels& eff, const CVec& theta, const ReflectionParams& p) {
  return phi_bob(eff, theta, p) - std::exp2(p.r_min) * p.noise_bob;
}

double dinkelbach_objective(const EffectiveChannels& eff, const CVec& theta, double mu, const ReflectionParams& p) {
  return objective_from(eff, project(eff, theta), mu, p);
}

double reflection_ratio(const EffectiveChannels& eff, const CVec& theta, const ReflectionParams& p) {
  return phi_bob(eff, theta, p) / phi_eve(eff, theta, p);
}

double rank_two_max_eigenvalue(const CVec& h_eve, const CVec& h_bob, double mu) {
  return max_eigenvalue_from_gram(gram_of(h_eve, h_bob), mu);
}

MMState surrogate_coefficients(const EffectiveChannels& eff, const CVec& theta_tilde, double mu,
                               const ReflectionParams& p) {
  if (mu < 0.0) raise(ErrorKind::OutOfRange, "mu must be non-negative");
  const double lambda = rank_two_max_eigenvalue(eff.hE, eff.hB, mu);
  return coefficients(eff, theta_tilde, project(eff, theta_tilde), lambda, mu, p);
}

MMState surrogate_coefficients(const EffectiveChannels& eff, const PhaseVector& theta_tilde, double mu,
                               const ReflectionParams& p) {
  return surrogate_coefficients(eff, theta_tilde.theta(), mu, p);
}

double surrogate_value(const MMState& state, const CVec& theta) {
  return state.lambda_max * kernels::norm2(view(theta)) - 2.0 * kernels::cdot(view(theta), view(state.beta)).real() +
         state.c;
}

PhaseVector phase_closed_form(const MMState& state) {
  CVec theta = state.theta_tilde;
  closed_form_into(state.beta, theta);
  return PhaseVector::from_theta(theta);
}

MMResult mm_minimize(const EffectiveChannels& eff, const PhaseVector& theta_init, double mu,
                     const ReflectionParams& p, const MMOptions& opts) {
  if (mu < 0.0) raise(ErrorKind::OutOfRange, "mu must be non-negative");
  const double lambda = max_eigenvalue_from_gram(gram_of(eff.hE, eff.hB), mu);
  const double stop = opts.tolerance * p.noise_eve;

  CVec theta = theta_init.theta();
  Projections pr = project(eff, theta);
  double phi = objective_from(eff, pr, mu, p);

  MMResult result;
  result.trace.push_back(phi);
  bool moved = false;
  CVec candidate(theta.size());
  for (int it = 0; it < opts.max_iterations; ++it) {
    const MMState state = coefficients(eff, theta, pr, lambda, mu, p);
    candidate = theta;
    closed_form_into(state.beta, candidate);
    const Projections pr_new = project(eff, candidate);
    const double phi_new = objective_from(eff, pr_new, mu, p);
    // MM never increases phi in exact arithmetic; rounding may, so stop there.
    if (!(phi_new < phi)) break;
    const double decrease = phi - phi_new;
    theta.swap(candidate);
    pr = pr_new;
    phi = phi_new;
    moved = true;
    result.trace.push_back(phi);
    ++result.iterations;
    if (decrease < stop) break;
  }
  result.theta = moved ? PhaseVector::from_theta(theta) : theta_init;
  result.phi = phi;
  return result;
}

double dinkelbach_value(const EffectiveChannels& eff, const PhaseVector& theta_start, double mu,
                        const ReflectionParams& p, const MMOptions& opts) {
  return mm_minimize(eff, theta_start, mu, p, opts).phi;
}

ReflectionResult solve_reflection(const EffectiveChannels& eff, const PhaseVector& theta_init,
                                  const ReflectionParams& p, const ReflectionOptions& opts) {
  const CVec theta0 = theta_init.theta();
  const double ratio0 = reflection_ratio(eff, theta0, p);
  const double margin0 = rate_margin(eff, theta0, p);

  ReflectionResult result;
  PhaseVector warm = theta_init;
  PhaseVector best_margin_theta = theta_init;
  double best_margin = margin0;

  auto evaluate = [&](double mu) {
    MMResult r = mm_minimize(eff, warm, mu, p, opts.mm);
    ++result.evaluations;
    warm = r.theta;
    const double margin = rate_margin(eff, warm.theta(), p);
    if (margin > best_margin) {
      best_margin = margin;
      best_margin_theta = warm;
    }
    return r.phi;
  };

  numerics::BisectOptions bis;
  bis.f_tol = opts.f_tol * p.noise_eve;
  bis.x_rel_tol = opts.mu_tol;
  const double mu_root = numerics::bisect_root(evaluate, 0.0, 1.0, bis);

  const MMResult final = mm_minimize(eff, warm, mu_root, p, opts.mm);
  ++result.evaluations;
  result.mu_root = mu_root;
  result.theta = final.theta;

  CVec theta_out = result.theta.theta();
  if (rate_margin(eff, theta_out, p) < 0.0 && best_margin >= 0.0) {
    result.theta = best_margin_theta;
    theta_out = result.theta.theta();
    result.fallback = true;
  }
  // The root of phi~*(mu) maximizes R(theta) / phi_E, which differs from
  // phi_B / phi_E by the floor constant. Refine on the ratio itself.
  {
    ReflectionParams ratio_params = p;
    ratio_params.r_min = -std::numeric_limits<double>::infinity();  // phi_E - mu phi_B
    double ratio = reflection_ratio(eff, theta_out, p);
    const bool feasible_now = rate_margin(eff, theta_out, p) >= 0.0;
    for (int k = 0; feasible_now && k < opts.polish_iterations; ++k) {
      const double mu = 1.0 / ratio;
      const MMResult step = mm_minimize(eff, result.theta, mu, ratio_params, opts.mm);
      const CVec next = step.theta.theta();
      const double next_ratio = reflection_ratio(eff, next, p);
      if (!(next_ratio > ratio) || rate_margin(eff, next, p) < 0.0) break;
      const double gain = next_ratio - ratio;
      result.theta = step.theta;
      theta_out = next;
      ratio = next_ratio;
      ++result.polish_steps;
      if (gain <= opts.polish_rel_tol * ratio) break;
    }
  }
  // Never hand back something worse than the starting point: a feasible
  // start must stay feasible and must not lose ratio.
  const bool now_feasible = rate_margin(eff, theta_out, p) >= 0.0;
  const bool improved = reflection_ratio(eff, theta_out, p) >= ratio0;
  const bool keep = margin0 >= 0.0 ? (now_feasible && improved) : (now_feasible || improved);
  if (!keep) {
    result.theta = theta_init;
    result.fallback = true;
  }
  result.ratio = reflection_ratio(eff, result.theta.theta(), p);
  return result;
}

}  // namespace irsuav
