// SPDX-License-Identifier: Apache-2.0

#include "irsuav/power.hpp"

#include <cmath>

#include "irsuav/error.hpp"
#include "irsuav/kernels.hpp"

namespace irsuav {
namespace {

double bob_power(const QMatrices& q, const CVec& f) { return std::norm(kernels::cdot(view(q.v_bob), view(f))); }

// Best unit direction with P |v_b^H e|^2 >= floor. Write e = a u + b w + c z
// with u = v_b / |v_b|, w the unit remainder of v_e, z orthogonal to both.
// Only |a| matters for Bob; b takes the phase that opposes Eve's u term and
// the magnitude that best cancels it, any leftover power goes to z.
CVec floor_constrained_direction(const QMatrices& q, double p_max, double floor, const NoisePowers& noise) {
  const Eigen::Index n = q.v_bob.size();
  const double nb = q.v_bob.norm();
  const CVec u = q.v_bob / nb;
  const cplx c1 = u.dot(q.v_eve);  // v_e = c1 u + c2 w
  CVec rest = q.v_eve - c1 * u;
  double c2 = rest.norm();
  CVec w;
  if (c2 > 1e-12 * q.v_eve.norm() && c2 > 0.0) {
    w = rest / c2;
  } else {
    c2 = 0.0;
    w = CVec::Zero(n);
  }
  // z exists when u and w leave part of the space unused
  const bool spare = n > (c2 > 0.0 ? 2 : 1);

  const double a_min = std::sqrt(floor / p_max) / nb;
  auto b_of = [&](double a) {
    const double b_max = std::sqrt(std::max(0.0, 1.0 - a * a));
    if (c2 == 0.0) return spare ? 0.0 : b_max;
    return spare ? std::min(b_max, std::abs(c1) * a / c2) : b_max;
  };
  auto objective = [&](double a) {
    const double b = b_of(a);
    const double eve = std::abs(c1) * a - c2 * b;
    return (p_max * nb * nb * a * a + noise.bob) / (p_max * eve * eve + noise.eve);
  };

  // dense scan then golden-section refinement around the best sample
  constexpr int kSamples = 2048;
  const double lo = std::min(a_min, 1.0);
  double best_a = lo, best = objective(lo);
  for (int i = 1; i <= kSamples; ++i) {
    const double a = lo + (1.0 - lo) * i / kSamples;
    const double v = objective(a);
    if (v > best) best = v, best_a = a;
  }
  const double h = (1.0 - lo) / kSamples;
  double l = std::max(lo, best_a - h), r = std::min(1.0, best_a + h);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 80; ++it) {
    const double m1 = r - g * (r - l), m2 = l + g * (r - l);
    if (objective(m1) < objective(m2)) l = m1; else r = m2;
  }
  if (const double a = 0.5 * (l + r); objective(a) > best) best_a = a;

  const double a = best_a, b = b_of(a);
  // conj(c1) a and conj(c2) b e^{j psi} anti-aligned
  const cplx phase = std::abs(c1) > 0.0 ? -std::conj(c1) / std::abs(c1) : cplx(1.0, 0.0);
  CVec e = a * u + b * phase * w;
  const double leftover = 1.0 - e.squaredNorm();
  if (leftover > 0.0 && spare) {
    // any unit vector orthogonal to u and w
    for (Eigen::Index k = 0; k < n; ++k) {
      CVec z = CVec::Unit(n, k);
      z -= u.dot(z) * u;
      if (c2 > 0.0) z -= w.dot(z) * w;
      if (z.norm() > 0.5) {
        e += std::sqrt(leftover) * z / z.norm();
        break;
      }
    }
  }
  e /= e.norm();
  numerics::apply_phase_convention(e);
  return e;
}

}  // namespace

double precoder_objective(const QMatrices& q, const CVec& f, const NoisePowers& noise) {
  const double eve = std::norm(kernels::cdot(view(q.v_eve), view(f)));
  return (bob_power(q, f) + noise.bob) / (eve + noise.eve);
}

bool precoder_feasible(const QMatrices& q, double p_max, double r_min, const NoisePowers& noise) {
  const double required = (std::exp2(r_min) - 1.0) * noise.bob;
  if (required <= 0.0) return true;
  return p_max * q.v_bob.squaredNorm() >= required;
}

Precoder solve_precoder(const ChannelSet& channels, const PhaseVector& theta, double p_max, double r_min,
                        const NoisePowers& noise) {
  if (!(p_max > 0.0)) raise(ErrorKind::OutOfRange, "p_max must be positive");
  const QMatrices q = q_matrices(channels, theta);
  if (!precoder_feasible(q, p_max, r_min, noise))
    raise(ErrorKind::InfeasibleRate, "rate floor unreachable at full power along Bob's channel");

  const Eigen::Index n = q.v_bob.size();
  const CMat eye = CMat::Identity(n, n);
  const numerics::MatrixPencil pencil{
      numerics::HermitianMatrix(p_max * q.v_bob * q.v_bob.adjoint() + noise.bob * eye),
      numerics::HermitianMatrix(p_max * q.v_eve * q.v_eve.adjoint() + noise.eve * eye)};
  CVec e = numerics::dominant_generalized_eigenvector(pencil);
  const double floor = (std::exp2(r_min) - 1.0) * noise.bob;
  if (p_max * bob_power(q, e) < floor) e = floor_constrained_direction(q, p_max, floor, noise);
  return Precoder{std::sqrt(p_max) * e, p_max};
}

}  // namespace irsuav
