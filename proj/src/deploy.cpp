// SPDX-License-Identifier: Apache-2.0

#include "irsuav/deploy.hpp"

#include <algorithm>
#include <cmath>

#include "irsuav/error.hpp"
#include "irsuav/kernels.hpp"

namespace irsuav {
namespace {

struct LinkSpec {
  Vec2 target;
  double height_diff;
  double exponent;
};

LinkSpec link_spec(Target target, const NodeLayout& layout, const RadioParams& radio) {
  switch (target) {
    case Target::Bob: return {layout.bob_xy, layout.uav_height, radio.exponents.ab};
    case Target::Eve: return {layout.eve_xy, layout.uav_height, radio.exponents.ae};
    case Target::Irs: return {layout.irs_xy, layout.uav_height - layout.irs_height, radio.exponents.ar};
  }
  return {layout.bob_xy, layout.uav_height, radio.exponents.ab};
}

struct Weights {
  double los;
  double nlos;
};

// w_los, w_nlos at squared distance X
Weights weights_at(double X, const LinkSpec& geo, const RadioParams& radio) {
  const double d = std::sqrt(X);
  if (!(d >= 1.0)) raise(ErrorKind::OutOfRange, "UAV link shorter than the 1 m reference");
  const double k = rician_factor(std::asin(std::min(1.0, geo.height_diff / d)), radio.rician_a1, radio.rician_a2);
  const RicianWeights rw = rician_weights(k);
  const double amp = std::pow(X, -geo.exponent / 4.0);
  return {amp * rw.los, amp * rw.nlos};
}

Weights weights_at(const Vec2& a, const LinkSpec& geo, const RadioParams& radio) {
  return weights_at((a - geo.target).squaredNorm() + geo.height_diff * geo.height_diff, geo, radio);
}

struct WeightExpansion {
  double k = 0.0;
  double dk_dx = 0.0;
  Weights at{};
  Weights slope{};  // d/dx at x = 0, i.e. d/dX
};

// Requires X > hbar^2: the elevation is not differentiable in x overhead.
WeightExpansion expand_weights(double X, const LinkSpec& geo, const RadioParams& radio) {
  const double hbar2 = geo.height_diff * geo.height_diff;
  if (!(X > hbar2)) raise(ErrorKind::OutOfRange, "expansion anchor directly above the target");
  WeightExpansion e;
  e.at = weights_at(X, geo, radio);
  const double alpha = -geo.exponent / 4.0;
  e.k = rician_factor(std::asin(geo.height_diff / std::sqrt(X)), radio.rician_a1, radio.rician_a2);
  // d/dX asin(hbar / sqrt X) = -hbar / (2 X sqrt(X - hbar^2))
  const double dtheta = -geo.height_diff / (2.0 * X * std::sqrt(X - hbar2));
  e.dk_dx = radio.rician_a2 * e.k * dtheta;
  const double path = std::pow(X, alpha);
  const double d_path = alpha * std::pow(X, alpha - 1.0);
  const double kp1_32 = std::pow(e.k + 1.0, 1.5);
  e.slope.los = d_path * std::sqrt(e.k / (e.k + 1.0)) + path * e.dk_dx / (2.0 * std::sqrt(e.k) * kp1_32);
  e.slope.nlos = d_path / std::sqrt(e.k + 1.0) - path * e.dk_dx / (2.0 * kp1_32);
  return e;
}

std::pair<const CMat*, const CMat*> components(Target target, const SmallScaleDraw& draw, CMat& los, CMat& nlos) {
  switch (target) {
    case Target::Irs: return {&draw.los_ar, &draw.nlos_ar};
    case Target::Bob: los = draw.los_ab; nlos = draw.nlos_ab; break;
    case Target::Eve: los = draw.los_ae; nlos = draw.nlos_ae; break;
  }
  return {&los, &nlos};
}

cplx amplitude(const Weights& ar, const Weights& direct, cplx alpha_los, cplx alpha_nlos, cplx omega_los,
               cplx omega_nlos) {
  return ar.los * alpha_los + ar.nlos * alpha_nlos + direct.los * omega_los + direct.nlos * omega_nlos;
}

// First-order model of A_n(a) around the anchor:
//   A_n(a) ~ A_n(anchor) + D_ar x_ar(a) + D_direct x_direct(a)
struct AmplitudeModel {
  cplx base{};
  cplx d_ar{};
  cplx d_direct{};
};

struct Surrogate {
  Vec2 anchor;
  Vec2 irs, bob, eve;
  AmplitudeModel bob_amp, eve_amp;
  double rho = 0.0;

  static double offset(const Vec2& a, const Vec2& anchor, const Vec2& y) {
    return (a - y).squaredNorm() - (anchor - y).squaredNorm();
  }

  cplx amp(const AmplitudeModel& m, const Vec2& a, const Vec2& direct) const {
    return m.base + m.d_ar * offset(a, anchor, irs) + m.d_direct * offset(a, anchor, direct);
  }

  // |A_b|^2 + 1 - rho (|A_e|^2 + 1)
  double value(const Vec2& a) const {
    return std::norm(amp(bob_amp, a, bob)) + 1.0 - rho * (std::norm(amp(eve_amp, a, eve)) + 1.0);
  }

  Vec2 gradient(const Vec2& a) const {
    auto grad_abs2 = [&](const AmplitudeModel& m, const Vec2& direct) -> Vec2 {
      const cplx A = amp(m, a, direct);
      // d A / d a = 2 D_ar (a - r) + 2 D_direct (a - y)
      const Vec2 g_re = 2.0 * (m.d_ar.real() * (a - irs) + m.d_direct.real() * (a - direct));
      const Vec2 g_im = 2.0 * (m.d_ar.imag() * (a - irs) + m.d_direct.imag() * (a - direct));
      return 2.0 * (A.real() * g_re + A.imag() * g_im);
    };
    return grad_abs2(bob_amp, bob) - rho * grad_abs2(eve_amp, eve);
  }
};

}  // namespace

bool SearchBox::contains(const Vec2& a) const {
  return a.x() >= lo.x() && a.x() <= hi.x() && a.y() >= lo.y() && a.y() <= hi.y();
}

Vec2 SearchBox::clamp(const Vec2& a) const { return a.cwiseMax(lo).cwiseMin(hi); }

LinkFactor channel_factor(const Vec2& a, Target target, const NodeLayout& layout, const SmallScaleDraw& draw,
                          const RadioParams& radio) {
  const LinkSpec geo = link_spec(target, layout, radio);
  const Weights w = weights_at(a, geo, radio);
  CMat los_store, nlos_store;
  const auto [los, nlos] = components(target, draw, los_store, nlos_store);
  return {w.los, w.nlos, w.los * (*los) + w.nlos * (*nlos)};
}

TaylorExpansion taylor_expand(const Vec2& anchor, Target target, const NodeLayout& layout,
                              const SmallScaleDraw& draw, const RadioParams& radio) {
  const LinkSpec geo = link_spec(target, layout, radio);
  TaylorExpansion t;
  t.anchor_xy = anchor;
  t.target_xy = geo.target;
  t.height_diff = geo.height_diff;
  t.alpha = -geo.exponent / 4.0;
  t.X = (anchor - geo.target).squaredNorm() + geo.height_diff * geo.height_diff;
  const WeightExpansion e = expand_weights(t.X, geo, radio);
  t.rician_k = e.k;
  t.dk_dx = e.dk_dx;
  t.los_weight = e.at.los;
  t.nlos_weight = e.at.nlos;
  t.d_los_weight = e.slope.los;
  t.d_nlos_weight = e.slope.nlos;

  CMat los_store, nlos_store;
  const auto [los, nlos] = components(target, draw, los_store, nlos_store);
  t.tau_hat = t.los_weight * (*los) + t.nlos_weight * (*nlos);
  t.lambda_hat = t.d_los_weight * (*los) + t.d_nlos_weight * (*nlos);
  return t;
}

DeployConstants deploy_constants(const ChannelSet& channels, const PhaseVector& theta, const Precoder& f,
                                 const SmallScaleDraw& draw, const RadioParams& radio) {
  const Eigen::Index n = f.f.size();
  const Eigen::Index m = static_cast<Eigen::Index>(theta.size());
  if (n != radio.n_antennas || m != radio.n_elements || channels.h_rb.size() != m || draw.los_ar.rows() != m ||
      draw.los_ar.cols() != n)
    raise(ErrorKind::DimensionMismatch, "deployment inputs disagree on (N, M)");

  const double root_beta0 = std::sqrt(radio.beta0);
  const CVec th = theta.theta();
  const CVec los_f = draw.los_ar * f.f;
  const CVec nlos_f = draw.nlos_ar * f.f;
  // h_rn^H Theta v = sum conj(h_rn,m theta_m) v_m
  const CVec rb_theta = channels.h_rb.cwiseProduct(th);
  const CVec re_theta = channels.h_re.cwiseProduct(th);

  DeployConstants c;
  const double sb = 1.0 / std::sqrt(radio.noise_bob);
  const double se = 1.0 / std::sqrt(radio.noise_eve);
  c.alpha_bob_los = sb * root_beta0 * kernels::cdot(view(rb_theta), view(los_f));
  c.alpha_bob_nlos = sb * root_beta0 * kernels::cdot(view(rb_theta), view(nlos_f));
  c.alpha_eve_los = se * root_beta0 * kernels::cdot(view(re_theta), view(los_f));
  c.alpha_eve_nlos = se * root_beta0 * kernels::cdot(view(re_theta), view(nlos_f));
  c.omega_bob = sb * root_beta0 * f.f;
  c.omega_eve = se * root_beta0 * f.f;
  c.omega_bob_los = kernels::cdot(view(draw.los_ab), view(c.omega_bob));
  c.omega_bob_nlos = kernels::cdot(view(draw.nlos_ab), view(c.omega_bob));
  c.omega_eve_los = kernels::cdot(view(draw.los_ae), view(c.omega_eve));
  c.omega_eve_nlos = kernels::cdot(view(draw.nlos_ae), view(c.omega_eve));
  return c;
}

DeployValue deploy_objective(const Vec2& a, const DeployConstants& constants, const NodeLayout& layout,
                             const RadioParams& radio, double r_min) {
  const Weights ar = weights_at(a, link_spec(Target::Irs, layout, radio), radio);
  const Weights ab = weights_at(a, link_spec(Target::Bob, layout, radio), radio);
  const Weights ae = weights_at(a, link_spec(Target::Eve, layout, radio), radio);
  DeployValue v;
  v.gamma_bob = std::norm(amplitude(ar, ab, constants.alpha_bob_los, constants.alpha_bob_nlos,
                                    constants.omega_bob_los, constants.omega_bob_nlos));
  v.gamma_eve = std::norm(amplitude(ar, ae, constants.alpha_eve_los, constants.alpha_eve_nlos,
                                    constants.omega_eve_los, constants.omega_eve_nlos));
  v.ratio = (1.0 + v.gamma_bob) / (1.0 + v.gamma_eve);
  v.bob_rate_ok = v.gamma_bob >= std::exp2(r_min) - 1.0;
  return v;
}

namespace {

// The anchor is nudged off the overhead point, where the elevation has no
// derivative in x. Steps are always accepted on the true objective.
WeightExpansion weight_slope(const Vec2& anchor, Target target, const NodeLayout& layout, const RadioParams& radio) {
  const LinkSpec geo = link_spec(target, layout, radio);
  Vec2 expand_at = anchor;
  if ((anchor - geo.target).norm() < 1e-6) expand_at.x() += 1e-3;
  return expand_weights((expand_at - geo.target).squaredNorm() + geo.height_diff * geo.height_diff, geo, radio);
}

Surrogate build_surrogate(const Vec2& anchor, double rho, const DeployConstants& c, const NodeLayout& layout,
                          const RadioParams& radio) {
  const WeightExpansion ar = weight_slope(anchor, Target::Irs, layout, radio);
  const WeightExpansion ab = weight_slope(anchor, Target::Bob, layout, radio);
  const WeightExpansion ae = weight_slope(anchor, Target::Eve, layout, radio);
  Surrogate s;
  s.anchor = anchor;
  s.irs = layout.irs_xy;
  s.bob = layout.bob_xy;
  s.eve = layout.eve_xy;
  s.rho = rho;
  s.bob_amp.base = amplitude(ar.at, ab.at, c.alpha_bob_los, c.alpha_bob_nlos, c.omega_bob_los, c.omega_bob_nlos);
  s.bob_amp.d_ar = ar.slope.los * c.alpha_bob_los + ar.slope.nlos * c.alpha_bob_nlos;
  s.bob_amp.d_direct = ab.slope.los * c.omega_bob_los + ab.slope.nlos * c.omega_bob_nlos;
  s.eve_amp.base = amplitude(ar.at, ae.at, c.alpha_eve_los, c.alpha_eve_nlos, c.omega_eve_los, c.omega_eve_nlos);
  s.eve_amp.d_ar = ar.slope.los * c.alpha_eve_los + ar.slope.nlos * c.alpha_eve_nlos;
  s.eve_amp.d_direct = ae.slope.los * c.omega_eve_los + ae.slope.nlos * c.omega_eve_nlos;
  return s;
}

// Ascent on the surrogate from its anchor with normalized gradient steps.
Vec2 maximize_surrogate(const Surrogate& s, const SearchBox& box, const DeployOptions& opts) {
  Vec2 cand = s.anchor;
  double best = s.value(cand);
  double step = opts.initial_step;
  for (int it = 0; it < opts.max_inner; ++it) {
    const Vec2 g = s.gradient(cand);
    const double gn = g.norm();
    if (!(gn > 0.0) || !std::isfinite(gn)) break;
    bool moved = false;
    while (step >= opts.min_step) {
      const Vec2 trial = box.clamp(cand + (step / gn) * g);
      const double v = s.value(trial);
      if (v > best && trial != cand) {
        cand = trial;
        best = v;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return cand;
}

}  // namespace

DeployResult solve_deployment(const Vec2& a_init, const DeployConstants& constants, const NodeLayout& layout,
                              const RadioParams& radio, double r_min, const SearchBox& box,
                              const DeployOptions& opts) {
  if (!box.contains(a_init)) raise(ErrorKind::BoxViolation, "initial position outside the search box");
  DeployResult result;
  result.position = a_init;
  result.value = deploy_objective(a_init, constants, layout, radio, r_min);
  if (!result.value.bob_rate_ok) raise(ErrorKind::InfeasibleStart, "rate floor violated at the initial position");

  for (int outer = 0; outer < opts.max_outer; ++outer) {
    ++result.outer_iterations;
    const double rho = result.value.ratio;
    const Surrogate s = build_surrogate(result.position, rho, constants, layout, radio);
    const Vec2 target = maximize_surrogate(s, box, opts);
    const Vec2 direction = target - result.position;
    if (direction.norm() == 0.0) break;

    bool accepted = false;
    double t = 1.0;
    for (int h = 0; h <= opts.max_halvings; ++h, t *= 0.5) {
      const Vec2 trial = box.clamp(result.position + t * direction);
      DeployValue v;
      try {
        v = deploy_objective(trial, constants, layout, radio, r_min);
      } catch (const Error&) {
        continue;
      }
      if (v.bob_rate_ok && v.ratio >= result.value.ratio) {
        const double gain = v.ratio - result.value.ratio;
        result.position = trial;
        result.value = v;
        ++result.accepted_steps;
        accepted = gain > opts.rel_tol * rho;
        break;
      }
    }
    if (!accepted) break;
  }
  return result;
}

}  // namespace irsuav
