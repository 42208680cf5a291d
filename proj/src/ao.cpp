// SPDX-License-Identifier: Apache-2.0

#include "irsuav/ao.hpp"

#include <cmath>

#include "irsuav/error.hpp"

namespace irsuav {
namespace {

// log2((1 + gamma_b) / (1 + gamma_e)) before clamping; blocks are compared on
// this so progress below zero secrecy still counts.
double unclamped(const SecrecyPoint& p) { return std::log2(1.0 + p.gamma_bob) - std::log2(1.0 + p.gamma_eve); }

bool meets_floor(const SecrecyPoint& p, double r_min) { return p.gamma_bob >= std::exp2(r_min) - 1.0; }

}  // namespace

void AoConfig::validate() const {
  if (max_iters < 1) raise(ErrorKind::OutOfRange, "max_iters must be at least 1");
  if (!(tol > 0.0)) raise(ErrorKind::OutOfRange, "tol must be positive");
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxIters: return "max_iters";
    case SolveStatus::Infeasible: return "infeasible";
  }
  return "unknown";
}

ChannelSet channels_at(const Problem& problem, const SmallScaleDraw& draw, const Vec2& a) {
  NodeLayout layout = problem.layout;
  layout.uav_xy = a;
  ChannelSet c = synthesize(layout, problem.radio, draw);
  if (!problem.cascade_enabled) disable_cascade(c);
  return c;
}

InitialPoint default_init(const Problem& problem, const SmallScaleDraw& draw, bool movable) {
  std::vector<Vec2> candidates;
  if (movable) {
    candidates.push_back(problem.box.clamp(0.5 * (problem.layout.bob_xy + problem.layout.irs_xy)));
    candidates.push_back(problem.box.clamp(problem.layout.bob_xy));
  } else {
    candidates.push_back(problem.layout.uav_xy);
  }
  const NoisePowers noise = NoisePowers::from(problem.radio);

  for (const Vec2& a : candidates) {
    const ChannelSet ch = channels_at(problem, draw, a);
    CVec dir = ch.h_ab;
    if (dir.norm() == 0.0) {
      dir = CVec::Zero(ch.n_antennas());
      dir(0) = 1.0;
    }
    dir /= dir.norm();
    numerics::apply_phase_convention(dir);
    Precoder f{std::sqrt(problem.p_max) * dir, problem.p_max};

    const EffectiveChannels eff = effective_channels(ch, f.f);
    const double direct_phase = eff.hB_direct == cplx{} ? 0.0 : std::arg(eff.hB_direct);
    std::vector<double> phases(static_cast<std::size_t>(ch.n_elements()), 0.0);
    for (Eigen::Index m = 0; m < eff.hB.size(); ++m)
      if (eff.hB(m) != cplx{}) phases[m] = std::arg(eff.hB(m)) - direct_phase;

    InitialPoint init{std::move(f), PhaseVector(std::move(phases)), a};
    if (meets_floor(secrecy_rate(ch, init.theta, init.f, noise), problem.r_min)) return init;
  }
  raise(ErrorKind::InfeasibleStart, "rate floor unreachable from every default starting point");
}

SolveReport solve(const Problem& problem, const SmallScaleDraw& draw, const InitialPoint& init, const AoConfig& cfg) {
  cfg.validate();
  SolveReport report;
  report.final_f = init.f;
  report.final_theta = init.theta;
  report.final_a = init.a;

  const NoisePowers noise = NoisePowers::from(problem.radio);
  const ReflectionParams refl{noise.bob, noise.eve, problem.r_min};

  Precoder f = init.f;
  PhaseVector theta = init.theta;
  Vec2 a = init.a;
  ChannelSet ch;
  SecrecyPoint point;
  try {
    f.validate();
    ch = channels_at(problem, draw, a);
    point = secrecy_rate(ch, theta, f, noise);
  } catch (const Error& e) {
    report.status = SolveStatus::Infeasible;
    report.diagnostic = e.what();
    return report;
  }
  report.trace.push_back({0, point.rate, point.rate, point.rate, point.rate});
  if (!meets_floor(point, problem.r_min)) {
    report.status = SolveStatus::Infeasible;
    report.diagnostic = "initial point violates the rate floor";
    return report;
  }
  if (!cfg.enable_power && !cfg.enable_reflection && !cfg.enable_deployment) {
    report.status = SolveStatus::Converged;
    return report;
  }

  report.status = SolveStatus::MaxIters;
  for (int n = 1; n <= cfg.max_iters; ++n) {
    const double previous = point.rate;
    TraceEntry entry;
    entry.iteration = n;

    if (cfg.enable_power) {
      try {
        Precoder candidate = solve_precoder(ch, theta, problem.p_max, problem.r_min, noise);
        const SecrecyPoint next = secrecy_rate(ch, theta, candidate, noise);
        if (meets_floor(next, problem.r_min) && unclamped(next) >= unclamped(point)) {
          f = std::move(candidate);
          point = next;
        } else {
          ++report.rejected_power;
        }
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::InfeasibleRate) throw;
        report.status = SolveStatus::Infeasible;
        report.diagnostic = e.what();
        break;
      }
    }
    entry.after_power = point.rate;

    if (cfg.enable_reflection) {
      try {
        const EffectiveChannels eff = effective_channels(ch, f.f);
        ReflectionResult r = solve_reflection(eff, theta, refl, cfg.reflection);
        const SecrecyPoint next = secrecy_rate(ch, r.theta, f, noise);
        if (meets_floor(next, problem.r_min) && unclamped(next) >= unclamped(point)) {
          theta = std::move(r.theta);
          point = next;
        } else {
          ++report.rejected_reflection;
        }
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoSignChange) throw;
        ++report.rejected_reflection;
      }
    }
    entry.after_reflection = point.rate;

    if (cfg.enable_deployment) {
      const DeployConstants constants = deploy_constants(ch, theta, f, draw, problem.radio);
      const DeployResult placed =
          solve_deployment(a, constants, problem.layout, problem.radio, problem.r_min, problem.box, cfg.deployment);
      if (placed.position != a) {
        ChannelSet moved = channels_at(problem, draw, placed.position);
        const SecrecyPoint next = secrecy_rate(moved, theta, f, noise);
        a = placed.position;
        ch = std::move(moved);
        point = next;
      }
    }
    entry.after_deployment = point.rate;
    entry.rate = point.rate;
    report.trace.push_back(entry);

    if (std::abs(point.rate - previous) < cfg.tol) {
      report.status = SolveStatus::Converged;
      break;
    }
  }

  report.final_f = f;
  report.final_theta = theta;
  report.final_a = a;
  return report;
}

}  // namespace irsuav
