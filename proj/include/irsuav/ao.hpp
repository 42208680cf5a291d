// SPDX-License-Identifier: Apache-2.0
//
// Alternating optimization: power -> reflection -> deployment, each block
// updated with the freshest values of the others, until the secrecy rate
// changes by less than the tolerance.
#pragma once

#include <string>
#include <vector>

#include "irsuav/deploy.hpp"
#include "irsuav/power.hpp"
#include "irsuav/reflection.hpp"

namespace irsuav {

/// Everything fixed for one solve. The layout's uav_xy is where the
/// transmitter starts (and stays, when deployment is disabled).
struct Problem {
  NodeLayout layout;
  RadioParams radio;
  double p_max = 100.0;  // watts
  double r_min = 1.0;    // bits/s/Hz
  SearchBox box{};
  bool cascade_enabled = true;
};

struct AoConfig {
  int max_iters = 50;
  double tol = 1e-4;  // bits/s/Hz
  bool enable_power = true;
  bool enable_reflection = true;
  bool enable_deployment = true;
  ReflectionOptions reflection{};
  DeployOptions deployment{};

  void validate() const;
};

struct InitialPoint {
  Precoder f;
  PhaseVector theta;
  Vec2 a{0.0, 0.0};
};

enum class SolveStatus { Converged, MaxIters, Infeasible };
std::string_view to_string(SolveStatus status);

/// Secrecy rate after each block of one iteration; iteration 0 is the
/// starting point (all three fields equal its rate).
struct TraceEntry {
  int iteration = 0;
  double rate = 0.0;
  double after_power = 0.0;
  double after_reflection = 0.0;
  double after_deployment = 0.0;
};

struct SolveReport {
  std::vector<TraceEntry> trace;
  Precoder final_f;
  PhaseVector final_theta;
  Vec2 final_a{0.0, 0.0};
  SolveStatus status = SolveStatus::MaxIters;
  std::string diagnostic;
  // block updates discarded because they would have lowered the rate
  int rejected_power = 0;
  int rejected_reflection = 0;

  double final_rate() const { return trace.empty() ? 0.0 : trace.back().rate; }
  int iterations() const { return trace.empty() ? 0 : trace.back().iteration; }
};

/// Channels at horizontal position a with the problem's cascade switch applied.
ChannelSet channels_at(const Problem& problem, const SmallScaleDraw& draw, const Vec2& a);

/// f0: full-power matched filter to Bob's direct channel; theta0: Bob's
/// cascade co-phased with the direct path; a0: midpoint of Bob and the IRS
/// clamped to the box (or the fixed position when `movable` is false).
/// Falls back to a0 above Bob if the rate floor fails; throws InfeasibleStart
/// when neither point is feasible.
InitialPoint default_init(const Problem& problem, const SmallScaleDraw& draw, bool movable = true);

/// Never throws for infeasibility: reports status Infeasible instead.
SolveReport solve(const Problem& problem, const SmallScaleDraw& draw, const InitialPoint& init, const AoConfig& cfg);

}  // namespace irsuav
