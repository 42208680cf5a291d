// SPDX-License-Identifier: Apache-2.0
//
// Seeded Monte-Carlo sweeps and their CSV artifacts.
//
// Trial seed: mix_seed(base_seed, trial, sweep_index). Modes share the seed,
// so within a sweep point every mode sees the same NLoS draw.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "irsuav/scenario.hpp"

namespace irsuav {

inline constexpr const char* kResultsHeader =
    "scenario_id,mode,trial_seed,sweep_axis,sweep_value,secrecy_rate_bps_hz,iterations,status";
inline constexpr const char* kSummaryHeader =
    "scenario_id,mode,sweep_axis,sweep_value,mean_secrecy_rate_bps_hz,stderr_bps_hz,trials,infeasible";

struct ResultRow {
  std::string scenario_id;
  Mode mode = Mode::UavIrs;
  std::uint64_t trial_seed = 0;
  SweepAxis sweep_axis = SweepAxis::None;
  double sweep_value = 0.0;
  double secrecy_rate = 0.0;  // 0 for infeasible trials
  int iterations = 0;
  std::string status;  // converged | max_iters | infeasible
};

/// One trial of one mode at one sweep point.
ResultRow run_trial(const Scenario& scenario, Mode mode, std::size_t sweep_index, int trial);

/// Every mode x sweep point x trial, ordered by (mode as listed, sweep index,
/// trial). Output does not depend on `threads`.
std::vector<ResultRow> run_sweep(const Scenario& scenario, int threads = 1);

std::string format_results(const std::vector<ResultRow>& rows);
/// Throws SchemaError with the offending line number.
std::vector<ResultRow> parse_results(const std::string& text);

struct SummaryRow {
  std::string scenario_id;
  Mode mode = Mode::UavIrs;
  SweepAxis sweep_axis = SweepAxis::None;
  double sweep_value = 0.0;
  double mean = 0.0;
  double stderr_ = 0.0;  // sample standard deviation / sqrt(n); 0 when n = 1
  int trials = 0;
  int infeasible = 0;
};

/// Groups by (scenario, mode, sweep value) in first-appearance order.
std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows);
std::string format_summary(const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> parse_summary(const std::string& text);

/// Writes to `path` through a sibling temporary and a rename, so a failed
/// run never leaves a partial file.
void write_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace irsuav
