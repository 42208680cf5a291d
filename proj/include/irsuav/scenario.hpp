// SPDX-License-Identifier: Apache-2.0
//
// Scenario configuration: YAML load/emit, the four transmitter/IRS modes and
// the three figure presets.
//
// Values whose key ends in `_db` or `_dbm` are converted to linear scale once,
// on load; every other field is already linear or SI.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "irsuav/ao.hpp"

namespace irsuav {

enum class Mode { UavIrs, UavNoIrs, BsIrs, BsNoIrs };
std::string_view to_string(Mode mode);
/// Throws ConfigError for unknown names.
Mode parse_mode(std::string_view name);
inline constexpr Mode kAllModes[] = {Mode::UavIrs, Mode::UavNoIrs, Mode::BsIrs, Mode::BsNoIrs};

enum class SweepAxis { None, PmaxDbm, MElements, BobY };
std::string_view to_string(SweepAxis axis);
SweepAxis parse_axis(std::string_view name);

struct Sweep {
  SweepAxis axis = SweepAxis::None;
  std::vector<double> values;  // pmax in dBm, M as whole numbers, bob y in metres
};

double dbm_to_watts(double dbm);
double db_to_linear(double db);

struct Scenario {
  std::string scenario_id = "custom";
  std::vector<Mode> modes{std::begin(kAllModes), std::end(kAllModes)};
  NodeLayout layout;
  RadioParams radio;
  double p_max = 100.0;  // watts
  double r_min = 1.0;
  Eigen::Vector3d bs_position{45.0, 5.0, 20.0};
  SearchBox box{};
  int trials = 50;
  std::uint64_t base_seed = 1;
  Sweep sweep;
  int max_iters = 50;
  double tol = 1e-4;

  /// Throws ConfigError naming the offending field.
  void validate() const;
  std::size_t sweep_points() const { return sweep.axis == SweepAxis::None ? 1 : sweep.values.size(); }
  /// Copy with the sweep value at `index` applied (identity for no sweep).
  Scenario at_sweep(std::size_t index) const;
  double sweep_value(std::size_t index) const { return sweep.axis == SweepAxis::None ? 0.0 : sweep.values.at(index); }
};

/// `source` names the input in diagnostics ("<path>:<line>: field ...").
Scenario parse_scenario(const std::string& text, const std::string& source = "<config>");
Scenario load_scenario(const std::string& path);
std::string emit_scenario(const Scenario& scenario);

std::vector<std::string> preset_names();
/// fig2: pmax sweep; fig3: M sweep; fig4: bob_y sweep. Throws ConfigError otherwise.
Scenario preset(std::string_view name);

/// Solver inputs for one mode of a (sweep-resolved) scenario.
struct ModeSetup {
  Problem problem;
  AoConfig config;
  bool movable = true;
};
ModeSetup mode_setup(const Scenario& scenario, Mode mode);

}  // namespace irsuav
