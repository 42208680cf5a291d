// SPDX-License-Identifier: Apache-2.0
//
// Geometry-driven channel synthesis: distance path loss, elevation-dependent
// Rician factor, and frozen small-scale fading.
//
// Vector convention: ChannelSet stores the column vectors h_ab, h_ae, h_rb,
// h_re and the matrix H_ar, so Bob's combined row channel is
// h_rb^H Theta H_ar + h_ab^H.
#pragma once

#include <cstdint>

#include "irsuav/linalg.hpp"

namespace irsuav {

enum class Link { AB, AE, AR, RB, RE };

/// Horizontal positions (m) plus transmitter and IRS heights. Bob and Eve
/// are on the ground.
struct NodeLayout {
  Vec2 uav_xy{0.0, 0.0};
  Vec2 bob_xy{0.0, 0.0};
  Vec2 eve_xy{0.0, 10.0};
  Vec2 irs_xy{3.0, 5.0};
  double uav_height = 50.0;
  double irs_height = 5.0;

  void validate() const;
};

struct PathlossExponents {
  double ab = 3.5;
  double ae = 3.5;
  double ar = 2.2;
  double rb = 2.8;
  double re = 2.8;

  double of(Link link) const;
};

/// Linear-scale radio parameters. Defaults are the reference scenario
/// (beta0 = -30 dB, k from 0 dB at grazing to 30 dB overhead, noise -55 dBm).
struct RadioParams {
  double beta0 = 1e-3;
  PathlossExponents exponents{};
  double rician_a1 = 1.0;
  double rician_a2 = 4.397613593276566;  // (2/pi) ln(1000)
  double noise_bob = 3.1622776601683795e-9;
  double noise_eve = 3.1622776601683795e-9;
  int n_antennas = 4;
  int n_elements = 60;

  void validate() const;
};

/// A1 and A2 from the Rician factor at 0 and pi/2 elevation (both linear).
std::pair<double, double> rician_coefficients(double k_min, double k_max);

struct LinkGeometry {
  double horizontal = 0.0;
  double height_diff = 0.0;
  double distance = 0.0;
  double elevation = 0.0;
};

LinkGeometry link_geometry(const NodeLayout& layout, Link link);

double rician_factor(double elevation, double a1, double a2);
double elevation_angle(double horizontal_dist, double height_diff);
double path_gain(double distance, double exponent, double beta0);

/// sqrt(k/(k+1)) and sqrt(1/(k+1)).
struct RicianWeights {
  double los = 0.0;
  double nlos = 0.0;
};
RicianWeights rician_weights(double k);

/// Half-wavelength ULA response exp(j pi i cos_angle), i = 0..n-1.
CVec ula_steering(int n, double direction_cosine);

/// LoS and NLoS small-scale components, frozen for a trial.
struct SmallScaleDraw {
  CVec los_ab, los_ae, nlos_ab, nlos_ae;  // N
  CMat los_ar, nlos_ar;                   // M x N
  CVec los_rb, los_re, nlos_rb, nlos_re;  // M
  std::uint64_t seed = 0;

  /// LoS terms are ULA steering vectors (arrays along the y axis) evaluated
  /// at `layout`; NLoS entries are CN(0,1) from the counter-based stream.
  static SmallScaleDraw generate(const NodeLayout& layout, int n_antennas, int n_elements, std::uint64_t seed);
};

struct ChannelSet {
  CVec h_ab, h_ae;
  CMat H_ar;
  CVec h_rb, h_re;
  NodeLayout layout;

  Eigen::Index n_antennas() const { return h_ab.size(); }
  Eigen::Index n_elements() const { return h_rb.size(); }
};

ChannelSet synthesize(const NodeLayout& layout, const RadioParams& radio, const SmallScaleDraw& draw);

/// Zeroes the IRS legs (h_rb, h_re) so the cascade contributes nothing.
void disable_cascade(ChannelSet& channels);

}  // namespace irsuav
