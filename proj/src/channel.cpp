// SPDX-License-Identifier: Apache-2.0

#include "irsuav/channel.hpp"

#include <cmath>
#include <numbers>

#include "irsuav/error.hpp"
#include "irsuav/rng.hpp"

namespace irsuav {
namespace {

// Stream ids for the NLoS draws; each component gets its own sequence so
// changing M never perturbs the N-vector draws.
enum Stream : std::uint64_t { kNlosAB = 1, kNlosAE = 2, kNlosAR = 3, kNlosRB = 4, kNlosRE = 5 };

CVec gaussian_vector(std::uint64_t seed, Stream stream, Eigen::Index n) {
  CounterRng rng(seed, stream);
  CVec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.complex_normal();
  return v;
}

// Row-major fill: row m holds element m's N entries, so the first rows are
// shared between draws that differ only in M.
CMat gaussian_matrix(std::uint64_t seed, Stream stream, Eigen::Index rows, Eigen::Index cols) {
  CounterRng rng(seed, stream);
  CMat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.complex_normal();
  return m;
}

double direction_cosine_y(const Vec2& from, const Vec2& to, double distance) {
  return (to.y() - from.y()) / distance;
}

bool finite_xy(const Vec2& v) { return std::isfinite(v.x()) && std::isfinite(v.y()); }

}  // namespace

void NodeLayout::validate() const {
  if (!finite_xy(uav_xy) || !finite_xy(bob_xy) || !finite_xy(eve_xy) || !finite_xy(irs_xy) ||
      !std::isfinite(uav_height) || !std::isfinite(irs_height))
    raise(ErrorKind::NonFinite, "layout has non-finite coordinates");
  if (!(irs_height > 0.0)) raise(ErrorKind::OutOfRange, "IRS height must be positive");
  if (!(uav_height > irs_height)) raise(ErrorKind::OutOfRange, "transmitter must be above the IRS");
}

double PathlossExponents::of(Link link) const {
  switch (link) {
    case Link::AB: return ab;
    case Link::AE: return ae;
    case Link::AR: return ar;
    case Link::RB: return rb;
    case Link::RE: return re;
  }
  return ab;
}

void RadioParams::validate() const {
  if (!(beta0 > 0.0)) raise(ErrorKind::OutOfRange, "beta0 must be positive");
  for (Link l : {Link::AB, Link::AE, Link::AR, Link::RB, Link::RE})
    if (!(exponents.of(l) >= 2.0)) raise(ErrorKind::OutOfRange, "path loss exponents must be >= 2");
  if (!(rician_a1 > 0.0)) raise(ErrorKind::OutOfRange, "A1 must be positive");
  if (!std::isfinite(rician_a2)) raise(ErrorKind::NonFinite, "A2 must be finite");
  if (!(noise_bob > 0.0) || !(noise_eve > 0.0)) raise(ErrorKind::OutOfRange, "noise powers must be positive");
  if (n_antennas < 1 || n_elements < 1) raise(ErrorKind::OutOfRange, "N and M must be at least 1");
}

std::pair<double, double> rician_coefficients(double k_min, double k_max) {
  if (!(k_min > 0.0) || !(k_max > 0.0)) raise(ErrorKind::OutOfRange, "Rician factors must be positive");
  return {k_min, 2.0 / std::numbers::pi * std::log(k_max / k_min)};
}

LinkGeometry link_geometry(const NodeLayout& layout, Link link) {
  LinkGeometry g;
  Vec2 from, to;
  switch (link) {
    case Link::AB: from = layout.uav_xy; to = layout.bob_xy; g.height_diff = layout.uav_height; break;
    case Link::AE: from = layout.uav_xy; to = layout.eve_xy; g.height_diff = layout.uav_height; break;
    case Link::AR:
      from = layout.uav_xy; to = layout.irs_xy; g.height_diff = layout.uav_height - layout.irs_height;
      break;
    case Link::RB: from = layout.irs_xy; to = layout.bob_xy; g.height_diff = layout.irs_height; break;
    case Link::RE: from = layout.irs_xy; to = layout.eve_xy; g.height_diff = layout.irs_height; break;
  }
  g.horizontal = (to - from).norm();
  g.distance = std::hypot(g.horizontal, g.height_diff);
  g.elevation = elevation_angle(g.horizontal, g.height_diff);
  return g;
}

double rician_factor(double elevation, double a1, double a2) {
  constexpr double slack = 1e-12;
  if (!(elevation >= -slack && elevation <= std::numbers::pi / 2 + slack))
    raise(ErrorKind::OutOfRange, "elevation outside [0, pi/2]");
  return a1 * std::exp(a2 * elevation);
}

double elevation_angle(double horizontal_dist, double height_diff) {
  if (!(height_diff >= 0.0)) raise(ErrorKind::OutOfRange, "height difference must be non-negative");
  const double d = std::hypot(horizontal_dist, height_diff);
  if (d == 0.0) raise(ErrorKind::DegenerateGeometry, "coincident nodes");
  return std::asin(std::min(1.0, height_diff / d));
}

double path_gain(double distance, double exponent, double beta0) {
  if (!(distance >= 1.0)) raise(ErrorKind::OutOfRange, "distance below the 1 m reference");
  if (!(exponent >= 2.0)) raise(ErrorKind::OutOfRange, "path loss exponent below 2");
  return beta0 * std::pow(distance, -exponent);
}

RicianWeights rician_weights(double k) {
  if (std::isinf(k)) return {1.0, 0.0};
  return {std::sqrt(k / (k + 1.0)), std::sqrt(1.0 / (k + 1.0))};
}

CVec ula_steering(int n, double direction_cosine) {
  CVec v(n);
  for (int i = 0; i < n; ++i) v(i) = std::polar(1.0, std::numbers::pi * i * direction_cosine);
  return v;
}

SmallScaleDraw SmallScaleDraw::generate(const NodeLayout& layout, int n_antennas, int n_elements,
                                        std::uint64_t seed) {
  layout.validate();
  if (n_antennas < 1 || n_elements < 1) raise(ErrorKind::OutOfRange, "N and M must be at least 1");
  const auto ab = link_geometry(layout, Link::AB);
  const auto ae = link_geometry(layout, Link::AE);
  const auto ar = link_geometry(layout, Link::AR);
  const auto rb = link_geometry(layout, Link::RB);
  const auto re = link_geometry(layout, Link::RE);

  SmallScaleDraw d;
  d.seed = seed;
  d.los_ab = ula_steering(n_antennas, direction_cosine_y(layout.uav_xy, layout.bob_xy, ab.distance));
  d.los_ae = ula_steering(n_antennas, direction_cosine_y(layout.uav_xy, layout.eve_xy, ae.distance));
  const CVec irs_rx = ula_steering(n_elements, direction_cosine_y(layout.irs_xy, layout.uav_xy, ar.distance));
  const CVec uav_tx = ula_steering(n_antennas, direction_cosine_y(layout.uav_xy, layout.irs_xy, ar.distance));
  d.los_ar = irs_rx * uav_tx.adjoint();
  d.los_rb = ula_steering(n_elements, direction_cosine_y(layout.irs_xy, layout.bob_xy, rb.distance));
  d.los_re = ula_steering(n_elements, direction_cosine_y(layout.irs_xy, layout.eve_xy, re.distance));

  d.nlos_ab = gaussian_vector(seed, kNlosAB, n_antennas);
  d.nlos_ae = gaussian_vector(seed, kNlosAE, n_antennas);
  d.nlos_ar = gaussian_matrix(seed, kNlosAR, n_elements, n_antennas);
  d.nlos_rb = gaussian_vector(seed, kNlosRB, n_elements);
  d.nlos_re = gaussian_vector(seed, kNlosRE, n_elements);
  return d;
}

namespace {

template <typename T>
T link_gain(const NodeLayout& layout, const RadioParams& radio, Link link, const T& los, const T& nlos) {
  const LinkGeometry g = link_geometry(layout, link);
  const RicianWeights w = rician_weights(rician_factor(g.elevation, radio.rician_a1, radio.rician_a2));
  const double amplitude = std::sqrt(path_gain(g.distance, radio.exponents.of(link), radio.beta0));
  return amplitude * (w.los * los + w.nlos * nlos);
}

}  // namespace

ChannelSet synthesize(const NodeLayout& layout, const RadioParams& radio, const SmallScaleDraw& draw) {
  layout.validate();
  radio.validate();
  const Eigen::Index n = radio.n_antennas;
  const Eigen::Index m = radio.n_elements;
  if (draw.los_ab.size() != n || draw.nlos_ab.size() != n || draw.los_ae.size() != n ||
      draw.nlos_ae.size() != n || draw.los_ar.rows() != m || draw.los_ar.cols() != n ||
      draw.nlos_ar.rows() != m || draw.nlos_ar.cols() != n || draw.los_rb.size() != m ||
      draw.nlos_rb.size() != m || draw.los_re.size() != m || draw.nlos_re.size() != m)
    raise(ErrorKind::DimensionMismatch, "small-scale draw does not match (N, M)");

  ChannelSet c;
  c.layout = layout;
  c.h_ab = link_gain<CVec>(layout, radio, Link::AB, draw.los_ab, draw.nlos_ab);
  c.h_ae = link_gain<CVec>(layout, radio, Link::AE, draw.los_ae, draw.nlos_ae);
  c.H_ar = link_gain<CMat>(layout, radio, Link::AR, draw.los_ar, draw.nlos_ar);
  c.h_rb = link_gain<CVec>(layout, radio, Link::RB, draw.los_rb, draw.nlos_rb);
  c.h_re = link_gain<CVec>(layout, radio, Link::RE, draw.los_re, draw.nlos_re);
  return c;
}

void disable_cascade(ChannelSet& channels) {
  channels.h_rb.setZero();
  channels.h_re.setZero();
}

}  // namespace irsuav
