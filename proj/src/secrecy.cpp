// SPDX-License-Identifier: Apache-2.0

#include "irsuav/secrecy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "irsuav/error.hpp"
#include "irsuav/kernels.hpp"

namespace irsuav {
namespace {

void check_dims(const ChannelSet& channels, std::size_t m, Eigen::Index n) {
  if (channels.h_ae.size() != channels.n_antennas() || channels.H_ar.cols() != channels.n_antennas() ||
      channels.H_ar.rows() != channels.n_elements() || channels.h_re.size() != channels.n_elements())
    raise(ErrorKind::DimensionMismatch, "inconsistent channel set");
  if (static_cast<Eigen::Index>(m) != channels.n_elements())
    raise(ErrorKind::DimensionMismatch, "phase vector length differs from M");
  if (n != channels.n_antennas()) raise(ErrorKind::DimensionMismatch, "precoder length differs from N");
}

double wrap_phase(double phase) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double p = std::fmod(phase, two_pi);
  if (p < 0.0) p += two_pi;
  if (p >= two_pi) p = 0.0;
  return p;
}

}  // namespace

void Precoder::validate() const {
  if (!(p_max >= 0.0)) raise(ErrorKind::OutOfRange, "p_max must be non-negative");
  if (power() > p_max + 1e-12 * std::max(1.0, p_max)) raise(ErrorKind::OutOfRange, "precoder exceeds power budget");
}

PhaseVector::PhaseVector(std::vector<double> phases) : phases_(std::move(phases)) {
  for (double& p : phases_) {
    if (!std::isfinite(p)) raise(ErrorKind::NonFinite, "non-finite phase");
    p = wrap_phase(p);
  }
}

PhaseVector PhaseVector::from_theta(const CVec& theta) {
  std::vector<double> phases(static_cast<std::size_t>(theta.size()));
  for (Eigen::Index i = 0; i < theta.size(); ++i) phases[i] = theta(i) == cplx{} ? 0.0 : std::arg(theta(i));
  return PhaseVector(std::move(phases));
}

CVec PhaseVector::theta() const {
  CVec t(static_cast<Eigen::Index>(phases_.size()));
  for (std::size_t i = 0; i < phases_.size(); ++i) t(i) = std::polar(1.0, phases_[i]);
  return t;
}

CVec combined_channel(const ChannelSet& channels, const PhaseVector& theta, Receiver receiver) {
  check_dims(channels, theta.size(), channels.n_antennas());
  const CVec& h_r = receiver == Receiver::Bob ? channels.h_rb : channels.h_re;
  const CVec& h_a = receiver == Receiver::Bob ? channels.h_ab : channels.h_ae;
  const CVec weighted = h_r.cwiseProduct(theta.theta());
  return channels.H_ar.adjoint() * weighted + h_a;
}

double sinr(const ChannelSet& channels, const PhaseVector& theta, const Precoder& f, Receiver receiver,
            const NoisePowers& noise) {
  check_dims(channels, theta.size(), f.f.size());
  const CVec v = combined_channel(channels, theta, receiver);
  const double power = std::norm(kernels::cdot(view(v), view(f.f)));
  return power / (receiver == Receiver::Bob ? noise.bob : noise.eve);
}

SecrecyPoint secrecy_point(double gamma_bob, double gamma_eve) {
  SecrecyPoint p;
  p.gamma_bob = gamma_bob;
  p.gamma_eve = gamma_eve;
  p.rate = std::max(0.0, std::log2(1.0 + gamma_bob) - std::log2(1.0 + gamma_eve));
  return p;
}

SecrecyPoint secrecy_rate(const ChannelSet& channels, const PhaseVector& theta, const Precoder& f,
                          const NoisePowers& noise) {
  return secrecy_point(sinr(channels, theta, f, Receiver::Bob, noise), sinr(channels, theta, f, Receiver::Eve, noise));
}

QMatrices q_matrices(const ChannelSet& channels, const PhaseVector& theta) {
  return {combined_channel(channels, theta, Receiver::Bob), combined_channel(channels, theta, Receiver::Eve)};
}

EffectiveChannels effective_channels(const ChannelSet& channels, const CVec& f) {
  check_dims(channels, static_cast<std::size_t>(channels.n_elements()), f.size());
  const CVec cascade = channels.H_ar * f;
  EffectiveChannels eff;
  eff.hB = channels.h_rb.conjugate().cwiseProduct(cascade);
  eff.hE = channels.h_re.conjugate().cwiseProduct(cascade);
  eff.hB_direct = kernels::cdot(view(channels.h_ab), view(f));
  eff.hE_direct = kernels::cdot(view(channels.h_ae), view(f));
  return eff;
}

double received_power(const EffectiveChannels& eff, const CVec& theta, Receiver receiver) {
  const bool bob = receiver == Receiver::Bob;
  const CVec& h = bob ? eff.hB : eff.hE;
  if (h.size() != theta.size()) raise(ErrorKind::DimensionMismatch, "theta length differs from M");
  return std::norm(kernels::cdot(view(theta), view(h)) + (bob ? eff.hB_direct : eff.hE_direct));
}

}  // namespace irsuav
