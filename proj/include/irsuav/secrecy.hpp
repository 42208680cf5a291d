// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "irsuav/channel.hpp"
#include "irsuav/numerics.hpp"

namespace irsuav {

struct NoisePowers {
  double bob = 0.0;
  double eve = 0.0;

  static NoisePowers from(const RadioParams& radio) { return {radio.noise_bob, radio.noise_eve}; }
};

enum class Receiver { Bob, Eve };

/// Transmit precoder; ||f||^2 <= p_max.
struct Precoder {
  CVec f;
  double p_max = 0.0;

  double power() const { return f.squaredNorm(); }
  void validate() const;
};

/// IRS reflection design vector theta with |theta_m| = 1, stored as the
/// phases arg(theta_m) in [0, 2 pi). The physical reflection matrix is
/// Theta = diag(conj(theta)), so h Theta b == theta^H diag(h) b.
class PhaseVector {
 public:
  PhaseVector() = default;
  explicit PhaseVector(std::vector<double> phases);

  static PhaseVector zeros(std::size_t m) { return PhaseVector(std::vector<double>(m, 0.0)); }
  /// Phases of a complex vector; zero entries map to phase 0.
  static PhaseVector from_theta(const CVec& theta);

  std::size_t size() const { return phases_.size(); }
  const std::vector<double>& phases() const { return phases_; }
  CVec theta() const;

 private:
  std::vector<double> phases_;
};

/// Reflection-design channels for a fixed precoder:
/// hB = diag(h_rb^H) H_ar f, hB_direct = h_ab^H f (likewise for Eve).
struct EffectiveChannels {
  CVec hB;
  cplx hB_direct{};
  CVec hE;
  cplx hE_direct{};
};

struct SecrecyPoint {
  double gamma_bob = 0.0;
  double gamma_eve = 0.0;
  double rate = 0.0;  // bits/s/Hz, clamped at zero
};

/// Column vector v_n with Q_n = v_n v_n^H, i.e. v_n^H f is the received amplitude.
CVec combined_channel(const ChannelSet& channels, const PhaseVector& theta, Receiver receiver);

double sinr(const ChannelSet& channels, const PhaseVector& theta, const Precoder& f, Receiver receiver,
            const NoisePowers& noise);

SecrecyPoint secrecy_point(double gamma_bob, double gamma_eve);
SecrecyPoint secrecy_rate(const ChannelSet& channels, const PhaseVector& theta, const Precoder& f,
                          const NoisePowers& noise);

/// Rank-one factored Q_b, Q_e.
struct QMatrices {
  CVec v_bob;
  CVec v_eve;

  numerics::HermitianMatrix bob() const { return numerics::HermitianMatrix::outer(v_bob); }
  numerics::HermitianMatrix eve() const { return numerics::HermitianMatrix::outer(v_eve); }
};

QMatrices q_matrices(const ChannelSet& channels, const PhaseVector& theta);

EffectiveChannels effective_channels(const ChannelSet& channels, const CVec& f);

/// |theta^H h + h_direct|^2 for the given receiver.
double received_power(const EffectiveChannels& eff, const CVec& theta, Receiver receiver);

}  // namespace irsuav
