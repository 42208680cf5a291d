// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <numbers>

#include "irsuav/error.hpp"
#include "irsuav/reflection.hpp"
#include "support.hpp"

using namespace irsuav;
using std::numbers::pi;

namespace {

// Seeded reflection instance on the reference scenario: effective channels
// for a random full-power precoder.
struct ReflInstance {
  EffectiveChannels eff;
  ReflectionParams params;
  ChannelSet channels;
  Precoder f;
};

ReflInstance refl_instance(std::uint64_t seed, int m, double r_min = 1.0) {
  auto inst = testing::make_instance(seed, 4, m);
  CounterRng rng(seed, 77);
  ReflInstance r;
  r.channels = inst.channels;
  r.f = Precoder{10.0 * testing::random_unit_vector(rng, 4), 100.0};
  r.eff = effective_channels(inst.channels, r.f.f);
  r.params = {inst.problem.radio.noise_bob, inst.problem.radio.noise_eve, r_min};
  return r;
}

EffectiveChannels scalar_eff(cplx hb, cplx hb_d, cplx he, cplx he_d) {
  EffectiveChannels e;
  e.hB = CVec::Constant(1, hb);
  e.hB_direct = hb_d;
  e.hE = CVec::Constant(1, he);
  e.hE_direct = he_d;
  return e;
}

}  // namespace

TEST_SUITE("reflection") {
  TEST_CASE("rank-two eigenvalue matches a dense solver") {
    CounterRng rng(51, 0);
    for (int t = 0; t < 50; ++t) {
      const Eigen::Index m = 1 + t % 9;
      const CVec he = testing::random_cvec(rng, m), hb = testing::random_cvec(rng, m);
      for (double mu : {0.0, 0.3, 1.0, 7.5}) {
        const CMat h = he * he.adjoint() - mu * hb * hb.adjoint();
        Eigen::SelfAdjointEigenSolver<CMat> es(h);
        const double ref = es.eigenvalues().maxCoeff();
        CHECK(rank_two_max_eigenvalue(he, hb, mu) == doctest::Approx(ref).epsilon(1e-10).scale(he.squaredNorm()));
      }
    }
  }

  TEST_CASE("surrogate majorizes and touches at theta tilde") {
    CounterRng rng(52, 0);
    for (int t = 0; t < 200; ++t) {
      const ReflInstance r = refl_instance(700 + t, 8);
      const double mu = 3.0 * rng.uniform();
      const CVec tilde = testing::random_unit_modulus(rng, 8);
      const CVec theta = testing::random_unit_modulus(rng, 8);
      const MMState s = surrogate_coefficients(r.eff, tilde, mu, r.params);
      const double scale = r.params.noise_eve;
      CHECK(surrogate_value(s, theta) - dinkelbach_objective(r.eff, theta, mu, r.params) >= -1e-8 * scale);
      CHECK(std::abs(surrogate_value(s, tilde) - dinkelbach_objective(r.eff, tilde, mu, r.params)) <= 1e-10 * scale);
    }
  }

  TEST_CASE("degenerate coefficients with zero Eve cascade and mu = 0") {
    const EffectiveChannels e = scalar_eff(cplx(1, 1), cplx(0.5, 0), cplx(0, 0), cplx(2, -1));
    const ReflectionParams p{1.0, 0.25, 0.0};
    const MMState s = surrogate_coefficients(e, CVec::Constant(1, cplx(1, 0)), 0.0, p);
    CHECK(s.lambda_max == 0.0);
    CHECK(s.beta.isZero(0));
    CHECK(s.c == doctest::Approx(5.0 + 0.25));
  }

  TEST_CASE("closed-form phases") {
    MMState s;
    s.beta = CVec::Constant(3, cplx(2.0, 0.0));
    s.theta_tilde = CVec::Constant(3, cplx(0, 1));
    for (double ph : phase_closed_form(s).phases()) CHECK(ph == doctest::Approx(0.0));
    s.beta = CVec::Constant(1, cplx(0, 1));
    s.theta_tilde = CVec::Constant(1, cplx(1, 0));
    CHECK(phase_closed_form(s).phases()[0] == doctest::Approx(pi / 2));
    s.beta = CVec::Zero(1);
    s.theta_tilde = CVec::Constant(1, std::polar(1.0, 1.0));
    CHECK(phase_closed_form(s).phases()[0] == doctest::Approx(1.0));
  }

  TEST_CASE("closed form attains the phase grid maximum") {
    CounterRng rng(53, 0);
    MMState s;
    s.beta = testing::random_cvec(rng, 4);
    s.theta_tilde = CVec::Ones(4);
    const CVec th = phase_closed_form(s).theta();
    const double closed = 2.0 * th.dot(s.beta).real();
    double grid = -1e300;
    for (int code = 0; code < 65536; ++code) {
      CVec g(4);
      for (int m = 0; m < 4; ++m) g(m) = std::polar(1.0, 2.0 * pi * ((code >> (4 * m)) & 15) / 16.0);
      grid = std::max(grid, 2.0 * g.dot(s.beta).real());
    }
    CHECK(closed >= grid - 1e-12);
    CHECK(closed == doctest::Approx(2.0 * s.beta.cwiseAbs().sum()).epsilon(1e-12));
  }

  TEST_CASE("MM descent") {
    for (int t = 0; t < 100; ++t) {
      const ReflInstance r = refl_instance(800 + t, 16);
      const MMResult res = mm_minimize(r.eff, PhaseVector::zeros(16), 0.7, r.params);
      for (std::size_t i = 1; i < res.trace.size(); ++i) CHECK(res.trace[i] <= res.trace[i - 1]);
      CHECK(res.phi <= dinkelbach_objective(r.eff, PhaseVector::zeros(16).theta(), 0.7, r.params));
    }
  }

  TEST_CASE("MM returns a fixed point unchanged") {
    // theta = 1 cancels Eve exactly; beta = lambda * 1 - 0 keeps phase 0
    const EffectiveChannels e = scalar_eff(0.0, 0.0, cplx(1.0, 0.0), cplx(-1.0, 0.0));
    const ReflectionParams p{1.0, 1.0, 0.0};
    const PhaseVector start({0.0});
    const MMResult res = mm_minimize(e, start, 0.5, p);
    CHECK(res.iterations == 0);
    CHECK(res.theta.phases() == start.phases());
  }

  TEST_CASE("MM anti-aligns a lone Eve cascade") {
    // h_B = 0: minimize |conj(theta) h_E + h~_E|^2, optimum theta = h_E/|h_E| * conj-phase of -h~_E
    const EffectiveChannels e = scalar_eff(0.0, 0.0, cplx(1.0, 0.0), cplx(0.0, 0.6));
    const ReflectionParams p{1.0, 1.0, 0.0};
    const MMResult res = mm_minimize(e, PhaseVector::zeros(1), 0.5, p);
    const cplx th = res.theta.theta()(0);
    CHECK(std::norm(std::conj(th) * cplx(1.0, 0.0) + cplx(0.0, 0.6)) == doctest::Approx(0.16).epsilon(1e-6));
  }

  TEST_CASE("single-element example: objective 5") {
    const EffectiveChannels e = scalar_eff(1.0, 1.0, 0.0, 0.0);
    const ReflectionParams p{1.0, 1.0, 0.0};
    const ReflectionResult r = solve_reflection(e, PhaseVector({2.0}), p);
    CHECK(std::abs(r.theta.theta()(0) - cplx(1.0, 0.0)) < 1e-6);
    CHECK(reflection_ratio(e, r.theta.theta(), p) == doctest::Approx(5.0).epsilon(1e-9));
  }

  TEST_CASE("symmetric links: ratio 1 and the floor holds") {
    CounterRng rng(54, 0);
    const CVec h = testing::random_cvec(rng, 3);
    EffectiveChannels e{h, cplx(0.3, 0.1), h, cplx(0.3, 0.1)};
    const ReflectionParams p{1.0, 1.0, 0.0};
    const ReflectionResult r = solve_reflection(e, PhaseVector::zeros(3), p);
    CHECK(reflection_ratio(e, r.theta.theta(), p) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rate_margin(e, r.theta.theta(), p) >= 0.0);
  }

  TEST_CASE("solve_reflection beats random sampling at M = 4") {
    CounterRng rng(55, 0);
    for (int t = 0; t < 5; ++t) {
      const ReflInstance r = refl_instance(900 + t, 4);
      const ReflectionResult res = solve_reflection(r.eff, PhaseVector::zeros(4), r.params);
      const double obj = reflection_ratio(r.eff, res.theta.theta(), r.params);
      double best = 0.0;
      for (int s = 0; s < 100000; ++s) {
        const CVec th = testing::random_unit_modulus(rng, 4);
        if (rate_margin(r.eff, th, r.params) >= 0.0) best = std::max(best, reflection_ratio(r.eff, th, r.params));
      }
      CHECK(obj >= best * (1.0 - 1e-6));
      CHECK(rate_margin(r.eff, res.theta.theta(), r.params) >= 0.0);
    }
  }

  TEST_CASE("reflection step never lowers the secrecy rate") {
    CounterRng rng(56, 0);
    for (int t = 0; t < 100; ++t) {
      const ReflInstance r = refl_instance(1000 + t, 8, 0.0);
      const NoisePowers noise{r.params.noise_bob, r.params.noise_eve};
      const PhaseVector start = PhaseVector::from_theta(testing::random_unit_modulus(rng, 8));
      const ReflectionResult res = solve_reflection(r.eff, start, r.params);
      CHECK(secrecy_rate(r.channels, res.theta, r.f, noise).rate >=
            secrecy_rate(r.channels, start, r.f, noise).rate - 1e-9);
    }
  }

  TEST_CASE("Dinkelbach value decreases in mu") {
    const ReflInstance r = refl_instance(1100, 8);
    double prev = 1e300;
    for (double mu = 0.0; mu <= 4.0; mu += 0.25) {
      const double v = dinkelbach_value(r.eff, PhaseVector::zeros(8), mu, r.params);
      CHECK(v < prev);
      prev = v;
    }
  }

  TEST_CASE("negative mu is rejected") {
    const ReflInstance r = refl_instance(1200, 2);
    CHECK_THROWS_AS(surrogate_coefficients(r.eff, PhaseVector::zeros(2), -1.0, r.params), Error);
  }
}
