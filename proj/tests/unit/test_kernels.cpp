// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "irsuav/error.hpp"
#include "irsuav/kernels.hpp"
#include "support.hpp"

using namespace irsuav;
namespace k = irsuav::kernels;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("scalar table matches Eigen arithmetic") {
    CounterRng rng(11, 0);
    const auto& s = k::table(k::Backend::Scalar);
    for (std::size_t n : {0u, 1u, 3u, 4u, 17u, 60u}) {
      const CVec a = testing::random_cvec(rng, n), b = testing::random_cvec(rng, n), c = testing::random_cvec(rng, n);
      CHECK(rel(s.cdot(a.data(), b.data(), n), a.dot(b)) < 1e-13);  // Eigen's dot conjugates the first argument
      CHECK(std::abs(s.norm2(a.data(), n) - a.squaredNorm()) <= 1e-13 * std::max(1.0, a.squaredNorm()));
      CVec out(n);
      const cplx s1(0.3, -1.2), s2(-2.0, 0.5);
      s.lincomb3(1.7, a.data(), s1, b.data(), s2, c.data(), out.data(), n);
      const CVec ref = 1.7 * a + s1 * b + s2 * c;
      CHECK((out - ref).norm() <= 1e-13 * std::max(1.0, ref.norm()));
    }
  }

  TEST_CASE("unit_phase keeps the previous entry below the floor") {
    CVec beta(3), theta(3);
    beta << cplx(0, 2), cplx(0, 0), cplx(-3, 0);
    theta << cplx(1, 0), cplx(0, 1), cplx(1, 0);
    k::unit_phase(view(beta), view(theta), 1e-14);
    CHECK(std::abs(theta(0) - cplx(0, 1)) < 1e-15);
    CHECK(theta(1) == cplx(0, 1));
    CHECK(std::abs(theta(2) - cplx(-1, 0)) < 1e-15);
  }

  TEST_CASE("avx2 variants agree with the scalar reference") {
    if (!k::available(k::Backend::Avx2)) {
      MESSAGE("avx2 not available; equivalence not exercised");
      return;
    }
    const auto& s = k::table(k::Backend::Scalar);
    const auto& v = k::table(k::Backend::Avx2);
    CounterRng rng(12, 0);
    for (std::size_t n = 0; n <= 67; ++n) {
      const CVec a = testing::random_cvec(rng, n), b = testing::random_cvec(rng, n), c = testing::random_cvec(rng, n);
      CHECK(rel(v.cdot(a.data(), b.data(), n), s.cdot(a.data(), b.data(), n)) < 1e-12);
      const double ns = s.norm2(a.data(), n);
      CHECK(std::abs(v.norm2(a.data(), n) - ns) <= 1e-12 * std::max(1.0, ns));

      CVec out_s(n), out_v(n);
      const cplx s1(0.3, -1.2), s2(-2.0, 0.5);
      s.lincomb3(-0.4, a.data(), s1, b.data(), s2, c.data(), out_s.data(), n);
      v.lincomb3(-0.4, a.data(), s1, b.data(), s2, c.data(), out_v.data(), n);
      CHECK((out_s - out_v).norm() <= 1e-12 * std::max(1.0, out_s.norm()));

      CVec beta = a;
      if (n > 2) beta(n / 2) = 0.0;
      CVec th_s = testing::random_unit_modulus(rng, n), th_v = th_s;
      s.unit_phase(beta.data(), th_s.data(), 1e-14, n);
      v.unit_phase(beta.data(), th_v.data(), 1e-14, n);
      CHECK((th_s - th_v).norm() <= 1e-12 * std::max(1.0, th_s.norm()));
    }
  }

  TEST_CASE("span wrappers reject length mismatch") {
    CVec a(3), b(4);
    CHECK_THROWS_AS(k::cdot(view(a), view(b)), Error);
  }
}
