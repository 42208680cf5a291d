// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <cstring>

#include "irsuav/error.hpp"
#include "kernels/variants.hpp"

namespace irsuav::kernels {

std::string_view to_string(Backend backend) {
  return backend == Backend::Avx2 ? "avx2" : "scalar";
}

bool available(Backend backend) {
  switch (backend) {
    case Backend::Scalar: return true;
    case Backend::Avx2:
#if defined(IRSUAV_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table(Backend backend) {
#if defined(IRSUAV_HAVE_AVX2)
  if (backend == Backend::Avx2) {
    if (!available(Backend::Avx2)) raise(ErrorKind::OutOfRange, "avx2 kernels not supported on this CPU");
    return detail::avx2_table;
  }
#else
  if (backend == Backend::Avx2) raise(ErrorKind::OutOfRange, "avx2 kernels not compiled in");
#endif
  return detail::scalar_table;
}

namespace {

Backend select_backend() {
  const char* forced = std::getenv("IRSUAV_KERNELS");
  if (forced != nullptr && std::strcmp(forced, "scalar") == 0) return Backend::Scalar;
  return available(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar;
}

const KernelTable& active_table() {
  static const KernelTable& t = table(select_backend());
  return t;
}

void require_same(std::size_t a, std::size_t b) {
  if (a != b) raise(ErrorKind::DimensionMismatch, "kernel operands differ in length");
}

}  // namespace

Backend active_backend() {
  static const Backend b = select_backend();
  return b;
}

cplx cdot(std::span<const cplx> a, std::span<const cplx> b) {
  require_same(a.size(), b.size());
  return active_table().cdot(a.data(), b.data(), a.size());
}

double norm2(std::span<const cplx> a) { return active_table().norm2(a.data(), a.size()); }

void lincomb3(double s0, std::span<const cplx> x, cplx s1, std::span<const cplx> y, cplx s2,
              std::span<const cplx> z, std::span<cplx> out) {
  require_same(x.size(), y.size());
  require_same(x.size(), z.size());
  require_same(x.size(), out.size());
  active_table().lincomb3(s0, x.data(), s1, y.data(), s2, z.data(), out.data(), x.size());
}

void unit_phase(std::span<const cplx> beta, std::span<cplx> theta, double floor) {
  require_same(beta.size(), theta.size());
  active_table().unit_phase(beta.data(), theta.data(), floor, beta.size());
}

}  // namespace irsuav::kernels
