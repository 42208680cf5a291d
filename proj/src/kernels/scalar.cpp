// SPDX-License-Identifier: Apache-2.0
//
// Reference kernels. Complex products are spelled out on the real and
// imaginary parts so the compiler never routes through __muldc3.

#include <cmath>

#include "kernels/variants.hpp"

namespace irsuav::kernels::detail {
namespace {

cplx cdot_scalar(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

double norm2_scalar(const cplx* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  return acc;
}

void lincomb3_scalar(double s0, const cplx* x, cplx s1, const cplx* y, cplx s2, const cplx* z, cplx* out,
                     std::size_t n) {
  const double s1r = s1.real(), s1i = s1.imag();
  const double s2r = s2.real(), s2i = s2.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double yr = y[i].real(), yi = y[i].imag();
    const double zr = z[i].real(), zi = z[i].imag();
    const double re = s0 * x[i].real() + (s1r * yr - s1i * yi) + (s2r * zr - s2i * zi);
    const double im = s0 * x[i].imag() + (s1r * yi + s1i * yr) + (s2r * zi + s2i * zr);
    out[i] = {re, im};
  }
}

void unit_phase_scalar(const cplx* beta, cplx* theta, double floor, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double mag = std::sqrt(beta[i].real() * beta[i].real() + beta[i].imag() * beta[i].imag());
    if (mag > floor) theta[i] = {beta[i].real() / mag, beta[i].imag() / mag};
  }
}

}  // namespace

const KernelTable scalar_table{cdot_scalar, norm2_scalar, lincomb3_scalar, unit_phase_scalar};

}  // namespace irsuav::kernels::detail
