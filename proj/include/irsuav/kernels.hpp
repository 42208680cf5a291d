// SPDX-License-Identifier: Apache-2.0
//
// Complex-vector inner loops used by the solvers. Every kernel has a scalar
// reference implementation and, on x86-64, an AVX2/FMA variant. The variant
// is picked once at first use from CPUID; IRSUAV_KERNELS=scalar forces the
// reference path.
//
// Variants are not bit-identical to the reference (different summation
// order); tests hold them to 1e-12 relative.
#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "irsuav/linalg.hpp"

namespace irsuav::kernels {

enum class Backend { Scalar, Avx2 };

std::string_view to_string(Backend backend);

struct KernelTable {
  // sum_i conj(a_i) * b_i
  cplx (*cdot)(const cplx* a, const cplx* b, std::size_t n);
  // sum_i |a_i|^2
  double (*norm2)(const cplx* a, std::size_t n);
  // out = s0 * x + s1 * y + s2 * z
  void (*lincomb3)(double s0, const cplx* x, cplx s1, const cplx* y, cplx s2, const cplx* z, cplx* out,
                   std::size_t n);
  // theta_i = beta_i / |beta_i| where |beta_i| > floor, else theta_i unchanged
  void (*unit_phase)(const cplx* beta, cplx* theta, double floor, std::size_t n);
};

bool available(Backend backend);
const KernelTable& table(Backend backend);
Backend active_backend();

cplx cdot(std::span<const cplx> a, std::span<const cplx> b);
double norm2(std::span<const cplx> a);
void lincomb3(double s0, std::span<const cplx> x, cplx s1, std::span<const cplx> y, cplx s2,
              std::span<const cplx> z, std::span<cplx> out);
void unit_phase(std::span<const cplx> beta, std::span<cplx> theta, double floor);

}  // namespace irsuav::kernels
