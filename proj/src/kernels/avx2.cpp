// SPDX-License-Identifier: Apache-2.0
//
// AVX2/FMA kernels. One __m256d holds two interleaved complex doubles
// [re0, im0, re1, im1]. Odd tails fall back to scalar arithmetic.

#include <immintrin.h>

#include <cmath>

#include "kernels/variants.hpp"

namespace irsuav::kernels::detail {
namespace {

inline const double* raw(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* raw(cplx* p) { return reinterpret_cast<double*>(p); }

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

cplx cdot_avx2(const cplx* a, const cplx* b, std::size_t n) {
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(raw(a + i));
    const __m256d vb = _mm256_loadu_pd(raw(b + i));
    const __m256d vb_swap = _mm256_permute_pd(vb, 0b0101);
    acc_re = _mm256_fmadd_pd(va, vb, acc_re);        // ar*br, ai*bi
    acc_im = _mm256_fmadd_pd(va, vb_swap, acc_im);   // ar*bi, ai*br
  }
  // imaginary part is (ar*bi) - (ai*br): negate the odd lanes before folding
  const __m256d sign = _mm256_set_pd(-1.0, 1.0, -1.0, 1.0);
  double re = hsum(acc_re);
  double im = hsum(_mm256_mul_pd(acc_im, sign));
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

double norm2_avx2(const cplx* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(raw(a + i));
    acc = _mm256_fmadd_pd(va, va, acc);
  }
  double sum = hsum(acc);
  for (; i < n; ++i) sum += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  return sum;
}

// s * v for a complex scalar s broadcast against two packed complex values
inline __m256d cmul_scalar(__m256d v, __m256d s_re, __m256d s_im) {
  const __m256d v_swap = _mm256_permute_pd(v, 0b0101);
  return _mm256_fmaddsub_pd(v, s_re, _mm256_mul_pd(v_swap, s_im));
}

void lincomb3_avx2(double s0, const cplx* x, cplx s1, const cplx* y, cplx s2, const cplx* z, cplx* out,
                   std::size_t n) {
  const __m256d v_s0 = _mm256_set1_pd(s0);
  const __m256d s1_re = _mm256_set1_pd(s1.real()), s1_im = _mm256_set1_pd(s1.imag());
  const __m256d s2_re = _mm256_set1_pd(s2.real()), s2_im = _mm256_set1_pd(s2.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = _mm256_loadu_pd(raw(x + i));
    const __m256d vy = _mm256_loadu_pd(raw(y + i));
    const __m256d vz = _mm256_loadu_pd(raw(z + i));
    __m256d r = _mm256_mul_pd(v_s0, vx);
    r = _mm256_add_pd(r, cmul_scalar(vy, s1_re, s1_im));
    r = _mm256_add_pd(r, cmul_scalar(vz, s2_re, s2_im));
    _mm256_storeu_pd(raw(out + i), r);
  }
  for (; i < n; ++i) {
    const double yr = y[i].real(), yi = y[i].imag();
    const double zr = z[i].real(), zi = z[i].imag();
    out[i] = {s0 * x[i].real() + (s1.real() * yr - s1.imag() * yi) + (s2.real() * zr - s2.imag() * zi),
              s0 * x[i].imag() + (s1.real() * yi + s1.imag() * yr) + (s2.real() * zi + s2.imag() * zr)};
  }
}

void unit_phase_avx2(const cplx* beta, cplx* theta, double floor, std::size_t n) {
  const __m256d v_floor = _mm256_set1_pd(floor);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vb = _mm256_loadu_pd(raw(beta + i));
    const __m256d sq = _mm256_mul_pd(vb, vb);
    const __m256d mag = _mm256_sqrt_pd(_mm256_add_pd(sq, _mm256_permute_pd(sq, 0b0101)));
    const __m256d keep_new = _mm256_cmp_pd(mag, v_floor, _CMP_GT_OQ);
    const __m256d old = _mm256_loadu_pd(raw(theta + i));
    _mm256_storeu_pd(raw(theta + i), _mm256_blendv_pd(old, _mm256_div_pd(vb, mag), keep_new));
  }
  for (; i < n; ++i) {
    const double mag = std::sqrt(beta[i].real() * beta[i].real() + beta[i].imag() * beta[i].imag());
    if (mag > floor) theta[i] = {beta[i].real() / mag, beta[i].imag() / mag};
  }
}

}  // namespace

const KernelTable avx2_table{cdot_avx2, norm2_avx2, lincomb3_avx2, unit_phase_avx2};

}  // namespace irsuav::kernels::detail
