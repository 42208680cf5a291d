// SPDX-License-Identifier: Apache-2.0
//
// Dense Hermitian eigenstructure, generalized eigenvectors, monotone root
// bracketing and a central-difference gradient checker.
#pragma once

#include <functional>

#include "irsuav/linalg.hpp"

namespace irsuav::numerics {

/// Square complex matrix with entries[i][j] == conj(entries[j][i]).
class HermitianMatrix {
 public:
  /// Validates finiteness and conjugate symmetry (relative tolerance 1e-12
  /// of the largest entry), then stores the exactly symmetrized matrix.
  explicit HermitianMatrix(const CMat& entries);

  static HermitianMatrix identity(Eigen::Index dim);
  /// v v^H
  static HermitianMatrix outer(const CVec& v);

  Eigen::Index dim() const { return m_.rows(); }
  const CMat& matrix() const { return m_; }

 private:
  struct Trusted {};
  HermitianMatrix(CMat entries, Trusted) : m_(std::move(entries)) {}
  CMat m_;
};

/// Pair (A, B) of the generalized problem A e = lambda B e, B positive definite.
struct MatrixPencil {
  HermitianMatrix a;
  HermitianMatrix b;
};

/// Largest eigenvalue (Hermitian spectra are real).
double max_eigenvalue(const HermitianMatrix& m);

/// (v^H A v) / (v^H B v)
double rayleigh_quotient(const MatrixPencil& pencil, const CVec& v);

/// Rotates v in place so its first significant entry (magnitude above 1e-12
/// of the largest) is real and positive. Zero vectors are left untouched.
void apply_phase_convention(CVec& v);

/// Unit vector maximizing the pencil's Rayleigh quotient, via Cholesky
/// reduction of B. Throws SingularPencil when B's smallest eigenvalue is not
/// above 1e-12 times its largest, NonFinite on NaN/Inf input.
CVec dominant_generalized_eigenvector(const MatrixPencil& pencil);

struct BisectOptions {
  double f_tol = 1e-12;      // accept mu when |f(mu)| <= f_tol
  double x_rel_tol = 1e-12;  // or when hi - lo <= x_rel_tol * max(1, |mu|)
  double expand_factor = 10.0;
  double expand_cap = 1e12;  // hi is grown geometrically up to this bound
  int max_iterations = 400;
};

/// Root of a monotone scalar function on [lo, hi]. If f(lo) and f(hi) share a
/// sign, hi is expanded geometrically before NoSignChange is thrown.
double bisect_root(const std::function<double(double)>& f, double lo, double hi, const BisectOptions& opts);
double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol);

/// Max over coordinates of |central difference - analytic| / (|analytic| + 1e-12),
/// with step 1e-5 * max(1, |x_i|).
double check_gradient(const std::function<double(const Vec2&)>& f, const Vec2& point, const Vec2& analytic_grad);

}  // namespace irsuav::numerics
