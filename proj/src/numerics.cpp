// SPDX-License-Identifier: Apache-2.0

#include "irsuav/numerics.hpp"

#include <algorithm>
#include <cmath>

#include "irsuav/error.hpp"

namespace irsuav::numerics {
namespace {

bool all_finite(const CMat& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

Eigen::VectorXd eigenvalues(const CMat& m) {
  Eigen::SelfAdjointEigenSolver<CMat> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) raise(ErrorKind::NonFinite, "Hermitian eigensolver did not converge");
  return solver.eigenvalues();
}

}  // namespace

HermitianMatrix::HermitianMatrix(const CMat& entries) {
  if (entries.rows() != entries.cols() || entries.rows() == 0)
    raise(ErrorKind::DimensionMismatch, "Hermitian matrix must be square and non-empty");
  if (!all_finite(entries)) raise(ErrorKind::NonFinite, "matrix has non-finite entries");
  const double scale = entries.cwiseAbs().maxCoeff();
  const double skew = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (skew > 1e-12 * scale) raise(ErrorKind::OutOfRange, "matrix is not conjugate-symmetric");
  m_ = 0.5 * (entries + entries.adjoint());
}

HermitianMatrix HermitianMatrix::identity(Eigen::Index dim) {
  return HermitianMatrix(CMat::Identity(dim, dim), Trusted{});
}

HermitianMatrix HermitianMatrix::outer(const CVec& v) {
  if (v.size() == 0) raise(ErrorKind::DimensionMismatch, "outer product of empty vector");
  return HermitianMatrix(v * v.adjoint(), Trusted{});
}

double max_eigenvalue(const HermitianMatrix& m) {
  if (!all_finite(m.matrix())) raise(ErrorKind::NonFinite, "matrix has non-finite entries");
  return eigenvalues(m.matrix()).maxCoeff();
}

double rayleigh_quotient(const MatrixPencil& pencil, const CVec& v) {
  const double num = v.dot(pencil.a.matrix() * v).real();
  const double den = v.dot(pencil.b.matrix() * v).real();
  return num / den;
}

void apply_phase_convention(CVec& v) {
  if (v.size() == 0) return;
  const double largest = v.cwiseAbs().maxCoeff();
  if (largest == 0.0) return;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > 1e-12 * largest) {
      v *= std::conj(v(i)) / mag;
      v(i) = cplx(mag, 0.0);
      return;
    }
  }
}

CVec dominant_generalized_eigenvector(const MatrixPencil& pencil) {
  const CMat& a = pencil.a.matrix();
  const CMat& b = pencil.b.matrix();
  if (a.rows() != b.rows()) raise(ErrorKind::DimensionMismatch, "pencil members differ in dimension");
  if (!all_finite(a) || !all_finite(b)) raise(ErrorKind::NonFinite, "pencil has non-finite entries");

  const Eigen::VectorXd b_spectrum = eigenvalues(b);
  const double b_max = b_spectrum.maxCoeff();
  if (!(b_max > 0.0) || b_spectrum.minCoeff() <= 1e-12 * b_max)
    raise(ErrorKind::SingularPencil, "B is not positive definite");

  Eigen::LLT<CMat> chol(b);
  if (chol.info() != Eigen::Success) raise(ErrorKind::SingularPencil, "Cholesky factorization of B failed");
  const auto lower = chol.matrixL();

  // C = L^-1 A L^-H shares the pencil's eigenvalues.
  const CMat y = lower.solve(a);
  CMat c = lower.solve(CMat(y.adjoint())).adjoint();
  c = 0.5 * (c + c.adjoint()).eval();

  Eigen::SelfAdjointEigenSolver<CMat> solver(c);
  if (solver.info() != Eigen::Success) raise(ErrorKind::NonFinite, "reduced eigenproblem did not converge");
  const CVec top = solver.eigenvectors().col(c.cols() - 1);

  CVec e = chol.matrixU().solve(top);
  e /= e.norm();
  apply_phase_convention(e);
  return e;
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi, const BisectOptions& opts) {
  if (!(hi > lo)) raise(ErrorKind::OutOfRange, "bisection requires lo < hi");
  double f_lo = f(lo);
  double f_hi = f(hi);
  if (!std::isfinite(f_lo) || !std::isfinite(f_hi)) raise(ErrorKind::NonFinite, "bracket endpoint not finite");
  if (f_lo == 0.0) return lo;

  while (std::signbit(f_lo) == std::signbit(f_hi) && f_hi != 0.0) {
    if (hi >= opts.expand_cap) raise(ErrorKind::NoSignChange, "no sign change up to the expansion cap");
    hi = std::min(lo + (hi - lo) * opts.expand_factor, opts.expand_cap);
    f_hi = f(hi);
    if (!std::isfinite(f_hi)) raise(ErrorKind::NonFinite, "bracket endpoint not finite");
  }
  if (f_hi == 0.0) return hi;

  for (int it = 0; it < opts.max_iterations; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) return mid;
    const double f_mid = f(mid);
    if (!std::isfinite(f_mid)) raise(ErrorKind::NonFinite, "function not finite inside bracket");
    if (std::abs(f_mid) <= opts.f_tol) return mid;
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
    const double centre = lo + 0.5 * (hi - lo);
    if (hi - lo <= opts.x_rel_tol * std::max(1.0, std::abs(centre))) return centre;
  }
  return lo + 0.5 * (hi - lo);
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
  BisectOptions opts;
  opts.f_tol = tol;
  opts.x_rel_tol = tol;
  return bisect_root(f, lo, hi, opts);
}

double check_gradient(const std::function<double(const Vec2&)>& f, const Vec2& point, const Vec2& analytic_grad) {
  double worst = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double step = 1e-5 * std::max(1.0, std::abs(point[i]));
    Vec2 plus = point;
    Vec2 minus = point;
    plus[i] += step;
    minus[i] -= step;
    const double f_plus = f(plus);
    const double f_minus = f(minus);
    if (!std::isfinite(f_plus) || !std::isfinite(f_minus))
      raise(ErrorKind::NonFinite, "function not evaluable at perturbed point");
    const double central = (f_plus - f_minus) / (2.0 * step);
    worst = std::max(worst, std::abs(central - analytic_grad[i]) / (std::abs(analytic_grad[i]) + 1e-12));
  }
  return worst;
}

}  // namespace irsuav::numerics
