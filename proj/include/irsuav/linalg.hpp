// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <span>

#include <Eigen/Dense>

namespace irsuav {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using Vec2 = Eigen::Vector2d;

inline std::span<const cplx> view(const CVec& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }
inline std::span<cplx> view(CVec& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

}  // namespace irsuav
