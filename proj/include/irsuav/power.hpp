// SPDX-License-Identifier: Apache-2.0
//
// Precoder update for fixed reflection and position: full-power dominant
// generalized eigenvector of (P Qb + sb^2 I, P Qe + se^2 I).
#pragma once

#include "irsuav/secrecy.hpp"

namespace irsuav {

/// (f^H Qb f + sb^2) / (f^H Qe f + se^2)
double precoder_objective(const QMatrices& q, const CVec& f, const NoisePowers& noise);

/// P_max >= (2^R_min - 1) sb^2 / ||Qb||_2, with ||Qb||_2 = ||v_b||^2 for the rank-one Qb.
bool precoder_feasible(const QMatrices& q, double p_max, double r_min, const NoisePowers& noise);

/// Throws InfeasibleRate when precoder_feasible() fails. If the unconstrained
/// eigenvector misses Bob's rate floor, the floor-constrained optimum is
/// found by a one-dimensional search over the power placed along v_b; both
/// Q matrices are rank one, so the problem lives in span{v_b, v_e}.
Precoder solve_precoder(const ChannelSet& channels, const PhaseVector& theta, double p_max, double r_min,
                        const NoisePowers& noise);

}  // namespace irsuav
