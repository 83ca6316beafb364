#pragma once

// Closed-form expectation values and minimal detectable phase for the x-polarized
// CSS evolved under alpha Jz^2 + beta Jz + gamma Jx. These closed forms are not
// reconciled with exact evolution; oracle_compare.hpp measures the residuals.

#include "spinlock/spin_core.hpp"

namespace spinlock::analytic {

using spin::PhaseTriple;

inline constexpr double kFringeNodeThreshold = 1e-12;
inline constexpr double kRadicandTolerance = 1e-12;

// x^n for integer n >= 0 with the sign of x preserved; 0^0 = 1.
double int_pow(double x, int n);

// cos^{N-1}(alpha) and sin^{N-1}(alpha).
double cos_factor(double alpha, int n_atoms);
double sin_factor(double alpha, int n_atoms);

double expect_jx(const PhaseTriple& phases, int n_atoms);

double expect_jz(const PhaseTriple& phases, int n_atoms);

// Denominator of the minimal detectable phase; proportional to <Jx>.
double fringe_denominator(const PhaseTriple& phases, int n_atoms);

// Throws FringeNodeError when |denominator| <= 1e-12 and DomainError when the
// radicand is below -1e-12. Returns the magnitude of the ratio.
double min_detectable_phase(const PhaseTriple& phases, int n_atoms);

// 1 / sqrt(N)
double sql_phase(int n_atoms);

}  // namespace spinlock::analytic
