#pragma once

#include "liftlab/liftings/host.hpp"
#include "liftlab/liftings/lifting.hpp"
#include "liftlab/report.hpp"

namespace liftlab {

// A >= T*T, A >= T*AT and R(A - T*T) = R(A - T*AT). Throws NotInvertible when A is
// not positive definite, Unsupported when the differences are not finitely supported.
ConditionReport check_natural_hypotheses(const GradedOperator& t, const GradedOperator& a,
                                         double tol = kDefaultTolerance);
ConditionReport check_natural_hypotheses(const Matrix& t, const Matrix& a,
                                         double tol = kDefaultTolerance);

// S = [[S+, J X0, 0], [0, 0, (A - T*T)^1/2], [0, 0, T]] on l2_+(H0) + H0 + H with
// H0 = R(A - T*T) and X0 (A - T*T)^1/2 = (A - T*AT)^1/2. Throws HypothesesFailed
// naming the first condition that fails.
LiftingOperator build_natural_lifting(const GradedOperator& t, const Certificate& a,
                                      double tol = kDefaultTolerance);
LiftingOperator build_natural_lifting(const Matrix& t, const Matrix& a,
                                      double tol = kDefaultTolerance);

// Q = [[S+, D~], [0, T]] on l2_+(D_C + N(T*)) + H, D = sqrt(||G||^2 + 1/2 + d_margin) I.
LiftingOperator build_quasicontraction_lifting(const Matrix& t, double d_margin = 0.0,
                                               double tol = kDefaultTolerance);

// S = [[V, G0], [0, Q]] on l2_+(N(Q*)) + M with G0 = d P_N(Q*), d^2 = ||Q|N(Q*)||^2 + 1/2.
// Q must be quasi-isometric with non-negative band offsets.
LiftingOperator build_left_invertible_lifting(const GradedOperator& t, const InnerLifting& inner,
                                              double tol = kDefaultTolerance);
// Same with T = Q (H = M).
LiftingOperator build_left_invertible_lifting(const GradedOperator& q, double tol = kDefaultTolerance);
LiftingOperator build_left_invertible_lifting(const Matrix& q, double tol = kDefaultTolerance);

// Quasi-isometric lifting of any T with a certificate T*AT <= A, on l2_+(C^n) + C^n:
// Qh = ((A - I)^1/2 T h at grade 0) + (((A - T*AT)^1/2 - (A - I)^1/2) h at grade 1) + Th,
// after scaling A so that A >= I.
InnerLifting build_auxiliary_lifting(const Matrix& t, const Matrix& a, double tol = kDefaultTolerance);

// The Lyapunov-series certificate of a matrix with spectral radius below one, if found.
std::optional<Certificate> lyapunov_certificate(const Matrix& t);

}  // namespace liftlab
