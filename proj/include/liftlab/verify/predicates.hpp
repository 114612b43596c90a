#pragma once

#include "liftlab/graded/operator.hpp"
#include "liftlab/linalg/matrix.hpp"
#include "liftlab/report.hpp"

namespace liftlab {

struct PredicateResult {
  bool holds = false;
  double residual = 0.0;
  double tol = 0.0;
};

// ||T*^2 T^2 - T*T|| <= tol ||T*T||.
PredicateResult is_quasi_isometry(const Matrix& t, double tol = kDefaultTolerance);
PredicateResult is_quasi_isometry(const GradedOperator& t, double tol = kDefaultTolerance);
// T*^2 T^2 <= T*T, with tol relative to ||T*T||; residual is the most negative
// eigenvalue of T*T - T*^2 T^2 (zero when the order holds).
PredicateResult is_quasicontraction(const Matrix& t, double tol = kDefaultTolerance);
PredicateResult is_quasicontraction(const GradedOperator& t, double tol = kDefaultTolerance);

}  // namespace liftlab
