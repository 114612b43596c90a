#include "liftlab/verify/predicates.hpp"

#include <algorithm>

#include "liftlab/error.hpp"
#include "liftlab/graded/calculus.hpp"
#include "liftlab/liftings/host.hpp"

namespace liftlab {

PredicateResult is_quasi_isometry(const Matrix& t, double tol) {
  return is_quasi_isometry(as_operator(t), tol);
}

PredicateResult is_quasi_isometry(const GradedOperator& t, double tol) {
  if (!(t.in_shape() == t.out_shape())) throw NonSquare("is_quasi_isometry: operator is not square");
  const double r = quasi_isometry_defect(t);
  return {r <= tol, r, tol};
}

PredicateResult is_quasicontraction(const Matrix& t, double tol) {
  return is_quasicontraction(as_operator(t), tol);
}

PredicateResult is_quasicontraction(const GradedOperator& t, double tol) {
  if (!(t.in_shape() == t.out_shape())) throw NonSquare("is_quasicontraction: operator is not square");
  const GradedOperator ts = t.adjoint();
  const GradedOperator tt = ts * t;
  const GradedOperator t2 = ts * tt * t;
  const double scale = std::max(1.0, graded_scale(tt));
  const PsdComparison c = graded_psd_compare(t2, tt, tol * scale);
  const bool holds = c.order == PsdOrder::Leq || c.order == PsdOrder::Equal;
  return {holds, std::max(0.0, -c.min_eigenvalue) / scale, tol};
}

}  // namespace liftlab
