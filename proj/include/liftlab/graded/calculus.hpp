#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "liftlab/graded/operator.hpp"
#include "liftlab/linalg/psd.hpp"
#include "liftlab/linalg/subspace.hpp"

namespace liftlab {

// Window over shape holding the support of all the given finitely supported
// operators (which must act on shape), and at least min_grades grades.
Window support_window(const LiftedSpaceShape& shape, const std::vector<const GradedOperator*>& ops,
                      std::size_t min_grades = 0);

// Matrix of op on w, after checking op = P_w op P_w. Throws Unsupported otherwise.
Matrix finite_block(const GradedOperator& op, const Window& w);

// f(A) for Hermitian A with A - I finitely supported, assuming f(1) = 1.
GradedOperator identity_plus_function(const GradedOperator& a,
                                      const std::function<Matrix(const Matrix&)>& f);
GradedOperator graded_sqrt(const GradedOperator& a);
GradedOperator graded_inv_sqrt(const GradedOperator& a);
// Smallest spectral value of a Hermitian operator that is either finitely
// supported (zero beyond) or identity plus finitely supported.
double graded_min_eigenvalue(const GradedOperator& a);
double graded_max_eigenvalue(const GradedOperator& a);
// Operator norm of a finitely supported operator.
double graded_norm(const GradedOperator& op);

Matrix gram(const std::vector<GradedVector>& vs);
// sqrt of the largest eigenvalue of the Gram matrix of the images of an orthonormal family.
double norm_on(const GradedOperator& op, const std::vector<GradedVector>& orthonormal);

// Finite-dimensional subspace with an orthonormal basis of graded vectors.
struct GradedSubspace {
  LiftedSpaceShape shape;
  std::vector<GradedVector> basis;

  std::size_t dim() const { return basis.size(); }
  std::size_t grade_extent() const;
  GradedVector project(const GradedVector& y) const;
  GradedVector residual(const GradedVector& y) const { return y - project(y); }
  double distance(const GradedVector& y) const { return residual(y).norm(); }
  SubspaceBasis in_window(const Window& w) const;
};

GradedSubspace subspace_from_basis(const Window& w, const SubspaceBasis& b);
GradedSubspace span_of(const LiftedSpaceShape& shape, const std::vector<GradedVector>& vs,
                       std::optional<double> rank_tol = {});
// Range of a finitely supported operator with in and out shape equal.
GradedSubspace graded_range(const GradedOperator& op, std::optional<double> rank_tol = {});
// Orthogonal complement of s inside the window w (s must lie in w).
GradedSubspace complement_in(const Window& w, const GradedSubspace& s);
SubspaceComparison compare_subspaces(const GradedSubspace& a, const GradedSubspace& b, double tol);

// a <= b test for operators whose difference is finitely supported. tol is absolute.
PsdComparison graded_psd_compare(const GradedOperator& a, const GradedOperator& b, double tol);
// Spectral radius of a Hermitian operator that is finitely supported or identity plus finite.
double graded_scale(const GradedOperator& op);

}  // namespace liftlab
