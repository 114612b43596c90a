#pragma once

#include <optional>
#include <vector>

#include "liftlab/linalg/matrix.hpp"

namespace liftlab {

// Orthonormal columns spanning a subspace of C^ambient.
struct SubspaceBasis {
  std::size_t ambient = 0;
  Matrix basis;  // ambient x dim
  double tol = 0.0;  // rank cut that produced it
  std::size_t dim() const { return basis.cols(); }
};

// max(m, n) * ||M|| * 1e-12
double default_rank_tolerance(const Matrix& m);
double rank_tolerance_for_scale(const Matrix& m, double scale);

SubspaceBasis range_basis(const Matrix& m, std::optional<double> rank_tol = {});
SubspaceBasis kernel_basis(const Matrix& m, std::optional<double> rank_tol = {});
std::size_t rank(const Matrix& m, std::optional<double> rank_tol = {});
SubspaceBasis orthogonal_complement(const SubspaceBasis& s);
// Span of the columns, via SVD (columns need not be independent).
SubspaceBasis span_of(const Matrix& columns, std::optional<double> rank_tol = {});
SubspaceBasis intersect(const SubspaceBasis& a, const SubspaceBasis& b, double tol);
SubspaceBasis direct_sum(const SubspaceBasis& a, const SubspaceBasis& b);
Matrix projector(const SubspaceBasis& s);

// Distance of each column of m from s, as the largest residual norm.
double distance_from(const SubspaceBasis& s, const Matrix& m);

// Sines of the principal angles between equal-dimensional subspaces, descending.
std::vector<double> principal_sines(const SubspaceBasis& a, const SubspaceBasis& b);

struct SubspaceComparison {
  bool equal = false;
  std::size_t dim_first = 0;
  std::size_t dim_second = 0;
  double max_sine = 0.0;  // 1 when the dimensions differ
};
SubspaceComparison compare_subspaces(const SubspaceBasis& a, const SubspaceBasis& b, double tol);
SubspaceComparison ranges_equal(const Matrix& m, const Matrix& n, double tol,
                                std::optional<double> rank_tol = {});

// Solves X B = C with X vanishing on R(B)-perp. Requires R(C*) in R(B*) up to tol
// (relative to ||C||), otherwise throws RangeNotIncluded.
Matrix douglas_solve(const Matrix& b, const Matrix& c, double tol,
                     std::optional<double> rank_tol = {});

}  // namespace liftlab
