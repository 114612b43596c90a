#include "liftlab/linalg/subspace.hpp"

#include <algorithm>
#include <cmath>

#include "liftlab/error.hpp"
#include "liftlab/linalg/decompose.hpp"
#include "liftlab/linalg/psd.hpp"

namespace liftlab {

double default_rank_tolerance(const Matrix& m) {
  return rank_tolerance_for_scale(m, spectral_norm(m));
}

double rank_tolerance_for_scale(const Matrix& m, double scale) {
  return static_cast<double>(std::max(m.rows(), m.cols())) * scale * 1e-12;
}

namespace {

std::size_t count_above(const std::vector<double>& sigma, double tol) {
  std::size_t r = 0;
  while (r < sigma.size() && sigma[r] > tol) ++r;
  return r;
}

}  // namespace

SubspaceBasis range_basis(const Matrix& m, std::optional<double> rank_tol) {
  if (m.empty()) return {m.rows(), Matrix(m.rows(), 0)};
  const double tol = rank_tol.value_or(default_rank_tolerance(m));
  const Svd s = svd(m);
  const std::size_t r = count_above(s.sigma, tol);
  return {m.rows(), s.u.columns(0, r), tol};
}

SubspaceBasis kernel_basis(const Matrix& m, std::optional<double> rank_tol) {
  if (m.cols() == 0) return {0, Matrix(0, 0)};
  if (m.rows() == 0) return {m.cols(), Matrix::identity(m.cols())};
  const double tol = rank_tol.value_or(default_rank_tolerance(m));
  const Svd s = svd(m);
  const std::size_t r = count_above(s.sigma, tol);
  return {m.cols(), s.v.columns(r, m.cols() - r), tol};
}

std::size_t rank(const Matrix& m, std::optional<double> rank_tol) {
  return range_basis(m, rank_tol).dim();
}

SubspaceBasis orthogonal_complement(const SubspaceBasis& s) {
  if (s.dim() == 0) return {s.ambient, Matrix::identity(s.ambient)};
  // Kernel of the adjoint of the basis; unit singular values make the tolerance easy.
  return {s.ambient, kernel_basis(s.basis.adjoint(), 0.5).basis};
}

SubspaceBasis span_of(const Matrix& columns, std::optional<double> rank_tol) {
  return range_basis(columns, rank_tol);
}

SubspaceBasis intersect(const SubspaceBasis& a, const SubspaceBasis& b, double tol) {
  if (a.ambient != b.ambient) throw ShapeMismatch("intersect: ambient dimensions differ");
  if (a.dim() == 0 || b.dim() == 0) return {a.ambient, Matrix(a.ambient, 0)};
  // x = A y lies in B iff (I - P_B) A y = 0.
  const Matrix residual = a.basis - projector(b) * a.basis;
  const SubspaceBasis ker = kernel_basis(residual, tol);
  return span_of(a.basis * ker.basis, 0.5);
}

SubspaceBasis direct_sum(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (a.ambient != b.ambient) throw ShapeMismatch("direct_sum: ambient dimensions differ");
  return span_of(hstack(a.basis, b.basis), 1e-10);
}

Matrix projector(const SubspaceBasis& s) { return s.basis * s.basis.adjoint(); }

double distance_from(const SubspaceBasis& s, const Matrix& m) {
  if (m.rows() != s.ambient) throw ShapeMismatch("distance_from: ambient dimension");
  const Matrix r = m - s.basis * (s.basis.adjoint() * m);
  double worst = 0.0;
  for (std::size_t j = 0; j < r.cols(); ++j) worst = std::max(worst, norm(r.column(j)));
  return worst;
}

std::vector<double> principal_sines(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (a.ambient != b.ambient || a.dim() != b.dim()) {
    throw ShapeMismatch("principal_sines needs subspaces of equal dimension");
  }
  if (a.dim() == 0) return {};
  // Singular values of (I - P_B) Q_A are the sines; accurate for small angles.
  const Matrix r = a.basis - b.basis * (b.basis.adjoint() * a.basis);
  std::vector<double> s = svd(r).sigma;
  for (double& x : s) x = std::min(x, 1.0);
  return s;
}

SubspaceComparison compare_subspaces(const SubspaceBasis& a, const SubspaceBasis& b, double tol) {
  SubspaceComparison out;
  out.dim_first = a.dim();
  out.dim_second = b.dim();
  if (a.ambient != b.ambient || a.dim() != b.dim()) {
    out.max_sine = 1.0;
    return out;
  }
  const auto ab = principal_sines(a, b);
  const auto ba = principal_sines(b, a);
  out.max_sine = std::max(ab.empty() ? 0.0 : ab.front(), ba.empty() ? 0.0 : ba.front());
  out.equal = out.max_sine <= tol;
  return out;
}

SubspaceComparison ranges_equal(const Matrix& m, const Matrix& n, double tol,
                                std::optional<double> rank_tol) {
  if (m.rows() != n.rows()) throw ShapeMismatch("ranges_equal: row counts differ");
  return compare_subspaces(range_basis(m, rank_tol), range_basis(n, rank_tol), tol);
}

Matrix douglas_solve(const Matrix& b, const Matrix& c, double tol, std::optional<double> rank_tol) {
  if (b.cols() != c.cols()) throw ShapeMismatch("douglas_solve: B and C need equal column counts");
  const double tol_b = rank_tol.value_or(default_rank_tolerance(b));
  const SubspaceBasis row_space = range_basis(b.adjoint(), tol_b);
  const double scale = std::max(spectral_norm(c), 1e-300);
  const double leak = distance_from(row_space, c.adjoint()) / scale;
  if (spectral_norm(c) > 0.0 && leak > tol) {
    throw RangeNotIncluded("douglas_solve: N(B) not contained in N(C), residual " +
                           std::to_string(leak));
  }
  return c * pinv(b, tol_b);
}

}  // namespace liftlab
