#include "liftlab/graded/calculus.hpp"

#include <algorithm>
#include <cmath>

#include "liftlab/error.hpp"
#include "liftlab/linalg/decompose.hpp"

namespace liftlab {

Window support_window(const LiftedSpaceShape& shape, const std::vector<const GradedOperator*>& ops,
                      std::size_t min_grades) {
  std::size_t g = shape.fiber_dim == 0 ? 0 : min_grades;
  for (const auto* op : ops) {
    if (!(op->in_shape() == shape) || !(op->out_shape() == shape)) {
      throw ShapeMismatch("support_window: operator acts on a different space");
    }
    if (!op->is_finitely_supported()) throw Unsupported("support_window: operator has infinite rank");
    if (shape.fiber_dim > 0) g = std::max(g, op->support_grades());
  }
  return window(shape, g);
}

Matrix finite_block(const GradedOperator& op, const Window& w) {
  if (!op.is_finitely_supported()) throw Unsupported("finite_block: operator has infinite rank");
  if (w.shape.fiber_dim > 0 && op.support_grades() > w.grades) {
    throw Unsupported("finite_block: operator support exceeds the window");
  }
  return op.compress(w, w);
}

namespace {

GradedOperator minus_identity(const GradedOperator& a) {
  return a - GradedOperator::identity(a.in_shape());
}

}  // namespace

GradedOperator identity_plus_function(const GradedOperator& a,
                                      const std::function<Matrix(const Matrix&)>& f) {
  if (!(a.in_shape() == a.out_shape())) throw NonSquare("identity_plus_function: operator is not square");
  const GradedOperator rest = minus_identity(a);
  if (!rest.is_finitely_supported()) {
    throw Unsupported("identity_plus_function: A - I is not finitely supported");
  }
  const Window w = support_window(a.in_shape(), {&rest});
  return GradedOperator::identity_outside(f(a.compress(w, w)), w);
}

GradedOperator graded_sqrt(const GradedOperator& a) {
  return identity_plus_function(a, [](const Matrix& m) { return psd_sqrt(m); });
}

GradedOperator graded_inv_sqrt(const GradedOperator& a) {
  return identity_plus_function(a, [](const Matrix& m) { return pd_inv_sqrt(m); });
}

namespace {

// Extreme eigenvalues over a window plus the value taken outside it.
std::pair<double, double> graded_spectrum_bounds(const GradedOperator& a) {
  if (!(a.in_shape() == a.out_shape())) throw NonSquare("spectrum of a non-square operator");
  const LiftedSpaceShape& shape = a.in_shape();
  double outside;
  Window w;
  if (a.is_finitely_supported()) {
    w = support_window(shape, {&a});
    outside = 0.0;
  } else {
    const GradedOperator rest = minus_identity(a);
    if (!rest.is_finitely_supported()) throw Unsupported("operator is neither finite nor identity plus finite");
    w = support_window(shape, {&rest});
    outside = 1.0;
  }
  const Matrix block = a.compress(w, w);
  const bool has_outside = shape.fiber_dim > 0;
  if (block.rows() == 0) return {has_outside ? outside : 0.0, has_outside ? outside : 0.0};
  const HermitianEig e = hermitian_eig(block);
  double lo = e.values.front(), hi = e.values.back();
  if (has_outside) {
    lo = std::min(lo, outside);
    hi = std::max(hi, outside);
  }
  return {lo, hi};
}

}  // namespace

double graded_min_eigenvalue(const GradedOperator& a) { return graded_spectrum_bounds(a).first; }
double graded_max_eigenvalue(const GradedOperator& a) { return graded_spectrum_bounds(a).second; }

double graded_norm(const GradedOperator& op) {
  if (!op.is_finitely_supported()) throw Unsupported("graded_norm: operator has infinite rank");
  std::size_t g = op.support_grades();
  const Window in = window(op.in_shape(), op.in_shape().fiber_dim ? g : 0);
  const Window out = window(op.out_shape(), op.out_shape().fiber_dim ? g : 0);
  return spectral_norm(op.compress(in, out));
}

Matrix gram(const std::vector<GradedVector>& vs) {
  Matrix g(vs.size(), vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i; j < vs.size(); ++j) {
      g(i, j) = inner(vs[i], vs[j]);
      g(j, i) = std::conj(g(i, j));
    }
  return g;
}

double norm_on(const GradedOperator& op, const std::vector<GradedVector>& orthonormal) {
  if (orthonormal.empty()) return 0.0;
  const double top = max_eigenvalue(gram(op.apply_all(orthonormal)));
  return std::sqrt(std::max(top, 0.0));
}

std::size_t GradedSubspace::grade_extent() const {
  std::size_t g = 0;
  for (const auto& v : basis) g = std::max(g, v.grade_extent());
  return g;
}

GradedVector GradedSubspace::project(const GradedVector& y) const {
  GradedVector p(y.shape());
  for (const auto& v : basis) p += inner(v, y) * v;
  return p;
}

SubspaceBasis GradedSubspace::in_window(const Window& w) const {
  Matrix b(w.dim(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) b.set_column(j, w.to_dense(basis[j]));
  return {w.dim(), b};
}

GradedSubspace subspace_from_basis(const Window& w, const SubspaceBasis& b) {
  GradedSubspace s{w.shape, {}};
  for (std::size_t j = 0; j < b.dim(); ++j) s.basis.push_back(w.from_dense(b.basis.column(j)));
  return s;
}

GradedSubspace span_of(const LiftedSpaceShape& shape, const std::vector<GradedVector>& vs,
                       std::optional<double> rank_tol) {
  std::size_t g = 0;
  for (const auto& v : vs) g = std::max(g, v.grade_extent());
  const Window w = window(shape, g);
  Matrix cols(w.dim(), vs.size());
  for (std::size_t j = 0; j < vs.size(); ++j) cols.set_column(j, w.to_dense(vs[j]));
  return subspace_from_basis(w, range_basis(cols, rank_tol));
}

GradedSubspace graded_range(const GradedOperator& op, std::optional<double> rank_tol) {
  const Window w = support_window(op.in_shape(), {&op});
  return subspace_from_basis(w, range_basis(op.compress(w, w), rank_tol));
}

GradedSubspace complement_in(const Window& w, const GradedSubspace& s) {
  return subspace_from_basis(w, orthogonal_complement(s.in_window(w)));
}

SubspaceComparison compare_subspaces(const GradedSubspace& a, const GradedSubspace& b, double tol) {
  if (!(a.shape == b.shape)) throw ShapeMismatch("compare_subspaces: different spaces");
  const Window w = window(a.shape, std::max(a.grade_extent(), b.grade_extent()));
  return liftlab::compare_subspaces(a.in_window(w), b.in_window(w), tol);
}

PsdComparison graded_psd_compare(const GradedOperator& a, const GradedOperator& b, double tol) {
  const GradedOperator diff = b - a;
  const Window w = support_window(diff.in_shape(), {&diff});
  if (w.dim() == 0) return {PsdOrder::Equal, 0.0, 0.0};
  return psd_compare(a.compress(w, w), b.compress(w, w), tol);
}

double graded_scale(const GradedOperator& op) {
  if (!(op.in_shape() == op.out_shape())) return graded_norm(op);
  const auto [lo, hi] = graded_spectrum_bounds(op);
  return std::max(std::abs(lo), std::abs(hi));
}

}  // namespace liftlab
