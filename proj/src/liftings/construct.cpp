#include "liftlab/liftings/construct.hpp"

#include <algorithm>
#include <cmath>

#include "liftlab/error.hpp"
#include "liftlab/linalg/decompose.hpp"
#include "liftlab/linalg/spectral.hpp"
#include "liftlab/verify/predicates.hpp"

namespace liftlab {

namespace {

constexpr const char* kAboveGram = "A >= T*T";
constexpr const char* kAboveTransform = "A >= T*AT";
constexpr const char* kRangesEqual = "R[(A-T*T)^1/2] = R[(A-T*AT)^1/2]";

void require_square_pair(const GradedOperator& t, const GradedOperator& a) {
  if (!(t.in_shape() == t.out_shape())) throw NonSquare("T is not square");
  if (!(a.in_shape() == t.in_shape()) || !(a.out_shape() == t.in_shape())) {
    throw ShapeMismatch("A and T act on different spaces");
  }
}

struct Defects {
  Window w;
  Matrix p;  // A - T*T on w
  Matrix r;  // A - T*AT on w
  double scale = 1.0;
  double rank_tol = 0.0;
};

Defects defects(const GradedOperator& t, const GradedOperator& a) {
  require_square_pair(t, a);
  const GradedOperator ts = t.adjoint();
  const GradedOperator p = a - ts * t;
  const GradedOperator r = a - ts * a * t;
  if (graded_size(a - a.adjoint()) > 1e-10 * std::max(1.0, graded_size(a))) {
    throw NotHermitian("certificate A is not Hermitian");
  }
  Defects d;
  d.scale = std::max(graded_scale(a), 1e-300);
  const double lo = graded_min_eigenvalue(a);
  if (!(lo > 1e-12 * d.scale)) throw NotInvertible("certificate A is not positive definite");
  d.w = support_window(t.in_shape(), {&p, &r});
  d.p = p.compress(d.w, d.w);
  d.r = r.compress(d.w, d.w);
  d.rank_tol = rank_tolerance_for_scale(d.p, d.scale);
  return d;
}

double negative_part(const Matrix& m, double scale) {
  if (m.rows() == 0) return 0.0;
  return std::max(0.0, -min_eigenvalue(hermitian_part(m))) / scale;
}

}  // namespace

ConditionReport check_natural_hypotheses(const GradedOperator& t, const GradedOperator& a, double tol) {
  const Defects d = defects(t, a);
  ConditionReport rep;
  rep.add_bound("certificate_above_gram", negative_part(d.p, d.scale), tol, kAboveGram);
  rep.add_bound("certificate_above_transform", negative_part(d.r, d.scale), tol, kAboveTransform);
  const SubspaceComparison c = ranges_equal(d.p, d.r, kAngleTolerance, d.rank_tol);
  rep.add("defect_ranges_equal", c.equal, c.max_sine, kAngleTolerance, kRangesEqual);
  return rep;
}

ConditionReport check_natural_hypotheses(const Matrix& t, const Matrix& a, double tol) {
  return check_natural_hypotheses(as_operator(t), as_operator(a), tol);
}

LiftingOperator build_natural_lifting(const GradedOperator& t, const Certificate& cert, double tol) {
  const ConditionReport rep = check_natural_hypotheses(t, cert.a, tol);
  for (const auto& c : rep.checks()) {
    if (c.verdict != Verdict::Pass) {
      throw HypothesesFailed(c.anchor, "natural lifting: condition " + c.anchor + " fails (" + c.name +
                                           ", residual " + std::to_string(c.residual) + ")");
    }
  }
  const Defects d = defects(t, cert.a);
  const SubspaceBasis h0 = range_basis(d.p, d.rank_tol);
  const Matrix u0h = h0.basis.adjoint();
  const Matrix dt = u0h * psd_sqrt(d.p, kPsdTolerance, d.scale);
  const Matrix dat = u0h * psd_sqrt(d.r, kPsdTolerance, d.scale);
  Matrix x0(h0.dim(), h0.dim());
  if (h0.dim() > 0) x0 = douglas_solve(dt, dat, 1e-6, d.rank_tol);
  const LiftingKind kind = t.in_shape().fiber_dim > 0 ? LiftingKind::ShiftedHost : LiftingKind::Natural;
  return LiftingOperator(kind, t, {{"X0", x0}, {"DT", dt}}, d.w.grades);
}

LiftingOperator build_natural_lifting(const Matrix& t, const Matrix& a, double tol) {
  return build_natural_lifting(as_operator(t), Certificate{as_operator(a), CertificateSource::User}, tol);
}

LiftingOperator build_quasicontraction_lifting(const Matrix& t, double d_margin, double tol) {
  if (!t.is_square()) throw NonSquare("quasicontraction lifting: T is not square");
  if (!(d_margin >= 0.0) || !std::isfinite(d_margin)) throw InputError("d_margin must be finite and >= 0");
  const PredicateResult qc = is_quasicontraction(t, tol);
  if (!qc.holds) {
    throw NotQuasicontraction("quasicontraction lifting: T*^2 T^2 <= T*T fails, residual " +
                              std::to_string(qc.residual));
  }
  const SubspaceBasis ur = range_basis(t);
  const SubspaceBasis uk = orthogonal_complement(ur);
  const Matrix c = ur.basis.adjoint() * t * ur.basis;
  const Matrix g = ur.basis.adjoint() * t * uk.basis;
  const Matrix defect = Matrix::identity(c.rows()) - c.adjoint() * c;
  const Matrix dc = psd_sqrt(defect, std::max(tol, kPsdTolerance), 1.0);
  const SubspaceBasis ud = range_basis(defect, rank_tolerance_for_scale(defect, 1.0));
  const double gn = g.empty() ? 0.0 : spectral_norm(g);
  const double d = std::sqrt(gn * gn + 0.5 + d_margin);
  const std::size_t k = uk.dim();

  const Matrix d0 = ud.basis.adjoint() * dc * ur.basis.adjoint();
  const Matrix d1 = Complex(d) * uk.basis.adjoint();
  Matrix c0(c.rows(), k);
  if (k > 0 && c.rows() > 0) {
    const Matrix lhs = psd_sqrt(g.adjoint() * g + (d * d - 0.5) * Matrix::identity(k));
    c0 = douglas_solve(lhs, c.adjoint() * g, 1e-8);
  }
  return LiftingOperator(LiftingKind::Quasicontraction, as_operator(t),
                         {{"C", c}, {"G", g}, {"C0", c0}, {"D", Complex(d) * Matrix::identity(k)},
                          {"D0", d0}, {"D1", d1}},
                         0);
}

LiftingOperator build_left_invertible_lifting(const GradedOperator& t, const InnerLifting& inner,
                                              double tol) {
  const GradedOperator& q = inner.q;
  if (!(q.in_shape() == q.out_shape())) throw NonSquare("left invertible lifting: Q is not square");
  if (!(t.in_shape() == t.out_shape())) throw NonSquare("left invertible lifting: T is not square");
  for (const auto& [k, b] : q.bands()) {
    (void)b;
    if (k < 0) throw Unsupported("left invertible lifting: Q must not lower grades");
  }
  const PredicateResult qi = is_quasi_isometry(q, tol);
  if (!qi.holds) {
    throw NotQuasiIsometry("left invertible lifting: Q is not quasi-isometric, residual " +
                           std::to_string(qi.residual));
  }
  const LiftedSpaceShape& m = q.in_shape();
  const GradedOperator qs = q.adjoint();
  const double rank_scale = std::max(1.0, graded_size(q));
  auto kernel_in = [&](std::size_t grades) {
    const Window w = window(m, grades);
    const Matrix block = qs.compress(w, w);
    return kernel_basis(block, rank_tolerance_for_scale(block, rank_scale));
  };
  const std::size_t g = m.fiber_dim > 0 ? std::max<std::size_t>(q.steady_start(), 1) + 1 : 0;
  const SubspaceBasis nb = kernel_in(g);
  if (m.fiber_dim > 0 && kernel_in(g + 1).dim() != nb.dim()) {
    throw Unsupported("left invertible lifting: N(Q*) is not supported on finitely many grades");
  }
  const Window wm = window(m, g);
  double g1 = 0.0;
  if (nb.dim() > 0) {
    const Window wide = window(m, m.fiber_dim > 0 ? g + 1 : 0);
    g1 = spectral_norm(q.compress(wm, wide) * nb.basis);
  }
  const double d = nb.dim() > 0 ? std::sqrt(g1 * g1 + 0.5) : 0.0;
  const Matrix g0 = Complex(d) * nb.basis.adjoint();
  return LiftingOperator(LiftingKind::LeftInvertible, t, {{"G0", g0}, {"d", Matrix{{d}}}}, g, inner);
}

LiftingOperator build_left_invertible_lifting(const GradedOperator& q, double tol) {
  return build_left_invertible_lifting(q, InnerLifting{q, {0, 0}}, tol);
}

LiftingOperator build_left_invertible_lifting(const Matrix& q, double tol) {
  return build_left_invertible_lifting(as_operator(q), tol);
}

InnerLifting build_auxiliary_lifting(const Matrix& t, const Matrix& a_in, double tol) {
  if (!t.is_square()) throw NonSquare("auxiliary lifting: T is not square");
  if (a_in.rows() != t.rows() || a_in.cols() != t.cols()) throw ShapeMismatch("auxiliary lifting: A and T");
  if (hermitian_defect(a_in) > 1e-10 * std::max(1.0, spectral_norm(a_in))) {
    throw NotHermitian("auxiliary lifting: A is not Hermitian");
  }
  const std::size_t n = t.rows();
  const double lo = min_eigenvalue(hermitian_part(a_in));
  if (!(lo > 0.0)) throw NotInvertible("auxiliary lifting: A is not positive definite");
  const Matrix a = Complex(std::max(1.0, 1.0 / lo)) * hermitian_part(a_in);
  const double scale = spectral_norm(a);
  const Matrix gap = hermitian_part(a - t.adjoint() * a * t);
  if (min_eigenvalue(gap) < -tol * scale) {
    throw HypothesesFailed("T*AT <= A", "auxiliary lifting: T*AT <= A fails");
  }
  const Matrix root_gap = psd_sqrt(gap, tol, scale);
  const Matrix root_excess = psd_sqrt(a - Matrix::identity(n), tol, scale);
  const LiftedSpaceShape m{n, {n}};
  GradedOperator q = GradedOperator::shift(m);
  q.add_tail_to_fiber(0, root_excess * t);
  q.add_tail_to_fiber(1, root_gap - root_excess);
  q.add_tail_to_tail(t);
  q.canonicalize();
  return {q, {0, 0}};
}

std::optional<Certificate> lyapunov_certificate(const Matrix& t) {
  const TrichotomyResult r = spectral_radius_trichotomy(t);
  if (r.verdict != RadiusVerdict::LessThanOne || !r.certificate) return std::nullopt;
  return Certificate{as_operator(*r.certificate), CertificateSource::LyapunovSeries};
}

}  // namespace liftlab
