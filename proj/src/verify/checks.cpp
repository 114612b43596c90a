#include "liftlab/verify/checks.hpp"

#include <algorithm>
#include <cmath>

#include "liftlab/error.hpp"
#include "liftlab/liftings/host.hpp"
#include "liftlab/linalg/decompose.hpp"
#include "liftlab/linalg/psd.hpp"
#include "liftlab/sampler/generators.hpp"
#include "liftlab/sampler/rng.hpp"
#include "liftlab/verify/predicates.hpp"

namespace liftlab {

namespace {

bool is_natural(LiftingKind k) { return k == LiftingKind::Natural || k == LiftingKind::ShiftedHost; }

const GradedOperator& gram_h_block(const std::vector<GramBlock>& blocks, const char* name) {
  for (const auto& b : blocks)
    if (b.name == name) return b.block;
  throw InputError(std::string("lifting has no gram block ") + name);
}

double max_distance(const GradedSubspace& s, const std::vector<GradedVector>& vs) {
  double worst = 0.0;
  for (const auto& v : vs) worst = std::max(worst, s.distance(v));
  return worst;
}

double op_scale(const GradedOperator& t) {
  return std::max(1.0, std::sqrt(graded_scale(t.adjoint() * t)));
}

// Grades beyond which every operator in the list acts through its steady parts only.
std::size_t settled_grades(const LiftedSpaceShape& shape, std::initializer_list<const GradedOperator*> ops) {
  if (shape.fiber_dim == 0) return 0;
  std::size_t g = 1;
  for (const auto* op : ops) g = std::max({g, op->steady_start(), op->support_grades()});
  return g;
}

int max_band_offset(const GradedOperator& op) {
  int k = 0;
  for (const auto& [off, b] : op.bands()) {
    (void)b;
    k = std::max(k, off);
  }
  return k;
}

void require_certificate(const GradedOperator& t, const GradedOperator& a) {
  if (!(t.in_shape() == t.out_shape())) throw NonSquare("T is not square");
  if (!(a.in_shape() == t.in_shape()) || !(a.out_shape() == t.in_shape())) {
    throw ShapeMismatch("A and T act on different spaces");
  }
  if (graded_size(a - a.adjoint()) > 1e-10 * std::max(1.0, graded_size(a))) {
    throw NotHermitian("certificate A is not Hermitian");
  }
  if (!(graded_min_eigenvalue(a) > 1e-12 * graded_scale(a))) {
    throw NotInvertible("certificate A is not positive definite");
  }
}

Matrix rows_placed(const Matrix& m, const std::vector<std::size_t>& rows, std::size_t total) {
  Matrix out(total, m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(rows[i], j) = m(i, j);
  return out;
}

Matrix unit_columns(const std::vector<std::size_t>& idx, std::size_t total) {
  Matrix out(total, idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j) out(idx[j], j) = 1.0;
  return out;
}

SubspaceBasis span_cols(const Matrix& m, double scale) {
  if (m.cols() == 0) return {m.rows(), Matrix(m.rows(), 0)};
  return span_of(m, rank_tolerance_for_scale(m, scale) * 10.0);
}

}  // namespace

ConditionReport check_range_invariance(const LiftingOperator& s, double tol) {
  if (!is_natural(s.kind())) throw WrongKind("range invariance needs a natural lifting");
  const GradedOperator& t = s.base();
  const GradedOperator a = gram_h_block(s.gram_blocks(), "H");
  const double scale = std::max(1.0, graded_scale(a));
  const GradedOperator ss = s.op().adjoint() * s.op();
  const GradedOperator k1 = (ss - GradedOperator::identity(s.shape())) * s.op() * s.host_inclusion();
  const double lifting_side = graded_norm(k1) / scale;
  const double host_side = graded_norm((a - GradedOperator::identity(s.host())) * t) / scale;
  ConditionReport r;
  const bool l = r.add_bound("lifting_side", lifting_side, tol, "S*S R(S) ⊂ R(S)").verdict == Verdict::Pass;
  const bool h = r.add_bound("host_side", host_side, tol, "R(T) ⊂ N(A-I)").verdict == Verdict::Pass;
  r.add("sides_agree", l == h, std::abs(lifting_side - host_side), tol,
        "S*S R(S) ⊂ R(S) <=> R(T) ⊂ N(A-I)");
  if (l && h) {
    const PredicateResult qc = is_quasicontraction(t, tol);
    r.add("quasicontraction", qc.holds, qc.residual, tol, "T*^2 T^2 <= T*T");
    const Matrix& x0 = s.block("X0");
    const double iso = x0.rows() ? max_abs(x0.adjoint() * x0 - Matrix::identity(x0.rows())) : 0.0;
    r.add_bound("fiber_isometric", iso, tol, "W*W = I");
  }
  return r;
}

ConditionReport check_quasi_isometry_criterion(const GradedOperator& t, const GradedOperator& a, double tol) {
  require_certificate(t, a);
  const PredicateResult qi = is_quasi_isometry(t, tol);
  const double scale = std::max(1.0, graded_scale(a));
  const double side = graded_norm((a - GradedOperator::identity(t.in_shape())) * t) / scale;
  ConditionReport r;
  r.add("quasi_isometric", qi.holds, qi.residual, tol, "T*^2 T^2 = T*T");
  const bool h = r.add_bound("range_in_unit_eigenspace", side, tol, "R(T) ⊂ N(A-I)").verdict == Verdict::Pass;
  r.add("criterion_agrees", qi.holds == h, std::abs(qi.residual - side), tol,
        "R(T) ⊂ N(A-I) <=> T*^2 T^2 = T*T");
  return r;
}

KernelStructure check_kernel_structure(const GradedOperator& t, const GradedOperator& a, double tol) {
  require_certificate(t, a);
  const LiftedSpaceShape& shape = t.in_shape();
  const GradedOperator ts = t.adjoint();
  const GradedOperator tst = ts * t;
  const GradedOperator tsat = ts * a * t;
  const double scale = std::max(1.0, graded_scale(a));
  const double tscale = op_scale(t);
  auto ordered = [&](const GradedOperator& lo, const GradedOperator& hi) {
    const PsdComparison c = graded_psd_compare(lo, hi, tol * scale);
    return c.order == PsdOrder::Leq || c.order == PsdOrder::Equal;
  };
  if (!ordered(tst, tsat) || !ordered(tsat, a)) {
    throw HypothesesFailed("T*T <= T*AT <= A", "kernel structure: T*T <= T*AT <= A fails");
  }
  const GradedOperator p = a - tst;
  const GradedOperator r = a - tsat;
  const GradedOperator a_minus_i = a - GradedOperator::identity(shape);
  const std::size_t g = settled_grades(shape, {&p, &r, &a_minus_i, &t});
  const Window w = window(shape, g);
  const Matrix pm = p.compress(w, w), rm = r.compress(w, w);
  const double rank_tol = rank_tolerance_for_scale(rm, scale);

  KernelStructure out;
  out.r0 = subspace_from_basis(w, range_basis(rm, rank_tol));

  const GradedOperator ah = graded_sqrt(a), aih = graded_inv_sqrt(a);
  const GradedOperator that = ah * t * aih;
  const Window wide = window(shape, shape.fiber_dim ? g + static_cast<std::size_t>(max_band_offset(t)) + 1 : 0);
  const Matrix mhat = that.compress(w, wide);
  const Matrix d1 = hermitian_part(Matrix::identity(w.dim()) - mhat.adjoint() * mhat);
  out.r1 = subspace_from_basis(w, range_basis(d1, rank_tolerance_for_scale(d1, 1.0)));

  ConditionReport& rep = out.report;
  const double inv0 = max_distance(out.r0, ts.apply_all(out.r0.basis)) / tscale;
  const double inv1 = max_distance(out.r1, that.adjoint().apply_all(out.r1.basis)) / tscale;
  const bool i0 = rep.add_bound("kernel_invariant", inv0, tol, "T N0 ⊂ N0").verdict == Verdict::Pass;
  const bool i1 = rep.add_bound("transformed_kernel_invariant", inv1, tol, "That N1 ⊂ N1").verdict == Verdict::Pass;
  rep.add("invariances_agree", i0 == i1, std::abs(inv0 - inv1), tol, "T N0 ⊂ N0 <=> That N1 ⊂ N1");
  bool reduces = false;
  if (i0 || i1) {
    const SubspaceComparison c = compare_subspaces(out.r0, out.r1, kAngleTolerance);
    rep.add("kernels_equal", c.equal, c.max_sine, kAngleTolerance, "N0 = N1");
    const double red = max_distance(out.r0, a.apply_all(out.r0.basis)) / scale;
    reduces = rep.add_bound("kernel_reduces_A", red, tol, "A N0 ⊂ N0").verdict == Verdict::Pass;
  } else {
    rep.add_inconclusive("kernels_equal", 1.0, kAngleTolerance, "N0 = N1");
    rep.add_inconclusive("kernel_reduces_A", 0.0, tol, "A N0 ⊂ N0");
  }

  // (i) R(A - T*T) = R(A - T*AT).
  const SubspaceComparison ranges = ranges_equal(pm, rm, kAngleTolerance, rank_tol);
  const bool statement_i = ranges.equal;

  // (ii) in the block form T = [[W, T0], [0, T1]] on N0 + R0.
  const Matrix u = out.r0.in_window(w).basis;
  const Matrix pn0 = Matrix::identity(w.dim()) - u * u.adjoint();
  const double fiber_gram = max_abs(pn0 * pm * pn0) / scale;
  double cokernel = 0.0;
  for (const auto& b : out.r0.basis) {
    const GradedVector y = out.r0.residual(t.apply(b));
    cokernel = std::max(cokernel, out.r0.distance(ts.apply(y)));
  }
  cokernel /= tscale * tscale;

  const std::size_t r0dim = out.r0.dim();
  out.transformed_norm = norm_on(that, out.r0.basis);
  if (r0dim > 0) {
    Matrix a1(r0dim, r0dim);
    for (std::size_t i = 0; i < r0dim; ++i)
      for (std::size_t j = 0; j < r0dim; ++j) a1(i, j) = inner(out.r0.basis[i], a.apply(out.r0.basis[j]));
    a1 = hermitian_part(a1);
    const Matrix a1_inv_half = pd_inv_sqrt(a1), a1_half = psd_sqrt(a1);
    const GradedOperator pr0 = GradedOperator::from_window_matrix(u * u.adjoint(), w, w);
    const GradedOperator pn = GradedOperator::identity(shape) - pr0;
    const GradedOperator a0_half = graded_sqrt(pn * a * pn + pr0);
    std::vector<GradedVector> x(r0dim);
    Matrix y(r0dim, r0dim);
    for (std::size_t j = 0; j < r0dim; ++j) {
      GradedVector v(shape);
      for (std::size_t i = 0; i < r0dim; ++i) v += a1_inv_half(i, j) * out.r0.basis[i];
      const GradedVector tv = t.apply(v);
      Vector c(r0dim);
      for (std::size_t i = 0; i < r0dim; ++i) c[i] = inner(out.r0.basis[i], tv);
      x[j] = a0_half.apply(out.r0.residual(tv));
      y.set_column(j, a1_half * c);
    }
    const Matrix gm = gram(x) + y.adjoint() * y;
    out.stack_norm = std::sqrt(std::max(0.0, max_eigenvalue(hermitian_part(gm))));
  }
  const bool statement_ii = fiber_gram <= tol && cokernel <= tol && out.stack_norm < 1.0;

  rep.add("defect_ranges_equal", statement_i, ranges.max_sine, kAngleTolerance, "R(A-T*T) = R(A-T*AT)");
  if (i0) {
    rep.add_bound("fiber_gram", fiber_gram, tol, "W*W = A0");
    rep.add_bound("range_in_cokernel", cokernel, tol, "R(T0) ⊂ N(W*)");
    rep.add("stack_contraction", out.stack_norm < 1.0, out.stack_norm, 1.0,
            "||(A0^1/2 T0 A1^-1/2 ; A1^1/2 T1 A1^-1/2)|| < 1");
    if (reduces) {
      rep.add_bound("stack_routes_agree", std::abs(out.stack_norm - out.transformed_norm), 1e-9,
                    "||stack|| = ||That|R0||");
    }
    rep.add("statements_agree", statement_i == statement_ii, 0.0, 0.0,
            "R(A-T*T) = R(A-T*AT) <=> block form");
  } else {
    rep.add_inconclusive("statements_agree", 0.0, 0.0, "R(A-T*T) = R(A-T*AT) <=> block form");
  }
  return out;
}

ClosedRangeNorms check_closed_range_norms(const GradedOperator& t, const GradedOperator& a, double tol) {
  const KernelStructure ks = check_kernel_structure(t, a, tol);
  if (ks.report.passed("kernel_invariant") == false) {
    throw HypothesesFailed("T N0 ⊂ N0", "closed range norms: N0 is not invariant for T");
  }
  ClosedRangeNorms out;
  out.transformed = ks.transformed_norm;
  out.weighted = norm_on(t * graded_inv_sqrt(a), ks.r0.basis);
  out.report.add("transformed_restricted_contraction", out.transformed < 1.0, out.transformed, 1.0,
                 "||That|H-N0|| < 1");
  out.report.add("weighted_restricted_contraction", out.weighted < 1.0, out.weighted, 1.0,
                 "||T A^-1/2|H-N0|| < 1");
  return out;
}

KernelGap kernel_gap(const LiftingOperator& s, std::size_t probe_grade, double tol) {
  if (s.kind() != LiftingKind::LeftInvertible) throw WrongKind("kernel gap needs a left invertible lifting");
  const GradedOperator& q = s.inner()->q;
  const LiftedSpaceShape& m = q.in_shape();
  const LiftedSpaceShape& k = s.shape();
  const std::size_t kd = s.isometric_dim();
  KernelGap out;
  if (kd == 0) {
    out.agree = true;
    return out;
  }
  const std::size_t pg = std::max(probe_grade, s.window_grades() + 1);
  out.grades = pg;
  const Window wk = window(k, pg);
  const Window wm = window(m, m.fiber_dim ? pg : 0);
  const Window wm0 = window(m, s.window_grades());
  const double d = s.block("d")(0, 0).real();
  const Matrix un0 = Complex(1.0 / d) * s.block("G0").adjoint();
  const Matrix unm = rows_placed(un0, placed_indices(wm0, wm, {0, 0}), wm.dim());
  const std::vector<std::size_t> m_in_k = placed_indices(wm, wk, {kd, 0});
  const double scale = std::max(1.0, graded_size(q));

  // Q*Q N(Q*) ⊂ N(Q*).
  const GradedOperator qsq = q.adjoint() * q;
  double kc = 0.0;
  for (std::size_t j = 0; j < kd; ++j) {
    const Vector y = wm.to_dense(qsq.apply(wm.from_dense(unm.column(j))));
    const Vector proj = unm * (unm.adjoint() * std::span<const Complex>(y));
    Vector diff(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) diff[i] = y[i] - proj[i];
    kc = std::max(kc, norm(diff));
  }
  out.kernel_condition_residual = kc / (scale * scale);
  if (out.kernel_condition_residual > tol) {
    throw KernelConditionFailed("kernel gap: Q*Q N(Q*) ⊄ N(Q*), residual " +
                                std::to_string(out.kernel_condition_residual));
  }

  const Matrix ss = s.op().adjoint().compress(wk, wk);
  const Matrix unk = rows_placed(unm, m_in_k, wk.dim());
  const Matrix pns = unk.adjoint() * ss;  // N(Q*) part of S*
  const Matrix qs = q.adjoint().compress(wm, wm);
  const SubspaceBasis range_q = orthogonal_complement({wm.dim(), unm});
  const Matrix ur = range_q.basis;
  const Matrix urk = rows_placed(ur, m_in_k, wk.dim());

  std::vector<std::size_t> l0, lall, lhigh;
  for (std::size_t n = 0; n < pg; ++n)
    for (std::size_t i = 0; i < kd; ++i) {
      lall.push_back(wk.fiber_index(n, i));
      (n == 0 ? l0 : lhigh).push_back(wk.fiber_index(n, i));
    }
  auto kern = [&](const Matrix& mat) {
    return kernel_basis(mat, rank_tolerance_for_scale(mat, scale) * 10.0).basis;
  };

  // (a) N(V*) + N(V1*) cut by G0*l + G1*m = 0.
  const Matrix off_n = Matrix::identity(wm.dim()) - unm * unm.adjoint();
  const Matrix v1_kernel = urk * kern(off_n * qs * ur);
  const Matrix a_dom = hstack(unit_columns(l0, wk.dim()), v1_kernel);
  out.first = span_cols(a_dom * kern(pns * a_dom), 1.0);

  // (b) N([G0* G1*]) minus R(V) + N(G1*).
  const Matrix b_dom = hstack(unit_columns(lall, wk.dim()), urk);
  const Matrix kb = b_dom * kern(pns * b_dom);
  const Matrix g1_kernel = urk * kern(unm.adjoint() * qs * ur);
  const SubspaceBasis x = span_cols(hstack(unit_columns(lhigh, wk.dim()), g1_kernel), 1.0);
  out.second = span_cols(kb - projector(x) * kb, 1.0);

  const SubspaceComparison c = compare_subspaces(out.first, out.second, kAngleTolerance);
  out.max_sine = c.max_sine;
  out.agree = c.equal;
  return out;
}

ConditionReport check_left_invertible_structure(const LiftingOperator& s, double tol) {
  if (s.kind() != LiftingKind::LeftInvertible && s.kind() != LiftingKind::Quasicontraction) {
    throw WrongKind("left invertible structure needs a lifting with an isometric backbone");
  }
  const LiftedSpaceShape& k = s.shape();
  const std::size_t iso = s.isometric_dim();
  const GradedOperator pl = GradedOperator::coordinate_projection(k, 0, iso, 0, 0);
  const GradedOperator pm = GradedOperator::coordinate_projection(k, iso, k.fiber_dim - iso, 0, k.tail_dim());
  const GradedOperator q = pm * s.op() * pm;
  const GradedOperator g = pl * s.op() * pm;
  const double qscale = std::max(1.0, graded_size(q));
  const double qi = quasi_isometry_defect(q);
  const double gnorm = graded_norm(g);
  const double gq = graded_norm(g * q) / std::max(1.0, gnorm * qscale);

  const std::size_t pg = k.fiber_dim ? s.window_grades() + 2 : 0;
  const Window w = window(k, pg);
  const Matrix ss = s.op().adjoint().compress(w, w);
  const Matrix qs = q.adjoint().compress(w, w);
  const double rank_scale = std::max(1.0, graded_size(s.op()));
  const SubspaceBasis ns = kernel_basis(ss, rank_tolerance_for_scale(ss, rank_scale) * 10.0);
  std::vector<std::size_t> mcoords;
  for (std::size_t n = 0; n < w.grades; ++n)
    for (std::size_t i = iso; i < k.fiber_dim; ++i) mcoords.push_back(w.fiber_index(n, i));
  for (std::size_t i = 0; i < k.tail_dim(); ++i) mcoords.push_back(w.tail_index(i));
  const Matrix em = unit_columns(mcoords, w.dim());
  const Matrix qs_m = qs * em;
  const SubspaceBasis nq = span_cols(em * kernel_basis(qs_m, rank_tolerance_for_scale(qs_m, rank_scale) * 10.0).basis, 1.0);
  const SubspaceComparison kernels = compare_subspaces(nq, ns, kAngleTolerance);
  double perp = 0.0;
  if (ns.dim() > 0) {
    const Matrix img = qs * ns.basis;
    for (std::size_t j = 0; j < img.cols(); ++j) perp = std::max(perp, norm(img.column(j)));
  }
  perp /= qscale;

  ConditionReport r;
  const bool qi_ok = r.add_bound("quasi_isometric", qi, tol, "Q*^2 Q^2 = Q*Q").verdict == Verdict::Pass;
  const bool gq_ok = r.add_bound("range_in_kernel_of_coupling", gq, tol, "R(Q) ⊂ N(G)").verdict == Verdict::Pass;
  r.add("quasi_isometry_criterion_agrees", qi_ok == gq_ok, std::abs(qi - gq), tol,
        "Q quasi-isometric <=> R(Q) ⊂ N(G)");
  const bool c1 = gq_ok && kernels.equal;
  const bool c2 = gq_ok && perp <= tol;
  r.add("cokernel_condition", c1, std::max(gq, kernels.max_sine), tol, "R(G*) ⊂ N(Q*) = N(S*)");
  r.add("invariant_range_condition", c2, std::max(gq, perp), tol, "S R(Q) ⊂ R(Q) ⊂ R(S)");
  r.add("paired_conditions_agree", c1 == c2, 0.0, 0.0,
        "R(G*) ⊂ N(Q*) = N(S*) <=> S R(Q) ⊂ R(Q) ⊂ R(S)");
  return r;
}

Refutation refute_symmetry_class(std::size_t dim_half, std::size_t samples, std::uint64_t seed, double tol) {
  Refutation out;
  out.t = symmetry_similarity(dim_half);
  const Matrix& t = out.t;
  const std::size_t n = t.rows();
  const Matrix tt = t.adjoint() * t;
  ConditionReport& rep = out.report;
  rep.add_bound("involution", max_abs(t * t - Matrix::identity(n)), 1e-12, "T^2 = I");
  const double tn = spectral_norm(t);
  rep.add("expansive_norm", tn > 1.0, tn, 1.0, "||T|| > 1");
  double fixed = 0.0, infeasible = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    Matrix b;
    if (i == 0) {
      std::vector<double> diag(n, 0.0);
      for (std::size_t j = 0; j < dim_half; ++j) diag[j] = 1.0;
      b = Matrix::diagonal(std::span<const double>(diag));
    } else if (i == 1) {
      b = Complex(1e-3) * Matrix::identity(n);
    } else {
      Rng rng(derive_seed(seed, i));
      const Matrix g = gaussian_matrix(rng, n, n);
      b = Complex(1.0 / (spectral_norm(g) * spectral_norm(g))) * (g.adjoint() * g);
    }
    Matrix a = hermitian_part(b + t.adjoint() * b * t);
    const Matrix ai = pd_inv_sqrt(a);
    const double s = std::max(1.0, max_eigenvalue(hermitian_part(ai * tt * ai)));
    a = Complex(s) * a;
    const double an = spectral_norm(a);
    const Matrix p = hermitian_part(a - tt);
    const Matrix r = hermitian_part(a - t.adjoint() * a * t);
    fixed = std::max(fixed, max_abs(r) / an);
    infeasible = std::max(infeasible, std::max(0.0, -min_eigenvalue(p)) / an);
    ++out.samples;
    if (max_abs(p) <= tol * an) {
      ++out.equal_to_gram;
      continue;
    }
    if (!ranges_equal(p, r, kAngleTolerance, rank_tolerance_for_scale(p, an)).equal) ++out.refuted;
  }
  rep.add_bound("fixed_point", fixed, 1e-10, "T*AT = A");
  rep.add_bound("certificate_above_gram", infeasible, tol, "A >= T*T");
  const std::size_t open = out.samples - out.equal_to_gram - out.refuted;
  rep.add("range_condition_refuted", open == 0, static_cast<double>(open), 0.0,
          "R[(A-T*T)^1/2] != R[(A-T*AT)^1/2]");
  return out;
}

namespace {

constexpr const char* kLiftingIdentity = "lifting_identity";
constexpr const char* kQuasiIsometry = "quasi_isometry";
constexpr const char* kLeftInvertibility = "left_invertibility";
constexpr const char* kGramConsistent = "gram_blocks_consistent";
constexpr const char* kHilbertInvariance = "hilbert_invariance";
constexpr const char* kFiberIsometry = "fiber_isometry";
constexpr const char* kMinimality = "minimality";

GradedVector random_probe(Rng& rng, const Window& w) {
  const Vector x = gaussian_vector(rng, w.dim());
  const double nx = norm(x);
  GradedVector v = w.from_dense(x);
  if (nx > 0.0) v *= Complex(1.0 / nx);
  return v;
}

}  // namespace

ConditionReport verify_lifting_suite(const LiftingOperator& s, const SuiteOptions& opt) {
  Rng rng(opt.seed);
  const LiftedSpaceShape& k = s.shape();
  const LiftedSpaceShape& h = s.host();
  const std::size_t g = k.fiber_dim ? std::max<std::size_t>(opt.probe_grade, 1) : 0;
  const Window wk = window(k, g);
  const Window wh = window(h, h.fiber_dim ? g : 0);
  const GradedOperator& op = s.op();
  ConditionReport rep;

  std::vector<GradedVector> hp;
  for (std::size_t i = 0; i < wh.dim(); ++i) hp.push_back(wh.basis_vector(i));
  for (std::size_t i = 0; i < opt.probes && wh.dim() > 0; ++i) hp.push_back(random_probe(rng, wh));
  std::vector<GradedVector> kp;
  for (std::size_t i = 0; i < opt.probes && wk.dim() > 0; ++i) kp.push_back(random_probe(rng, wk));

  std::vector<GradedVector> jh;
  jh.reserve(hp.size());
  for (const auto& v : hp) jh.push_back(s.embed_host(v));
  const std::vector<GradedVector> sjh = op.apply_all(jh);

  double lift = 0.0;
  for (std::size_t i = 0; i < hp.size(); ++i) {
    const GradedVector d = s.restrict_to_host(sjh[i]) - s.base().apply(hp[i]);
    lift = std::max(lift, d.norm() / hp[i].norm());
  }
  rep.add_bound(kLiftingIdentity, lift, 1e-12, "P_H S = T P_H");

  // Every pair of window basis vectors, then the random pairs.
  std::vector<GradedVector> basis;
  for (std::size_t i = 0; i < wk.dim(); ++i) basis.push_back(wk.basis_vector(i));
  const std::vector<GradedVector> s1 = op.apply_all(basis);
  const std::vector<GradedVector> s2 = op.apply_all(s1);
  const Matrix g1 = gram(s1), g2 = gram(s2);
  double qi = basis.empty() ? 0.0 : max_abs(g2 - g1) / std::max(1.0, max_abs(g1));
  const std::vector<GradedVector> r1 = op.apply_all(kp);
  const std::vector<GradedVector> r2 = op.apply_all(r1);
  for (std::size_t i = 0; i + 1 < kp.size(); i += 2) {
    const Complex lhs = inner(r2[i], r2[i + 1]);
    const Complex rhs = inner(r1[i], r1[i + 1]);
    qi = std::max(qi, std::abs(lhs - rhs) / std::max(1.0, r1[i].norm() * r1[i + 1].norm()));
  }
  rep.add_bound(kQuasiIsometry, qi, opt.tol, "S*^2 S^2 = S*S");

  const std::vector<GramBlock> blocks = s.gram_blocks();
  const double lo = gram_min_eigenvalue(blocks);
  rep.add(kLeftInvertibility, lo >= kLeftInvertibilityMargin, lo, kLeftInvertibilityMargin,
          "S*S >= margin > 0");

  const GradedOperator ss = op.adjoint() * op;
  double ss_scale = 1.0;
  try {
    const double direct = graded_min_eigenvalue(ss);
    ss_scale = std::max(1.0, graded_max_eigenvalue(ss));
    rep.add_bound(kGramConsistent, std::abs(direct - lo) / ss_scale, opt.tol, "S*S = diag(gram blocks)");
  } catch (const Unsupported&) {
    rep.add_inconclusive(kGramConsistent, 0.0, opt.tol, "S*S = diag(gram blocks)");
  }

  double leak = 0.0;
  const std::vector<GradedVector> ssjh = op.adjoint().apply_all(sjh);
  for (std::size_t i = 0; i < hp.size(); ++i) {
    const GradedVector back = s.embed_host(s.restrict_to_host(ssjh[i]));
    leak = std::max(leak, (ssjh[i] - back).norm() / hp[i].norm());
  }
  rep.add_bound(kHilbertInvariance, leak / ss_scale, 1e-10, "S*S H ⊂ H");

  double fiber = 0.0;
  const std::size_t iso = s.isometric_dim();
  std::vector<GradedVector> fp;
  for (std::size_t n = 0; n < g && iso > 0; ++n)
    for (std::size_t i = 0; i < iso; ++i) fp.push_back(wk.basis_vector(wk.fiber_index(n, i)));
  for (std::size_t j = 0; j < opt.probes && iso > 0 && g > 0; ++j) {
    GradedVector v(k);
    for (std::size_t n = 0; n < g; ++n) {
      Vector x(k.fiber_dim);
      for (std::size_t i = 0; i < iso; ++i) x[i] = rng.complex_normal();
      v.add_fiber(n, x);
    }
    if (!v.is_zero()) v *= Complex(1.0 / v.norm());
    fp.push_back(std::move(v));
  }
  const std::vector<GradedVector> sfp = op.apply_all(fp);
  for (std::size_t i = 0; i < fp.size(); ++i) fiber = std::max(fiber, std::abs(sfp[i].norm() - fp[i].norm()));
  rep.add_bound(kFiberIsometry, fiber, 1e-12, "||S l|| = ||l|| on the backbone");

  const MinimalityResult mr = minimal_restriction(s, std::max<std::size_t>(g, 1));
  rep.add(kMinimality, mr.minimal, static_cast<double>(mr.window_dim - mr.span.dim()), 0.0,
          "K = span S^n H");
  return rep;
}

std::vector<std::string> claimed_checks(LiftingKind kind) {
  std::vector<std::string> all{kLiftingIdentity, kQuasiIsometry,  kLeftInvertibility, kGramConsistent,
                               kHilbertInvariance, kFiberIsometry, kMinimality};
  if (kind == LiftingKind::LeftInvertible) std::erase(all, std::string(kHilbertInvariance));
  return all;
}

bool claimed_checks_pass(const ConditionReport& suite, LiftingKind kind) {
  for (const auto& name : claimed_checks(kind))
    if (!suite.passed(name)) return false;
  return true;
}

}  // namespace liftlab
