#include <gtest/gtest.h>

#include <random>

#include "liftlab/error.hpp"
#include "liftlab/graded/calculus.hpp"
#include "liftlab/graded/json.hpp"
#include "liftlab/linalg/decompose.hpp"

using namespace liftlab;

namespace {

Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  std::normal_distribution<double> g;
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

Vector random_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  Vector v(n);
  for (auto& z : v) z = Complex(g(rng), g(rng));
  return v;
}

struct RawBand {
  int offset;
  std::vector<Matrix> head;
  Matrix steady;
};

// Raw description of an operator, kept separately so that the dense oracle below
// never touches GradedOperator internals.
struct RawOperator {
  LiftedSpaceShape in, out;
  std::vector<RawBand> bands;
  std::vector<Matrix> tf, ft;
  Matrix tt;
};

RawOperator random_raw(std::mt19937_64& rng, const LiftedSpaceShape& in, const LiftedSpaceShape& out,
                       bool finite) {
  RawOperator r{in, out, {}, {}, {}, random_matrix(rng, out.tail_dim(), in.tail_dim())};
  for (int k = -2; k <= 2; ++k) {
    RawBand b{k, {}, finite ? Matrix(out.fiber_dim, in.fiber_dim) : random_matrix(rng, out.fiber_dim, in.fiber_dim)};
    const std::size_t h = static_cast<std::size_t>(rng() % 4);
    for (std::size_t n = 0; n < h; ++n) b.head.push_back(random_matrix(rng, out.fiber_dim, in.fiber_dim));
    r.bands.push_back(b);
  }
  for (std::size_t n = 0; n < 2; ++n) r.tf.push_back(random_matrix(rng, out.fiber_dim, in.tail_dim()));
  for (std::size_t n = 0; n < 3; ++n) r.ft.push_back(random_matrix(rng, out.tail_dim(), in.fiber_dim));
  return r;
}

GradedOperator build(const RawOperator& r) {
  GradedOperator op(r.in, r.out);
  for (const auto& b : r.bands) {
    op.add_band_steady(b.offset, b.steady);
    for (std::size_t n = 0; n < b.head.size(); ++n) op.add_band_entry(b.offset, n, b.head[n] - b.steady);
  }
  for (std::size_t n = 0; n < r.tf.size(); ++n) op.add_tail_to_fiber(n, r.tf[n]);
  for (std::size_t n = 0; n < r.ft.size(); ++n) op.add_fiber_to_tail(n, r.ft[n]);
  op.add_tail_to_tail(r.tt);
  op.canonicalize();
  return op;
}

// Dense matrix of P_out R J_in, assembled entry by entry from the definition.
Matrix dense(const RawOperator& r, std::size_t gin, std::size_t gout) {
  const std::size_t ei = r.in.fiber_dim, eo = r.out.fiber_dim, ti = r.in.tail_dim(), to = r.out.tail_dim();
  Matrix m(gout * eo + to, gin * ei + ti);
  for (const auto& b : r.bands)
    for (std::size_t n = 0; n < gin; ++n) {
      const long g = static_cast<long>(n) + b.offset;
      if (g < 0 || g >= static_cast<long>(gout)) continue;
      const Matrix& blk = n < b.head.size() ? b.head[n] : b.steady;
      m.add_block(static_cast<std::size_t>(g) * eo, n * ei, blk);
    }
  for (std::size_t n = 0; n < r.tf.size() && n < gout; ++n) m.add_block(n * eo, gin * ei, r.tf[n]);
  for (std::size_t n = 0; n < r.ft.size() && n < gin; ++n) m.add_block(gout * eo, n * ei, r.ft[n]);
  m.add_block(gout * eo, gin * ei, r.tt);
  return m;
}

double dist(const Matrix& a, const Matrix& b) { return frobenius_norm(a - b); }

const LiftedSpaceShape kShape{2, {1, 2}};

}  // namespace

TEST(GradedVector, CanonicalFormDropsZeroBlocks) {
  GradedVector v = GradedVector::in_fiber(kShape, 3, {1.0, 2.0});
  const GradedVector w = v;
  v -= w;
  EXPECT_TRUE(v.fibers().empty());
  EXPECT_TRUE(v.is_zero());
  GradedVector z = GradedVector::in_fiber(kShape, 1, {0.0, 0.0});
  EXPECT_TRUE(z.fibers().empty());
  EXPECT_EQ(0.0 * w, GradedVector(kShape));
}

TEST(GradedVector, NormAndInnerProduct) {
  GradedVector a = GradedVector::in_fiber(kShape, 0, {3.0, 0.0});
  a += GradedVector::in_tail(kShape, {0.0, 4.0, 0.0});
  EXPECT_DOUBLE_EQ(a.norm(), 5.0);
  const GradedVector b = GradedVector::in_fiber(kShape, 0, {Complex(0, 1), 0.0});
  EXPECT_EQ(inner(b, a), Complex(0, -3));
  EXPECT_THROW(a += GradedVector(LiftedSpaceShape{1, {}}), ShapeMismatch);
}

TEST(GradedVector, ShiftAndAdjoint) {
  const GradedVector e0 = GradedVector::in_fiber(kShape, 0, {1.0, 0.0});
  const GradedVector t = GradedVector::in_tail(kShape, {1.0, 1.0, 1.0});
  const GradedVector s = shift_apply(e0 + t);
  EXPECT_EQ(s, GradedVector::in_fiber(kShape, 1, {1.0, 0.0}));
  EXPECT_TRUE(shift_adjoint_apply(e0).is_zero());
  EXPECT_EQ(shift_adjoint_apply(s), e0);
}

TEST(GradedVector, JsonRoundTrip) {
  std::mt19937_64 rng(2);
  GradedVector v(kShape);
  v.add_fiber(0, random_vector(rng, 2));
  v.add_fiber(4, random_vector(rng, 2));
  v.add_tail(random_vector(rng, 3));
  const Json j = to_json(v);
  EXPECT_EQ(graded_vector_from_json(parse_json_text(j.dump()), kShape), v);
  EXPECT_EQ(j["tails"].size(), 2u);
  EXPECT_THROW(graded_vector_from_json(parse_json_text(R"({"fibers":{"x":[]},"tails":[[],[]]})"), kShape),
               ParseError);
}

TEST(Window, DenseRoundTrip) {
  const Window w = window(kShape, 3);
  EXPECT_EQ(w.dim(), 9u);
  GradedVector v = GradedVector::in_fiber(kShape, 2, {1.0, 2.0});
  EXPECT_EQ(w.from_dense(w.to_dense(v)), v);
  EXPECT_THROW(w.to_dense(GradedVector::in_fiber(kShape, 3, {1.0, 0.0})), ShapeMismatch);
}

TEST(GradedOperator, CompressMatchesDenseOracle) {
  std::mt19937_64 rng(3);
  const LiftedSpaceShape out{3, {2}};
  for (int trial = 0; trial < 20; ++trial) {
    const RawOperator r = random_raw(rng, kShape, out, trial % 2 == 0);
    const GradedOperator op = build(r);
    const Window in_w = window(kShape, 6), out_w = window(out, 6);
    EXPECT_LE(dist(op.compress(in_w, out_w), dense(r, 6, 6)), 1e-12);
  }
}

TEST(GradedOperator, AdjointMatchesConjugateTranspose) {
  std::mt19937_64 rng(4);
  const LiftedSpaceShape out{3, {2}};
  for (int trial = 0; trial < 20; ++trial) {
    const RawOperator r = random_raw(rng, kShape, out, false);
    const GradedOperator op = build(r);
    const Window in_w = window(kShape, 7), out_w = window(out, 7);
    EXPECT_LE(dist(op.adjoint().compress(out_w, in_w), dense(r, 7, 7).adjoint()), 1e-12);
    GradedOperator canonical = op;
    canonical.canonicalize();
    EXPECT_EQ(op.adjoint().adjoint(), canonical);
  }
}

TEST(GradedOperator, CompositionMatchesDenseProduct) {
  std::mt19937_64 rng(5);
  const LiftedSpaceShape mid{3, {2}};
  const LiftedSpaceShape out{1, {1, 1}};
  for (int trial = 0; trial < 20; ++trial) {
    const RawOperator rq = random_raw(rng, kShape, mid, trial % 3 == 0);
    const RawOperator rp = random_raw(rng, mid, out, trial % 4 == 1);
    const GradedOperator pq = build(rp) * build(rq);
    // Inputs on 5 grades land in at most 5 + 2 + coupling grades; 12 covers it.
    const Matrix oracle = dense(rp, 12, 5) * dense(rq, 5, 12);
    EXPECT_LE(dist(pq.compress(window(kShape, 5), window(out, 5)), oracle), 1e-10);
  }
}

TEST(GradedOperator, SumsAndScaling) {
  std::mt19937_64 rng(6);
  const RawOperator ra = random_raw(rng, kShape, kShape, false);
  const RawOperator rb = random_raw(rng, kShape, kShape, false);
  const GradedOperator s = build(ra) + Complex(0.0, 2.0) * build(rb);
  const Matrix oracle = dense(ra, 6, 6) + Complex(0.0, 2.0) * dense(rb, 6, 6);
  EXPECT_LE(dist(s.compress(window(kShape, 6), window(kShape, 6)), oracle), 1e-12);
  const GradedOperator zero = build(ra) - build(ra);
  EXPECT_TRUE(zero.bands().empty());
  EXPECT_TRUE(zero.is_finitely_supported());
}

TEST(GradedOperator, ShiftAlgebra) {
  const GradedOperator s = GradedOperator::shift(kShape);
  const GradedOperator id = GradedOperator::identity(kShape);
  const GradedOperator tail = GradedOperator::coordinate_projection(kShape, 0, 0, 0, 3);
  // S*S = I on the backbone, zero on the tail.
  EXPECT_EQ(s.adjoint() * s, id - tail);
  const GradedOperator defect = id - tail - s * s.adjoint();
  EXPECT_TRUE(defect.is_finitely_supported());
  EXPECT_EQ(defect.support_grades(), 1u);
  EXPECT_EQ(graded_norm(defect), 1.0);
}

TEST(GradedOperator, SupportAndSteadyStart) {
  GradedOperator op(kShape, kShape);
  op.add_band_entry(-1, 3, Matrix::identity(2));
  EXPECT_EQ(op.support_grades(), 4u);
  op.add_tail_to_fiber(5, Matrix(2, 3, std::vector<Complex>(6, 1.0)));
  EXPECT_EQ(op.support_grades(), 6u);
  GradedOperator w = GradedOperator::shift(kShape);
  w.add_band_entry(1, 0, Matrix::identity(2));
  EXPECT_EQ(w.steady_start(), 1u);
  EXPECT_FALSE(w.is_finitely_supported());
}

TEST(GradedOperator, WindowMatrixRoundTrip) {
  std::mt19937_64 rng(7);
  const Window w = window(kShape, 3);
  const Matrix m = random_matrix(rng, w.dim(), w.dim());
  const GradedOperator op = GradedOperator::from_window_matrix(m, w, w);
  EXPECT_EQ(op.compress(w, w), m);
  EXPECT_TRUE(op.is_finitely_supported());
  const GradedOperator a = GradedOperator::identity_outside(m, w);
  const Window big = window(kShape, 5);
  Matrix expected = Matrix::identity(big.dim());
  expected.set_block(0, 0, m.block(0, 0, 6, 6));
  expected.set_block(0, big.tail_index(0), m.block(0, 6, 6, 3));
  expected.set_block(big.tail_index(0), 0, m.block(6, 0, 3, 6));
  expected.set_block(big.tail_index(0), big.tail_index(0), m.block(6, 6, 3, 3));
  EXPECT_EQ(a.compress(big, big), expected);
}

TEST(GradedOperator, EmbeddingPlacesBlocks) {
  const Matrix t{{1.0, 2.0}, {3.0, 4.0}};
  const GradedOperator small = GradedOperator::from_matrix(t);
  const LiftedSpaceShape big{1, {1, 2}};
  const GradedOperator e = small.embedded(big, {0, 1}, big, {0, 1});
  const GradedVector v = GradedVector::in_tail_block(big, 1, {1.0, 0.0});
  EXPECT_EQ(e.apply(v), GradedVector::in_tail_block(big, 1, {1.0, 3.0}));
  EXPECT_THROW(small.embedded(big, {0, 2}, big, {0, 0}), ShapeMismatch);
}

TEST(GradedOperator, ApplyAllMatchesSerialReference) {
  std::mt19937_64 rng(8);
  const GradedOperator op = build(random_raw(rng, kShape, kShape, false));
  std::vector<GradedVector> vs;
  const Window w = window(kShape, 6);
  for (std::size_t i = 0; i < w.dim(); ++i) vs.push_back(w.basis_vector(i));
  EXPECT_EQ(op.apply_all(vs), apply_all_serial(op, vs));
}

TEST(GradedOperator, JsonRoundTripIsExact) {
  std::mt19937_64 rng(9);
  const GradedOperator op = build(random_raw(rng, kShape, LiftedSpaceShape{3, {2}}, false));
  const Json j = to_json(op);
  const GradedOperator back = graded_operator_from_json(parse_json_text(j.dump()));
  EXPECT_EQ(back, op);
  EXPECT_EQ(dump(to_json(back)), dump(j));
}

TEST(Calculus, SquareRootOfIdentityPlusFinite) {
  std::mt19937_64 rng(10);
  const Window w = window(kShape, 2);
  const Matrix x = random_matrix(rng, w.dim(), w.dim());
  const Matrix block = x * x.adjoint() + Matrix::identity(w.dim());
  const GradedOperator a = GradedOperator::identity_outside(block, w);
  const GradedOperator r = graded_sqrt(a);
  const GradedOperator rr = r * r;
  const Window big = window(kShape, 4);
  EXPECT_LE(spectral_norm(rr.compress(big, big) - a.compress(big, big)), 1e-10 * spectral_norm(block));
  const GradedOperator ri = graded_inv_sqrt(a);
  EXPECT_LE(spectral_norm((ri * a * ri).compress(big, big) - Matrix::identity(big.dim())), 1e-10);
  EXPECT_NEAR(graded_min_eigenvalue(a), std::min(1.0, min_eigenvalue(block)), 1e-12);
  EXPECT_THROW(graded_sqrt(GradedOperator::shift(kShape)), Unsupported);
}

TEST(Calculus, RangeAndComplementOfFiniteOperator) {
  const LiftedSpaceShape s{1, {1}};
  GradedOperator p(s, s);
  p.add_band_entry(0, 2, Matrix{{1.0}});
  p.add_tail_to_tail(Matrix{{2.0}});
  const GradedSubspace r = graded_range(p);
  EXPECT_EQ(r.dim(), 2u);
  const Window w = window(s, 4);
  const GradedSubspace c = complement_in(w, r);
  EXPECT_EQ(c.dim(), 3u);
  EXPECT_NEAR(r.distance(GradedVector::in_fiber(s, 2, {1.0})), 0.0, 1e-15);
  EXPECT_NEAR(r.distance(GradedVector::in_fiber(s, 7, {1.0})), 1.0, 1e-15);
  EXPECT_NEAR(c.distance(GradedVector::in_fiber(s, 1, {1.0})), 0.0, 1e-15);
}

TEST(Calculus, PsdCompareOnGradedDifference) {
  const LiftedSpaceShape s{1, {1}};
  const GradedOperator id = GradedOperator::identity(s);
  GradedOperator a = id;
  a.add_tail_to_tail(Matrix{{3.0}});
  EXPECT_EQ(graded_psd_compare(id, a, 1e-12).order, PsdOrder::Leq);
  EXPECT_EQ(graded_psd_compare(a, a, 1e-12).order, PsdOrder::Equal);
  EXPECT_THROW(graded_psd_compare(id, GradedOperator::shift(s), 1e-12), Unsupported);
}
