#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "liftlab/error.hpp"
#include "liftlab/json.hpp"
#include "liftlab/linalg/decompose.hpp"
#include "liftlab/linalg/psd.hpp"
#include "liftlab/linalg/spectral.hpp"
#include "liftlab/linalg/subspace.hpp"

using namespace liftlab;

namespace {

Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  std::normal_distribution<double> g;
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

double dist(const Matrix& a, const Matrix& b) { return frobenius_norm(a - b); }

Matrix d2(double a, double b) {
  const double v[] = {a, b};
  return Matrix::diagonal(v);
}

// Closed-form eigenvalues of [[a, z], [conj z, d]].
std::pair<double, double> eig2(double a, double d, Complex z) {
  const double m = 0.5 * (a + d);
  const double r = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(z));
  return {m - r, m + r};
}

}  // namespace

TEST(Matrix, AdjointIsAnInvolution) {
  std::mt19937_64 rng(1);
  const Matrix m = random_matrix(rng, 3, 5);
  EXPECT_EQ(m.adjoint().adjoint(), m);
  EXPECT_EQ(m.adjoint().rows(), 5u);
}

TEST(Matrix, ProductMatchesHandComputation) {
  const Matrix t{{0.0, 2.0}, {0.5, 0.0}};
  const Matrix tt = t * t;
  EXPECT_EQ(tt, Matrix::identity(2));
  const Matrix a = d2(1, 4);
  // T* A T with T* = [[0, 1/2], [2, 0]].
  EXPECT_LT(dist(t.adjoint() * a * t, a), 1e-15);
}

TEST(Matrix, ZeroSizedShapesCompose) {
  const Matrix a(3, 0), b(0, 2);
  const Matrix c = a * b;
  EXPECT_EQ(c.rows(), 3u);
  EXPECT_EQ(c.cols(), 2u);
  EXPECT_EQ(max_abs(c), 0.0);
}

TEST(Matrix, ShapeMismatchThrows) {
  EXPECT_THROW(Matrix(2, 2) + Matrix(2, 3), ShapeMismatch);
  EXPECT_THROW(Matrix(2, 3) * Matrix(2, 3), ShapeMismatch);
}

TEST(HermitianEig, DiagonalInputIsUnchanged) {
  const auto e = hermitian_eig(d2(0.25, 1.0));
  EXPECT_DOUBLE_EQ(e.values[0], 0.25);
  EXPECT_DOUBLE_EQ(e.values[1], 1.0);
  EXPECT_EQ(e.vectors, Matrix::identity(2));
}

TEST(HermitianEig, TwoByTwoFromCharacteristicPolynomial) {
  const auto e = hermitian_eig(Matrix{{1.0, 1.0}, {1.0, 2.5}});
  EXPECT_NEAR(e.values[0], 0.5, 1e-14);
  EXPECT_NEAR(e.values[1], 3.0, 1e-14);
}

TEST(HermitianEig, ComplexTwoByTwoClosedForm) {
  const Complex z(0.3, -1.7);
  const Matrix m{{2.0, z}, {std::conj(z), -0.5}};
  const auto [lo, hi] = eig2(2.0, -0.5, z);
  const auto e = hermitian_eig(m);
  EXPECT_NEAR(e.values[0], lo, 1e-14);
  EXPECT_NEAR(e.values[1], hi, 1e-14);
}

TEST(HermitianEig, ZeroMatrix) {
  const auto e = hermitian_eig(Matrix(2, 2));
  EXPECT_EQ(e.values[0], 0.0);
  EXPECT_EQ(e.values[1], 0.0);
}

TEST(HermitianEig, RejectsNonHermitianUnlessSymmetrized) {
  const Matrix m{{1.0, 2.0}, {0.0, 1.0}};
  EXPECT_THROW(hermitian_eig(m), NotHermitian);
  const auto e = hermitian_eig(m, true);
  EXPECT_NEAR(e.values[0], 0.0, 1e-14);
  EXPECT_NEAR(e.values[1], 2.0, 1e-14);
  EXPECT_THROW(hermitian_eig(Matrix(2, 3)), NonSquare);
}

TEST(HermitianEig, RandomResidualAndUnitarity) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 12;
    const Matrix x = random_matrix(rng, n, n);
    const Matrix h = hermitian_part(x);
    const auto e = hermitian_eig(h);
    const Matrix lambda = Matrix::diagonal(e.values);
    const double scale = spectral_norm(h);
    EXPECT_LE(spectral_norm(h * e.vectors - e.vectors * lambda), 1e-10 * scale);
    EXPECT_LE(max_abs(e.vectors.adjoint() * e.vectors - Matrix::identity(n)), 1e-11);
    for (std::size_t k = 1; k < n; ++k) EXPECT_LE(e.values[k - 1], e.values[k]);
  }
}

TEST(Svd, KnownSingularValues) {
  const auto s = svd(Matrix{{3.0, 0.0}, {4.0, 0.0}});
  EXPECT_NEAR(s.sigma[0], 5.0, 1e-14);
  EXPECT_EQ(s.sigma[1], 0.0);
  EXPECT_NEAR(spectral_norm(Matrix{{0.0, 2.0}, {0.5, 0.0}}), 2.0, 1e-15);
}

TEST(Svd, RandomReconstruction) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = 1 + trial % 7, c = 1 + (trial / 7) % 7;
    const Matrix m = random_matrix(rng, r, c);
    const Svd s = svd(m);
    const Matrix rec = s.u * Matrix::diagonal(s.sigma) * s.v.adjoint();
    EXPECT_LE(dist(rec, m), 1e-12 * frobenius_norm(m));
    EXPECT_LE(max_abs(s.v.adjoint() * s.v - Matrix::identity(c)), 1e-12);
  }
}

TEST(PsdSqrt, DiagonalAndIdentity) {
  EXPECT_LE(dist(psd_sqrt(d2(0.25, 1.0)), d2(0.5, 1.0)), 1e-15);
  EXPECT_LE(dist(psd_sqrt(Matrix::identity(3)), Matrix::identity(3)), 1e-15);
}

TEST(PsdSqrt, TwoByTwoFromEigenpairs) {
  // Eigenvalues 1 and 3 with eigenvectors (1, -1) and (1, 1).
  const double a = 0.5 * (std::sqrt(3.0) + 1.0), b = 0.5 * (std::sqrt(3.0) - 1.0);
  const Matrix expected{{a, b}, {b, a}};
  const Matrix m{{2.0, 1.0}, {1.0, 2.0}};
  const Matrix r = psd_sqrt(m);
  EXPECT_LE(dist(r, expected), 1e-14);
  EXPECT_LE(dist(r * r, m), 1e-12);
}

TEST(PsdSqrt, ClampsRoundingNegativesAndRejectsIndefinite) {
  const Matrix nearly = d2(1.0, -1e-13);
  EXPECT_EQ(psd_sqrt(nearly)(1, 1), Complex(0.0));
  EXPECT_THROW(psd_sqrt(d2(1.0, -1.0)), NotPsd);
}

TEST(PsdSqrt, SquaresBackAndKeepsRange) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 6, k = 1 + trial % n;
    const Matrix x = random_matrix(rng, n, k);
    const Matrix m = x * x.adjoint();
    const Matrix r = psd_sqrt(m);
    EXPECT_LE(spectral_norm(r * r - m), 1e-9 * spectral_norm(m));
    const auto cmp = ranges_equal(r, m, 1e-8, 1e-7 * spectral_norm(m));
    EXPECT_TRUE(cmp.equal) << "sine " << cmp.max_sine;
    EXPECT_EQ(cmp.dim_first, k);
  }
}

TEST(Polar, PartialIsometryExamples) {
  const Polar p = polar_decompose(Matrix{{0.0, 2.0}, {0.0, 0.0}});
  EXPECT_LE(dist(p.j, Matrix{{0.0, 1.0}, {0.0, 0.0}}), 1e-15);
  EXPECT_LE(dist(p.p, d2(0.0, 2.0)), 1e-15);
  const Polar z = polar_decompose(Matrix(2, 2));
  EXPECT_EQ(max_abs(z.j), 0.0);
  EXPECT_EQ(max_abs(z.p), 0.0);
  const double c = std::cos(0.7), s = std::sin(0.7);
  const Matrix u{{c, Complex(0, s)}, {Complex(0, s), c}};
  const Polar pu = polar_decompose(u);
  EXPECT_LE(dist(pu.j, u), 1e-14);
  EXPECT_LE(dist(pu.p, Matrix::identity(2)), 1e-14);
}

TEST(Polar, ReconstructionOnRandomMatrices) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t r = 1 + trial % 8, c = 1 + (trial / 8) % 8;
    Matrix m = random_matrix(rng, r, c);
    if (trial % 5 == 0 && c > 1) m.set_column(0, m.column(1));  // rank deficient
    const Polar p = polar_decompose(m);
    const double scale = spectral_norm(m);
    EXPECT_LE(spectral_norm(p.j * p.p - m), 1e-10 * scale);
    const Matrix jp = p.j * p.p;
    // J is isometric on R(P): ||J P x|| = ||P x||.
    for (std::size_t k = 0; k < c; ++k) {
      EXPECT_NEAR(norm(jp.column(k)), norm(p.p.column(k)), 1e-10 * scale);
    }
  }
}

TEST(PsdCompare, Verdicts) {
  EXPECT_EQ(psd_compare(d2(0.25, 4.0), d2(1.0, 4.0), 1e-12).order, PsdOrder::Leq);
  EXPECT_EQ(psd_compare(d2(1.0, 4.0), d2(0.25, 4.0), 1e-12).order, PsdOrder::Geq);
  EXPECT_EQ(psd_compare(d2(2.0, 3.0), d2(2.0, 3.0), 1e-12).order, PsdOrder::Equal);
  EXPECT_EQ(psd_compare(d2(1.0, 0.0), d2(0.0, 1.0), 1e-12).order, PsdOrder::Incomparable);
  EXPECT_THROW(psd_compare(Matrix(2, 2), Matrix(3, 3), 1e-12), ShapeMismatch);
}

TEST(Subspaces, RangeAndKernelExamples) {
  const auto r = range_basis(d2(0.75, 0.0));
  ASSERT_EQ(r.dim(), 1u);
  EXPECT_NEAR(std::abs(r.basis(0, 0)), 1.0, 1e-15);
  const auto k = kernel_basis(d2(0.75, 0.0));
  ASSERT_EQ(k.dim(), 1u);
  EXPECT_NEAR(std::abs(k.basis(1, 0)), 1.0, 1e-15);

  EXPECT_EQ(range_basis(Matrix(3, 3)).dim(), 0u);
  EXPECT_EQ(kernel_basis(Matrix(3, 3)).dim(), 3u);

  const Matrix q{{1.0, 1.0}, {0.0, 0.0}};
  const auto kq = kernel_basis(q);
  ASSERT_EQ(kq.dim(), 1u);
  const Vector expected{1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)};
  EXPECT_NEAR(std::abs(inner(kq.basis.column(0), expected)), 1.0, 1e-14);
  EXPECT_EQ(range_basis(q).dim(), 1u);
}

TEST(Subspaces, RankNullityAndKernelOrthogonality) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t r = 1 + trial % 6, c = 1 + (trial / 6) % 6, k = 1 + trial % 3;
    const Matrix m = random_matrix(rng, r, k) * random_matrix(rng, k, c);
    const auto ker = kernel_basis(m);
    const auto row = range_basis(m.adjoint());
    EXPECT_EQ(range_basis(m).dim() + ker.dim(), c);
    if (ker.dim() && row.dim()) EXPECT_LE(max_abs(row.basis.adjoint() * ker.basis), 1e-12);
    if (ker.dim()) EXPECT_LE(max_abs(ker.basis.adjoint() * ker.basis - Matrix::identity(ker.dim())), 1e-12);
  }
}

TEST(Subspaces, RangesEqualExamples) {
  EXPECT_FALSE(ranges_equal(d2(0.75, 0.0), Matrix(2, 2), 1e-9).equal);
  const Matrix m{{1.0, 2.0}, {2.0, 4.0}};
  EXPECT_TRUE(ranges_equal(m, m, 1e-12).equal);
  EXPECT_TRUE(ranges_equal(m, -3.0 * m, 1e-12).equal);
  EXPECT_THROW(ranges_equal(Matrix(2, 2), Matrix(3, 3), 1e-9), ShapeMismatch);
}

TEST(Subspaces, PrincipalAngleOfKnownRotation) {
  const double theta = 1e-9;
  const SubspaceBasis a{2, Matrix{{1.0}, {0.0}}};
  const SubspaceBasis b{2, Matrix{{std::cos(theta)}, {std::sin(theta)}}};
  const auto s = principal_sines(a, b);
  EXPECT_NEAR(s[0], std::sin(theta), 1e-20);
}

TEST(Douglas, ExamplesAndRangeCheck) {
  const Matrix b = psd_sqrt(d2(0.75, 0.0));
  EXPECT_EQ(max_abs(douglas_solve(b, Matrix(2, 2), 1e-9)), 0.0);
  const Matrix m{{1.0, 1.0}, {1.0, 1.0}};
  const Matrix x = douglas_solve(m, m, 1e-9);
  EXPECT_LE(dist(x, 0.5 * m), 1e-14);  // projection onto span (1,1)
  EXPECT_THROW(douglas_solve(d2(1.0, 0.0), d2(0.0, 1.0), 1e-9), RangeNotIncluded);
}

TEST(Douglas, RoundTripGivesProjection) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 5, k = 1 + trial % n;
    const Matrix x = random_matrix(rng, n, k);
    const Matrix y = random_matrix(rng, k, k);
    const Matrix b = x * x.adjoint();
    const Matrix c = x * (y * y.adjoint() + Matrix::identity(k)) * x.adjoint();
    ASSERT_TRUE(ranges_equal(b, c, 1e-8).equal);
    const Matrix x0 = douglas_solve(b, c, 1e-8);
    const Matrix x1 = douglas_solve(c, b, 1e-8);
    EXPECT_LE(spectral_norm(x0 * b - c), 1e-8 * (spectral_norm(b) + spectral_norm(c)));
    EXPECT_LE(spectral_norm(x1 * x0 - projector(range_basis(b))), 1e-8);
  }
}

TEST(Trichotomy, GeometricSeries) {
  const Matrix t = 0.5 * Matrix::identity(2);
  const auto r = spectral_radius_trichotomy(t);
  ASSERT_EQ(r.verdict, RadiusVerdict::LessThanOne);
  EXPECT_LE(dist(*r.certificate, (4.0 / 3.0) * Matrix::identity(2)), 1e-11);
  EXPECT_LE(r.lyapunov_residual, 1e-8);
}

TEST(Trichotomy, InvolutionIsNeverCertified) {
  const auto r = spectral_radius_trichotomy(Matrix{{0.0, 2.0}, {0.5, 0.0}});
  EXPECT_NE(r.verdict, RadiusVerdict::LessThanOne);
  const auto u = spectral_radius_trichotomy(Matrix::identity(3), 50, 10.0);
  EXPECT_EQ(u.verdict, RadiusVerdict::AtLeastOne);
  const auto g = spectral_radius_trichotomy(2.0 * Matrix::identity(2));
  EXPECT_EQ(g.verdict, RadiusVerdict::AtLeastOne);
}

TEST(Trichotomy, NilpotentTerminates) {
  const Matrix t{{0.0, 2.0}, {0.0, 0.0}};
  const auto r = spectral_radius_trichotomy(t);
  ASSERT_EQ(r.verdict, RadiusVerdict::LessThanOne);
  // A = I + T*T = diag(1, 5).
  EXPECT_LE(dist(*r.certificate, d2(1.0, 5.0)), 1e-15);
}

TEST(Trichotomy, NeverCertifiesWhenLastPowerIsLarge) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 4;
    Matrix t = random_matrix(rng, n, n);
    t *= (0.6 + 0.02 * trial) / spectral_norm(t);
    const auto r = spectral_radius_trichotomy(t, 60);
    if (r.verdict == RadiusVerdict::LessThanOne) EXPECT_LT(r.power_norm, 1.0);
  }
}

TEST(Certificate, NormalizationScalesUp) {
  const Matrix t{{0.0, 2.0}, {0.5, 0.0}};
  const Matrix a = normalize_certificate(t, d2(0.5, 2.0));
  EXPECT_LE(dist(a, d2(1.0, 4.0)), 1e-15);
  EXPECT_THROW(normalize_certificate(2.0 * Matrix::identity(2), Matrix::identity(2)), HypothesesFailed);
  EXPECT_THROW(normalize_certificate(Matrix::identity(2), d2(1.0, 0.0)), NotInvertible);
}

TEST(MatrixJson, RoundTripIsExact) {
  std::mt19937_64 rng(19);
  const Matrix m = random_matrix(rng, 3, 4);
  const Json j = to_json(m);
  EXPECT_EQ(matrix_from_json(parse_json_text(j.dump())), m);
  EXPECT_EQ(dump(to_json(matrix_from_json(j))), dump(j));
}

TEST(MatrixJson, RejectsMalformedInput) {
  EXPECT_THROW(matrix_from_json(parse_json_text(R"({"rows":1,"cols":2,"data":[[1,0]]})")), ParseError);
  EXPECT_THROW(matrix_from_json(parse_json_text(R"({"rows":1,"cols":1,"data":[[1e999,0]]})")), ParseError);
  EXPECT_THROW(matrix_from_json(parse_json_text(R"({"rows":1,"cols":1,"data":[[null,0]]})")), ParseError);
  EXPECT_THROW(parse_json_text("{not json"), ParseError);
}
