#include "liftlab/linalg/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "liftlab/error.hpp"

namespace liftlab {

namespace {

constexpr double kJacobiStop = 1e-13;
constexpr int kMaxSweeps = 100;

struct Rotation {
  double c;
  double s;
  Complex phase;  // e^{-i phi}
};

// Rotation that annihilates the (p,q) entry of [[app, apq],[conj(apq), aqq]].
Rotation jacobi_rotation(double app, double aqq, Complex apq) {
  const double r = std::abs(apq);
  Complex phase = std::conj(apq) / r;
  phase /= std::abs(phase);
  const double tau = (aqq - app) / (2.0 * r);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  return {c, t * c, phase};
}

// Columns p,q of m become (c m_p - s e m_q, s m_p + c e m_q), e = phase.
void rotate_columns(Matrix& m, std::size_t p, std::size_t q, const Rotation& r) {
  for (std::size_t k = 0; k < m.rows(); ++k) {
    const Complex mp = m(k, p);
    const Complex mq = r.phase * m(k, q);
    m(k, p) = r.c * mp - r.s * mq;
    m(k, q) = r.s * mp + r.c * mq;
  }
}

void rotate_rows(Matrix& m, std::size_t p, std::size_t q, const Rotation& r) {
  const Complex e = std::conj(r.phase);
  for (std::size_t k = 0; k < m.cols(); ++k) {
    const Complex mp = m(p, k);
    const Complex mq = e * m(q, k);
    m(p, k) = r.c * mp - r.s * mq;
    m(q, k) = r.s * mp + r.c * mq;
  }
}

double off_diagonal(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

HermitianEig hermitian_eig(const Matrix& m, bool symmetrize) {
  if (!m.is_square()) throw NonSquare("hermitian_eig needs a square matrix");
  const std::size_t n = m.rows();
  const double scale = frobenius_norm(m);
  if (!symmetrize && hermitian_defect(m) > 1e-10 * std::max(scale, 1e-300)) {
    throw NotHermitian("hermitian_eig: input is not Hermitian");
  }
  Matrix a = hermitian_part(m);
  Matrix v = Matrix::identity(n);
  if (scale > 0.0) {
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
      if (off_diagonal(a) <= kJacobiStop * scale) break;
      for (std::size_t p = 0; p + 1 < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) {
          const Complex apq = a(p, q);
          if (std::abs(apq) <= 1e-300) continue;
          const Rotation r = jacobi_rotation(a(p, p).real(), a(q, q).real(), apq);
          rotate_columns(a, p, q, r);
          rotate_rows(a, p, q, r);
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          a(p, p) = a(p, p).real();
          a(q, q) = a(q, q).real();
          rotate_columns(v, p, q, r);
        }
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
  HermitianEig out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

Svd svd(const Matrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t n = m.cols();
  Matrix u = m;
  Matrix v = Matrix::identity(n);
  // Columns below this are rounding debris; rotating them with denormal inner
  // products loses unitarity of v.
  const double fro = frobenius_norm(m);
  const double negligible = std::max(1e-36 * fro * fro, 1e-280);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0;
        Complex gamma = 0.0;
        for (std::size_t k = 0; k < rows; ++k) {
          alpha += std::norm(u(k, p));
          beta += std::norm(u(k, q));
          gamma += std::conj(u(k, p)) * u(k, q);
        }
        if (alpha <= negligible || beta <= negligible) continue;
        if (std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
        const Rotation r = jacobi_rotation(alpha, beta, gamma);
        rotate_columns(u, p, q, r);
        rotate_columns(v, p, q, r);
        rotated = true;
      }
    if (!rotated) break;
  }
  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < rows; ++k) s += std::norm(u(k, j));
    sigma[j] = std::sqrt(s);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return sigma[i] > sigma[j]; });
  Svd out{Matrix(rows, n), std::vector<double>(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    out.sigma[k] = sigma[j];
    for (std::size_t i = 0; i < n; ++i) out.v(i, k) = v(i, j);
    if (sigma[j] > 0.0)
      for (std::size_t i = 0; i < rows; ++i) out.u(i, k) = u(i, j) / sigma[j];
  }
  return out;
}

double spectral_norm(const Matrix& m) {
  if (m.empty()) return 0.0;
  // Fewer columns gives a cheaper one-sided sweep.
  const Svd s = m.cols() <= m.rows() ? svd(m) : svd(m.adjoint());
  return s.sigma.empty() ? 0.0 : s.sigma.front();
}

double min_eigenvalue(const Matrix& hermitian) {
  const auto e = hermitian_eig(hermitian);
  return e.values.empty() ? 0.0 : e.values.front();
}

double max_eigenvalue(const Matrix& hermitian) {
  const auto e = hermitian_eig(hermitian);
  return e.values.empty() ? 0.0 : e.values.back();
}

}  // namespace liftlab
