#include "liftlab/linalg/psd.hpp"

#include <algorithm>
#include <cmath>

#include "liftlab/error.hpp"
#include "liftlab/linalg/decompose.hpp"
#include "liftlab/linalg/subspace.hpp"

namespace liftlab {

Matrix hermitian_function(const Matrix& m, const std::function<double(double)>& f) {
  const HermitianEig e = hermitian_eig(m);
  const std::size_t n = m.rows();
  Matrix r(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(e.values[k]);
    if (fk == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = e.vectors(i, k) * fk;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += vik * std::conj(e.vectors(j, k));
    }
  }
  return hermitian_part(r);
}

Matrix psd_sqrt(const Matrix& m, double tol, std::optional<double> scale) {
  const HermitianEig e = hermitian_eig(m);
  double s = scale.value_or(0.0);
  if (!scale) {
    for (double x : e.values) s = std::max(s, std::abs(x));
  }
  if (!e.values.empty() && e.values.front() < -tol * s) {
    throw NotPsd("psd_sqrt: eigenvalue " + std::to_string(e.values.front()) + " below -tol*scale");
  }
  const std::size_t n = m.rows();
  Matrix r(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double root = std::sqrt(std::max(e.values[k], 0.0));
    if (root == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = e.vectors(i, k) * root;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += vik * std::conj(e.vectors(j, k));
    }
  }
  return hermitian_part(r);
}

namespace {

void require_pd(const Matrix& m, double tol, const char* who) {
  const HermitianEig e = hermitian_eig(m);
  if (e.values.empty()) return;
  const double s = std::max(std::abs(e.values.front()), std::abs(e.values.back()));
  if (e.values.front() <= tol * s) {
    throw NotInvertible(std::string(who) + ": matrix is not positive definite");
  }
}

}  // namespace

Matrix pd_inv_sqrt(const Matrix& m, double tol) {
  require_pd(m, tol, "pd_inv_sqrt");
  return hermitian_function(m, [](double x) { return 1.0 / std::sqrt(x); });
}

Matrix pd_inverse(const Matrix& m, double tol) {
  require_pd(m, tol, "pd_inverse");
  return hermitian_function(m, [](double x) { return 1.0 / x; });
}

Matrix pinv(const Matrix& m, double rank_tol) {
  if (m.empty()) return Matrix(m.cols(), m.rows());
  const double tol = rank_tol < 0.0 ? default_rank_tolerance(m) : rank_tol;
  const Svd s = svd(m);
  Matrix r(m.cols(), m.rows());
  for (std::size_t k = 0; k < s.sigma.size(); ++k) {
    if (s.sigma[k] <= tol) break;
    const double inv = 1.0 / s.sigma[k];
    for (std::size_t i = 0; i < m.cols(); ++i) {
      const Complex vik = s.v(i, k) * inv;
      for (std::size_t j = 0; j < m.rows(); ++j) r(i, j) += vik * std::conj(s.u(j, k));
    }
  }
  return r;
}

Polar polar_decompose(const Matrix& m, double rank_tol) {
  const double tol = rank_tol < 0.0 ? default_rank_tolerance(m) : rank_tol;
  const Svd s = svd(m);
  Polar out{Matrix(m.rows(), m.cols()), Matrix(m.cols(), m.cols())};
  for (std::size_t k = 0; k < s.sigma.size(); ++k) {
    if (s.sigma[k] <= tol) break;
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) out.j(i, j) += s.u(i, k) * std::conj(s.v(j, k));
    for (std::size_t i = 0; i < m.cols(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        out.p(i, j) += s.sigma[k] * s.v(i, k) * std::conj(s.v(j, k));
  }
  out.p = hermitian_part(out.p);
  return out;
}

const char* to_string(PsdOrder o) {
  switch (o) {
    case PsdOrder::Leq: return "LEQ";
    case PsdOrder::Geq: return "GEQ";
    case PsdOrder::Equal: return "EQUAL";
    case PsdOrder::Incomparable: return "INCOMPARABLE";
  }
  return "?";
}

PsdComparison psd_compare(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeMismatch("psd_compare shapes");
  // Hermitian on the common scale; the difference itself may be pure rounding noise.
  const double scale = std::max({frobenius_norm(a), frobenius_norm(b), 1e-300});
  for (const Matrix* m : {&a, &b}) {
    if (hermitian_defect(*m) > 1e-10 * scale) {
      throw NotHermitian("psd_compare: input is not Hermitian");
    }
  }
  const HermitianEig e = hermitian_eig(hermitian_part(b - a));
  PsdComparison out{PsdOrder::Equal, 0.0, 0.0};
  if (!e.values.empty()) {
    out.min_eigenvalue = e.values.front();
    out.max_eigenvalue = e.values.back();
  }
  const bool leq = out.min_eigenvalue >= -tol;
  const bool geq = out.max_eigenvalue <= tol;
  if (leq && geq) out.order = PsdOrder::Equal;
  else if (leq) out.order = PsdOrder::Leq;
  else if (geq) out.order = PsdOrder::Geq;
  else out.order = PsdOrder::Incomparable;
  return out;
}

}  // namespace liftlab
