#include "liftlab/linalg/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "liftlab/error.hpp"
#include "liftlab/linalg/decompose.hpp"
#include "liftlab/linalg/psd.hpp"

namespace liftlab {

const char* to_string(RadiusVerdict v) {
  switch (v) {
    case RadiusVerdict::LessThanOne: return "LT_ONE";
    case RadiusVerdict::AtLeastOne: return "GE_ONE";
    case RadiusVerdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

TrichotomyResult spectral_radius_trichotomy(const Matrix& t, std::size_t max_terms, double blow_up) {
  if (!t.is_square()) throw NonSquare("spectral_radius_trichotomy needs a square matrix");
  const std::size_t n = t.rows();
  TrichotomyResult out;
  Matrix a = Matrix::identity(n);
  Matrix power = t;
  for (std::size_t k = 1; k <= max_terms; ++k) {
    const Matrix term = power.adjoint() * power;
    a += term;
    out.terms = k;
    out.last_increment = spectral_norm(term);
    out.partial_sum_norm = spectral_norm(a);
    out.power_norm = std::sqrt(out.last_increment);
    if (out.partial_sum_norm > blow_up) {
      out.verdict = RadiusVerdict::AtLeastOne;
      return out;
    }
    if (out.last_increment <= 1e-12 * out.partial_sum_norm && out.power_norm < 1.0) {
      const Matrix defect = a - t.adjoint() * a * t - Matrix::identity(n);
      out.lyapunov_residual = spectral_norm(defect) / out.partial_sum_norm;
      out.verdict = RadiusVerdict::LessThanOne;
      out.certificate = hermitian_part(a);
      return out;
    }
    power = power * t;
  }
  return out;
}

Matrix normalize_certificate(const Matrix& t, const Matrix& a, double tol) {
  if (!t.is_square() || !a.is_square() || t.rows() != a.rows()) {
    throw ShapeMismatch("normalize_certificate: T and A must be square of equal size");
  }
  if (hermitian_defect(a) > 1e-10 * std::max(frobenius_norm(a), 1e-300)) {
    throw NotHermitian("certificate A is not Hermitian");
  }
  const Matrix ah = hermitian_part(a);
  const double lmin = min_eigenvalue(ah);
  const double scale = std::max(spectral_norm(ah), 1e-300);
  if (lmin <= tol * scale) throw NotInvertible("certificate A is not positive definite");
  const PsdComparison c = psd_compare(t.adjoint() * ah * t, ah, tol * scale);
  if (c.order != PsdOrder::Leq && c.order != PsdOrder::Equal) {
    throw HypothesesFailed("T*AT <= A", "certificate does not satisfy T*AT <= A");
  }
  const double s = std::max(1.0, 1.0 / lmin);
  return Complex(s) * ah;
}

}  // namespace liftlab
