#pragma once

#include <functional>
#include <optional>

#include "liftlab/linalg/matrix.hpp"

namespace liftlab {

inline constexpr double kPsdTolerance = 1e-10;

// Applies f to the spectrum of a Hermitian matrix.
Matrix hermitian_function(const Matrix& m, const std::function<double(double)>& f);

// Eigenvalues in [-tol*scale, 0) are clamped to zero; anything below throws NotPsd.
// scale defaults to the spectral norm of m. Pass the size of the operands when m
// is a difference that may be pure rounding noise.
Matrix psd_sqrt(const Matrix& m, double tol = kPsdTolerance, std::optional<double> scale = {});
// Requires m positive definite (smallest eigenvalue > tol * scale).
Matrix pd_inv_sqrt(const Matrix& m, double tol = kPsdTolerance);
Matrix pd_inverse(const Matrix& m, double tol = kPsdTolerance);

// Moore-Penrose pseudo-inverse with singular values <= rank_tol treated as zero.
// A negative rank_tol selects the default max(m,n) * ||M|| * 1e-12.
Matrix pinv(const Matrix& m, double rank_tol = -1.0);

struct Polar {
  Matrix j;  // partial isometry with initial space R(M*)
  Matrix p;  // (M*M)^{1/2}
};
Polar polar_decompose(const Matrix& m, double rank_tol = -1.0);

enum class PsdOrder { Leq, Geq, Equal, Incomparable };
const char* to_string(PsdOrder o);

struct PsdComparison {
  PsdOrder order;
  double min_eigenvalue;  // of b - a
  double max_eigenvalue;  // of b - a
};
// Orders a against b: Leq means a <= b. tol is absolute on the spectrum of b - a.
PsdComparison psd_compare(const Matrix& a, const Matrix& b, double tol);

}  // namespace liftlab
