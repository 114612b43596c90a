#pragma once

#include <cstddef>
#include <optional>

#include "liftlab/linalg/matrix.hpp"

namespace liftlab {

enum class RadiusVerdict { LessThanOne, AtLeastOne, Inconclusive };
const char* to_string(RadiusVerdict v);

struct TrichotomyResult {
  RadiusVerdict verdict = RadiusVerdict::Inconclusive;
  std::optional<Matrix> certificate;  // set for LessThanOne
  std::size_t terms = 0;
  double last_increment = 0.0;
  double partial_sum_norm = 0.0;
  double power_norm = 0.0;          // ||T^k|| when the loop stopped
  double lyapunov_residual = 0.0;   // ||A - T*AT - I|| / ||A|| before scaling
};

inline constexpr std::size_t kDefaultMaxTerms = 500;
inline constexpr double kDefaultBlowUp = 1e8;

// Sums A = sum_k T*^k T^k. LessThanOne is only reported when the increments have
// died out and some power of T is a strict contraction, so r(T) < 1 is certain.
TrichotomyResult spectral_radius_trichotomy(const Matrix& t,
                                            std::size_t max_terms = kDefaultMaxTerms,
                                            double blow_up = kDefaultBlowUp);

// Verifies 0 < A, T*AT <= A and rescales by max(1, 1 / lambda_min(A)) so that
// T*T <= T*AT <= A. Throws HypothesesFailed otherwise.
Matrix normalize_certificate(const Matrix& t, const Matrix& a, double tol = 1e-9);

}  // namespace liftlab
