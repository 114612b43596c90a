#pragma once

#include <optional>
#include <string>

#include "liftlab/graded/operator.hpp"
#include "liftlab/json.hpp"

namespace liftlab {

// H = l2_+(C) + C^m with T = [[W, T0], [0, 0]]: W the weighted shift with
// weights (a, 1, 1, ...) and T0 : C^m -> grade 0, so W*T0 = 0 by construction.
struct ShiftedHost {
  double a = 1.0;
  Matrix t0;  // 1 x m

  std::size_t tail_dim() const { return t0.cols(); }
  LiftedSpaceShape shape() const { return {1, {tail_dim()}}; }
  GradedOperator op() const;
  GradedOperator weighted_shift() const;  // W on the backbone, zero on the tail
  double wt0_norm() const;                // ||W T0|| = a ||T0||
  double t0_norm() const;
};

Json to_json(const ShiftedHost& h);
ShiftedHost shifted_host_from_json(const Json& j);

enum class CertificateSource { User, LyapunovSeries, ShiftedHost, SymmetryAverage };
const char* to_string(CertificateSource s);
CertificateSource certificate_source_from_string(const std::string& s);

// Invertible positive A with T*AT <= A, on the same space as T.
struct Certificate {
  GradedOperator a;
  CertificateSource source = CertificateSource::User;
};

// Lifts of plain matrices to operators on finite_shape(n).
inline GradedOperator as_operator(const Matrix& m) { return GradedOperator::from_matrix(m); }
// The matrix of an operator on a finite space.
Matrix as_matrix(const GradedOperator& op);

// ||M|| for a finitely supported operator; otherwise the largest stored entry
// (which bounds the steady part only up to a constant).
double graded_size(const GradedOperator& op);

// ||T*^2 T^2 - T*T|| relative to max(1, ||T*T||); zero exactly for quasi-isometries.
double quasi_isometry_defect(const GradedOperator& t);

// A = diag(W*W, c^2 I). c = nullopt picks c^2 = max(2||WT0|| + 1, ||WT0||^2 + 1).
// Throws HypothesesFailed when a < 1 or c^2 <= ||WT0||^2, Degenerate when T0 = 0 and c is automatic.
Certificate build_shifted_host_certificate(const ShiftedHost& host, std::optional<double> c = {});
double automatic_host_constant(const ShiftedHost& host);

}  // namespace liftlab
