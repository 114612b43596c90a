#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "liftlab/graded/calculus.hpp"
#include "liftlab/liftings/lifting.hpp"
#include "liftlab/report.hpp"

namespace liftlab {

// For a natural lifting: sup ||(S*S - I) S h|| against ||(A - I) T||, where A is the
// H block of S*S. When both vanish, also checks that T is a quasicontraction and
// that X0 is isometric.
ConditionReport check_range_invariance(const LiftingOperator& s, double tol = kDefaultTolerance);

// T quasi-isometric against R(T) in N(A - I), for a certificate A of T.
ConditionReport check_quasi_isometry_criterion(const GradedOperator& t, const GradedOperator& a,
                                               double tol = kDefaultTolerance);

struct KernelStructure {
  ConditionReport report;
  GradedSubspace r0;  // R(A - T*AT) = H - N0
  GradedSubspace r1;  // R(I - That*That) = H - N1
  double stack_norm = 0.0;
  double transformed_norm = 0.0;  // ||That| R0||
};
// N0 = N(A - T*AT) and N1 = N(I - That*That), That = A^1/2 T A^-1/2: invariance,
// N0 = N1, and the two equivalent descriptions of R(A - T*T) = R(A - T*AT).
// Requires T*T <= T*AT <= A; throws HypothesesFailed otherwise.
KernelStructure check_kernel_structure(const GradedOperator& t, const GradedOperator& a,
                                       double tol = kDefaultTolerance);

struct ClosedRangeNorms {
  ConditionReport report;
  double transformed = 0.0;  // ||That| H - N0||
  double weighted = 0.0;     // ||T A^-1/2| H - N0||
};
ClosedRangeNorms check_closed_range_norms(const GradedOperator& t, const GradedOperator& a,
                                          double tol = kDefaultTolerance);

struct KernelGap {
  SubspaceBasis first;   // {l + m : l in N(V*), m in N(V1*), G0*l + G1*m = 0}
  SubspaceBasis second;  // N([G0* G1*]) minus R(V) + N(G1*)
  std::size_t grades = 0;
  double max_sine = 0.0;
  bool agree = false;
  double kernel_condition_residual = 0.0;
};
// Both descriptions of N(S*) - N(Q*) for a left invertible lifting, on the window
// of max(probe_grade, window + 1) grades. Throws KernelConditionFailed unless
// Q*Q N(Q*) is contained in N(Q*).
KernelGap kernel_gap(const LiftingOperator& s, std::size_t probe_grade = 6,
                     double tol = kDefaultTolerance);

// For S = [[V, G], [0, Q]] on L + M (L the isometric backbone): Q quasi-isometric
// iff GQ = 0, and the paired conditions R(G*) in N(Q*) = N(S*) and S R(Q) in R(Q),
// R(Q) perpendicular to N(S*).
ConditionReport check_left_invertible_structure(const LiftingOperator& s,
                                                double tol = kDefaultTolerance);

struct Refutation {
  ConditionReport report;
  Matrix t;
  std::size_t samples = 0;
  std::size_t refuted = 0;
  std::size_t equal_to_gram = 0;  // samples with A = T*T (nothing to refute)
};
// Samples certificates A = B + T*BT of the symmetry example and checks that
// none satisfies the range condition.
Refutation refute_symmetry_class(std::size_t dim_half, std::size_t samples, std::uint64_t seed,
                                 double tol = kDefaultTolerance);

struct SuiteOptions {
  std::size_t probes = 16;
  std::size_t probe_grade = 6;
  std::uint64_t seed = 0;
  double tol = kDefaultTolerance;
};
ConditionReport verify_lifting_suite(const LiftingOperator& s, const SuiteOptions& opt = {});
// Names of the suite checks that the kind guarantees.
std::vector<std::string> claimed_checks(LiftingKind kind);
bool claimed_checks_pass(const ConditionReport& suite, LiftingKind kind);

}  // namespace liftlab
