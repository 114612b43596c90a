#pragma once

#include <map>
#include <vector>

#include "liftlab/graded/space.hpp"

namespace liftlab {

// Maps fiber(n) -> fiber(n + offset) by head[n] for n < head.size() and by
// steady for every larger n.
struct Band {
  std::vector<Matrix> head;
  Matrix steady;

  const Matrix& at(std::size_t n) const { return n < head.size() ? head[n] : steady; }
  friend bool operator==(const Band&, const Band&) = default;
};

// Bounded operator between lifted spaces with banded fiber part and finitely many
// couplings between fiber and tail. Closed under sums, products and adjoints.
class GradedOperator {
 public:
  GradedOperator() = default;
  GradedOperator(LiftedSpaceShape in, LiftedSpaceShape out);

  static GradedOperator identity(const LiftedSpaceShape& shape);
  // Shift on every fiber component, zero on the tail.
  static GradedOperator shift(const LiftedSpaceShape& shape);
  // Finite matrix acting on finite_shape(n).
  static GradedOperator from_matrix(const Matrix& m);
  // Operator equal to m on the window and zero elsewhere.
  static GradedOperator from_window_matrix(const Matrix& m, const Window& in, const Window& out);
  // Operator equal to m on the window and to the identity on its complement.
  static GradedOperator identity_outside(const Matrix& m, const Window& w);
  // Orthogonal projection onto the fiber components [first, first + count) and the
  // tail components [tail_first, tail_first + tail_count).
  // Isometric inclusion of small into big at the given placement.
  static GradedOperator inclusion(const LiftedSpaceShape& small, const LiftedSpaceShape& big,
                                  Placement p);
  static GradedOperator coordinate_projection(const LiftedSpaceShape& shape, std::size_t first,
                                              std::size_t count, std::size_t tail_first,
                                              std::size_t tail_count);

  const LiftedSpaceShape& in_shape() const { return in_; }
  const LiftedSpaceShape& out_shape() const { return out_; }
  const std::map<int, Band>& bands() const { return bands_; }
  const std::vector<Matrix>& tail_to_fiber() const { return tail_to_fiber_; }
  const std::vector<Matrix>& fiber_to_tail() const { return fiber_to_tail_; }
  const Matrix& tail_to_tail() const { return tail_to_tail_; }

  // Replaces a band verbatim (used when deserializing).
  void set_band(int offset, Band b);
  void add_band_entry(int offset, std::size_t source_grade, const Matrix& m);
  void add_band_steady(int offset, const Matrix& m);
  void add_tail_to_fiber(std::size_t grade, const Matrix& m);
  void add_fiber_to_tail(std::size_t grade, const Matrix& m);
  void add_tail_to_tail(const Matrix& m);

  GradedVector apply(const GradedVector& v) const;
  std::vector<GradedVector> apply_all(const std::vector<GradedVector>& vs) const;
  GradedOperator adjoint() const;
  GradedOperator embedded(const LiftedSpaceShape& big_in, Placement in,
                          const LiftedSpaceShape& big_out, Placement out) const;

  // All steady parts vanish (to within tol), so the operator has finite rank.
  bool is_finitely_supported(double tol = 0.0) const;
  // Smallest G with op = P_G op P_G, P_G the projection onto the window of G grades.
  // Only meaningful for finitely supported operators.
  std::size_t support_grades() const;
  // Smallest s such that on grades >= s only steady parts act and no fiber/tail
  // coupling remains.
  std::size_t steady_start() const;
  double max_abs_entry() const;

  // P_out op J_in for the two windows. Exact: apply is exact.
  Matrix compress(const Window& in, const Window& out) const;

  GradedOperator& operator+=(const GradedOperator& o);
  GradedOperator& operator-=(const GradedOperator& o);
  GradedOperator& operator*=(Complex s);

  friend bool operator==(const GradedOperator&, const GradedOperator&) = default;

  // Drop trailing head entries equal to the steady part, empty bands and zero couplings.
  void canonicalize();

 private:
  friend GradedOperator operator*(const GradedOperator& p, const GradedOperator& q);

  Band& band(int offset);
  void require_same_shapes(const GradedOperator& o, const char* op) const;

  LiftedSpaceShape in_;
  LiftedSpaceShape out_;
  std::map<int, Band> bands_;
  std::vector<Matrix> tail_to_fiber_;  // index: output grade; fiber_out x tail_in
  std::vector<Matrix> fiber_to_tail_;  // index: input grade; tail_out x fiber_in
  Matrix tail_to_tail_;
};

GradedOperator operator+(GradedOperator a, const GradedOperator& b);
GradedOperator operator-(GradedOperator a, const GradedOperator& b);
GradedOperator operator*(Complex s, GradedOperator a);
// Composition: (p * q) v = p(q(v)).
GradedOperator operator*(const GradedOperator& p, const GradedOperator& q);

// Serial reference for apply_all.
std::vector<GradedVector> apply_all_serial(const GradedOperator& op,
                                           const std::vector<GradedVector>& vs);

}  // namespace liftlab
