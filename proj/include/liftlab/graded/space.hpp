#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "liftlab/linalg/matrix.hpp"

namespace liftlab {

// K = l2_+(E) + F_1 + ... + F_k with dim E = fiber_dim and dim F_i = tails[i].
struct LiftedSpaceShape {
  std::size_t fiber_dim = 0;
  std::vector<std::size_t> tails;

  std::size_t tail_dim() const;
  std::size_t tail_offset(std::size_t block) const;
  bool is_finite() const { return fiber_dim == 0; }
  friend bool operator==(const LiftedSpaceShape&, const LiftedSpaceShape&) = default;
};

// Finite-dimensional space C^n seen as a lifted space with no backbone.
LiftedSpaceShape finite_shape(std::size_t n);

// Finitely supported element of a lifted space. Fiber blocks that are
// identically zero are never stored; the tail is always stored in full.
class GradedVector {
 public:
  GradedVector() = default;
  explicit GradedVector(LiftedSpaceShape shape);

  static GradedVector in_fiber(const LiftedSpaceShape& shape, std::size_t grade, Vector x);
  static GradedVector in_tail(const LiftedSpaceShape& shape, Vector tail);
  static GradedVector in_tail_block(const LiftedSpaceShape& shape, std::size_t block, Vector x);

  const LiftedSpaceShape& shape() const { return shape_; }
  const std::map<std::size_t, Vector>& fibers() const { return fibers_; }
  const Vector& tail() const { return tail_; }
  Vector tail_block(std::size_t block) const;
  Vector fiber(std::size_t grade) const;
  // One past the highest stored grade; 0 when there is no fiber part.
  std::size_t grade_extent() const;
  bool is_zero() const;

  void add_fiber(std::size_t grade, std::span<const Complex> x);
  void add_tail(std::span<const Complex> x, std::size_t offset = 0);

  GradedVector& operator+=(const GradedVector& o);
  GradedVector& operator-=(const GradedVector& o);
  GradedVector& operator*=(Complex s);

  double norm_squared() const;
  double norm() const;

  friend bool operator==(const GradedVector&, const GradedVector&) = default;

 private:
  void require_compatible(const GradedVector& o) const;

  LiftedSpaceShape shape_;
  std::map<std::size_t, Vector> fibers_;
  Vector tail_;
};

GradedVector operator+(GradedVector a, const GradedVector& b);
GradedVector operator-(GradedVector a, const GradedVector& b);
GradedVector operator*(Complex s, GradedVector a);
Complex inner(const GradedVector& a, const GradedVector& b);

// Unilateral shift on the backbone; the tail is sent to zero.
GradedVector shift_apply(const GradedVector& v);
GradedVector shift_adjoint_apply(const GradedVector& v);

// Coordinates: grade 0 fiber, grade 1 fiber, ..., grade (grades-1) fiber, then the tail.
struct Window {
  LiftedSpaceShape shape;
  std::size_t grades = 0;

  std::size_t dim() const { return grades * shape.fiber_dim + shape.tail_dim(); }
  std::size_t fiber_index(std::size_t grade, std::size_t comp) const {
    return grade * shape.fiber_dim + comp;
  }
  std::size_t tail_index(std::size_t comp) const { return grades * shape.fiber_dim + comp; }
  bool contains(const GradedVector& v) const;
  // Throws ShapeMismatch if v has support beyond the window.
  Vector to_dense(const GradedVector& v) const;
  // Drops whatever lies beyond the window.
  Vector truncate(const GradedVector& v) const;
  GradedVector from_dense(std::span<const Complex> x) const;
  GradedVector basis_vector(std::size_t i) const;
};

Window window(const LiftedSpaceShape& shape, std::size_t grades);
Window widen(const Window& w, std::size_t grades);

// Where a small space sits inside a lifted space: its fiber components start at
// fiber_offset, its tail components at tail_offset.
struct Placement {
  std::size_t fiber_offset = 0;
  std::size_t tail_offset = 0;
  friend bool operator==(const Placement&, const Placement&) = default;
};

// For each coordinate of the small window, its index in the big window when the
// small space is placed at p. Both windows must have the same number of grades
// (the small one may have no fiber).
std::vector<std::size_t> placed_indices(const Window& small, const Window& big, Placement p);

}  // namespace liftlab
