#pragma once

#include <random>

#include "liftlab/graded/operator.hpp"
#include "liftlab/linalg/matrix.hpp"

namespace liftlab::testing {

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  std::normal_distribution<double> g;
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

inline Vector random_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  Vector v(n);
  for (auto& z : v) z = Complex(g(rng), g(rng));
  return v;
}

// Random vector supported on grades below `grades`.
inline GradedVector random_graded(std::mt19937_64& rng, const LiftedSpaceShape& shape,
                                  std::size_t grades) {
  GradedVector v(shape);
  for (std::size_t n = 0; n < grades && shape.fiber_dim > 0; ++n) v.add_fiber(n, random_vector(rng, shape.fiber_dim));
  v.add_tail(random_vector(rng, shape.tail_dim()));
  return v;
}

inline double max_entry_distance(const Matrix& a, const Matrix& b) { return max_abs(a - b); }

// Dense matrix of op from the window of `grades` grades into a window one grade wider
// per application, so products of up to `powers` factors are exact.
inline Matrix dense(const GradedOperator& op, std::size_t in_grades, std::size_t out_grades) {
  return op.compress(window(op.in_shape(), op.in_shape().fiber_dim ? in_grades : 0),
                     window(op.out_shape(), op.out_shape().fiber_dim ? out_grades : 0));
}

}  // namespace liftlab::testing
