#pragma once

#include <cstdint>

#include "liftlab/liftings/host.hpp"
#include "liftlab/linalg/matrix.hpp"

namespace liftlab {

// [[V, G], [0, 0]] with V unitary; a quasi-isometry for any G.
Matrix quasi_isometry_from_blocks(const Matrix& v, const Matrix& g);

// U [[V, G], [0, 0]] U* with V, U random unitaries; dim - kernel_dim = dim V.
Matrix gen_quasi_isometry(std::size_t dim, std::size_t kernel_dim, std::uint64_t seed);

// The G = 0 case: U (V + 0) U*, the finite quasi-isometries with Q*Q N(Q*) in N(Q*).
Matrix gen_partial_isometry(std::size_t dim, std::size_t kernel_dim, std::uint64_t seed);

struct QuasicontractionSample {
  Matrix t;
  std::size_t proposals = 0;  // including the accepted one
  std::size_t rejects = 0;
};
// Rejection sampling over nilpotent, contraction-block and generic proposals.
// Throws Exhausted after max_rejects rejections.
QuasicontractionSample gen_quasicontraction(std::size_t dim, std::uint64_t seed,
                                            std::size_t max_rejects = 10);

struct StrictSimilarity {
  Matrix t;
  Matrix a;  // normalized so that T*T <= T*AT <= A
  Matrix c;  // the strict contraction that T is similar to
};
// T = R^-1 C R with ||C|| = target_norm and A = R*R (rescaled).
StrictSimilarity gen_strict_similarity(std::size_t dim, double target_norm, std::uint64_t seed);

// Random nonzero T0 with the given first weight.
ShiftedHost gen_shifted_host(double a, std::size_t m, std::uint64_t seed);

// [[0, 2I], [I/2, 0]] on C^(2 dim_half): similar to the swap symmetry, and T^2 = I.
Matrix symmetry_similarity(std::size_t dim_half);

}  // namespace liftlab
