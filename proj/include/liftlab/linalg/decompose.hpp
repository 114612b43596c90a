#pragma once

#include <vector>

#include "liftlab/linalg/matrix.hpp"

namespace liftlab {

struct HermitianEig {
  std::vector<double> values;  // ascending
  Matrix vectors;              // unitary, column k pairs with values[k]
};

// Cyclic complex Jacobi on the Hermitian part of m. Unless symmetrize is set,
// throws NotHermitian when ||M - M*|| exceeds 1e-10 ||M||.
HermitianEig hermitian_eig(const Matrix& m, bool symmetrize = false);

struct Svd {
  Matrix u;                   // rows x cols, column k normalized when sigma[k] > 0, zero otherwise
  std::vector<double> sigma;  // descending, one per column of the input
  Matrix v;                   // cols x cols unitary
};

// One-sided (Hestenes) Jacobi SVD: M = u diag(sigma) v*.
Svd svd(const Matrix& m);

double spectral_norm(const Matrix& m);
double min_eigenvalue(const Matrix& hermitian);
double max_eigenvalue(const Matrix& hermitian);

}  // namespace liftlab
