#include "liftlab/sampler/generators.hpp"

#include <cmath>

#include "liftlab/error.hpp"
#include "liftlab/linalg/decompose.hpp"
#include "liftlab/linalg/psd.hpp"
#include "liftlab/linalg/spectral.hpp"
#include "liftlab/sampler/rng.hpp"
#include "liftlab/verify/predicates.hpp"

namespace liftlab {

Matrix quasi_isometry_from_blocks(const Matrix& v, const Matrix& g) {
  if (!v.is_square() || g.rows() != v.rows()) throw ShapeMismatch("quasi-isometry blocks");
  const std::size_t r = v.rows(), n = r + g.cols();
  Matrix t(n, n);
  t.set_block(0, 0, v);
  t.set_block(0, r, g);
  return t;
}

Matrix gen_quasi_isometry(std::size_t dim, std::size_t kernel_dim, std::uint64_t seed) {
  if (kernel_dim < 1 || kernel_dim > dim) {
    throw InputError("gen_quasi_isometry: need 1 <= kernel_dim <= dim");
  }
  Rng rng(seed);
  const std::size_t r = dim - kernel_dim;
  const Matrix v = random_unitary(rng, r);
  const Matrix g = gaussian_matrix(rng, r, kernel_dim);
  const Matrix u = random_unitary(rng, dim);
  return u * quasi_isometry_from_blocks(v, g) * u.adjoint();
}

Matrix gen_partial_isometry(std::size_t dim, std::size_t kernel_dim, std::uint64_t seed) {
  if (kernel_dim < 1 || kernel_dim > dim) {
    throw InputError("gen_partial_isometry: need 1 <= kernel_dim <= dim");
  }
  Rng rng(seed);
  const std::size_t r = dim - kernel_dim;
  const Matrix v = random_unitary(rng, r);
  const Matrix u = random_unitary(rng, dim);
  return u * quasi_isometry_from_blocks(v, Matrix(r, kernel_dim)) * u.adjoint();
}

namespace {

Matrix block_proposal(Rng& rng, std::size_t dim, bool nilpotent) {
  const std::size_t r = rng.uniform_index(nilpotent ? 0 : 1, dim - 1);
  Matrix t(dim, dim);
  if (!nilpotent) t.set_block(0, 0, random_contraction(rng, r, r));
  t.set_block(0, r, gaussian_matrix(rng, r, dim - r));
  return t;
}

}  // namespace

QuasicontractionSample gen_quasicontraction(std::size_t dim, std::uint64_t seed,
                                            std::size_t max_rejects) {
  if (dim < 1) throw InputError("gen_quasicontraction: dim must be at least 1");
  if (max_rejects < 1) throw InputError("gen_quasicontraction: max_rejects must be at least 1");
  Rng rng(seed);
  QuasicontractionSample out;
  while (true) {
    ++out.proposals;
    const double u = rng.uniform();
    Matrix t;
    if (dim == 1) {
      t = Matrix{{rng.complex_normal()}};
    } else if (u < 0.2) {
      t = block_proposal(rng, dim, true);
    } else if (u < 0.5) {
      t = block_proposal(rng, dim, false);
    } else {
      // Generic proposal of norm near one; accepted only when it happens to qualify.
      t = Complex(1.0 + 0.5 * rng.uniform()) * random_contraction(rng, dim, dim, 0.0);
    }
    const Matrix u_conj = random_unitary(rng, dim);
    t = u_conj * t * u_conj.adjoint();
    if (is_quasicontraction(t, 1e-12).holds) {
      out.t = std::move(t);
      return out;
    }
    if (++out.rejects >= max_rejects) {
      throw Exhausted("gen_quasicontraction: rejection budget of " + std::to_string(max_rejects) +
                      " exhausted");
    }
  }
}

StrictSimilarity gen_strict_similarity(std::size_t dim, double target_norm, std::uint64_t seed) {
  if (dim < 1) throw InputError("gen_strict_similarity: dim must be at least 1");
  if (!(target_norm > 0.0 && target_norm < 1.0)) {
    throw InputError("gen_strict_similarity: need 0 < target_norm < 1");
  }
  Rng rng(seed);
  const Matrix g = gaussian_matrix(rng, dim, dim);
  const Matrix c = Complex(target_norm / spectral_norm(g)) * g;
  // R = U diag(s) W with singular values in [1/2, 2].
  const Matrix u = random_unitary(rng, dim), w = random_unitary(rng, dim);
  std::vector<double> s(dim), inv(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    s[i] = std::exp2(2.0 * rng.uniform() - 1.0);
    inv[i] = 1.0 / s[i];
  }
  const Matrix r = u * Matrix::diagonal(std::span<const double>(s)) * w;
  const Matrix r_inv = w.adjoint() * Matrix::diagonal(std::span<const double>(inv)) * u.adjoint();
  const Matrix t = r_inv * c * r;
  const Matrix a = normalize_certificate(t, hermitian_part(r.adjoint() * r));
  return {t, a, c};
}

ShiftedHost gen_shifted_host(double a, std::size_t m, std::uint64_t seed) {
  if (!(a >= 1.0) || !std::isfinite(a)) throw InputError("gen_shifted_host: need a >= 1");
  if (m < 1) throw InputError("gen_shifted_host: need m >= 1");
  Rng rng(seed);
  Matrix t0(1, m);
  while (max_abs(t0) == 0.0) t0 = gaussian_matrix(rng, 1, m);
  return {a, t0};
}

Matrix symmetry_similarity(std::size_t dim_half) {
  if (dim_half < 1) throw InputError("symmetry class: dim_half must be at least 1");
  const std::size_t h = dim_half;
  // A0^-1/2 J A0^1/2 with J the swap of the two halves and A0 = diag(I/4, I).
  Matrix j(2 * h, 2 * h);
  j.set_block(0, h, Matrix::identity(h));
  j.set_block(h, 0, Matrix::identity(h));
  std::vector<double> a0(2 * h, 1.0);
  for (std::size_t i = 0; i < h; ++i) a0[i] = 0.25;
  const Matrix a = Matrix::diagonal(std::span<const double>(a0));
  return pd_inv_sqrt(a) * j * psd_sqrt(a);
}

}  // namespace liftlab
