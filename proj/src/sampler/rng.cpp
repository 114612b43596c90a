#include "liftlab/sampler/rng.hpp"

#include <cmath>
#include <numbers>

#include "liftlab/linalg/decompose.hpp"
#include "liftlab/linalg/psd.hpp"

namespace liftlab {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t i) {
  return mix64(seed ^ mix64(i + 0x632BE59BD9B4E019ULL));
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t c = counter_++;
  return mix64(key_ ^ mix64(c));
}

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

std::size_t Rng::uniform_index(std::size_t lo, std::size_t hi) {
  if (hi <= lo) return lo;
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::size_t>(next_u64() % span);
}

double Rng::normal() {
  // Box-Muller with u1 in (0, 1].
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

Matrix gaussian_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.complex_normal();
  return m;
}

Vector gaussian_vector(Rng& rng, std::size_t n) {
  Vector v(n);
  for (auto& z : v) z = rng.complex_normal();
  return v;
}

Matrix random_unitary(Rng& rng, std::size_t n) {
  if (n == 0) return Matrix(0, 0);
  return polar_decompose(gaussian_matrix(rng, n, n)).j;
}

Matrix random_contraction(Rng& rng, std::size_t rows, std::size_t cols, double margin) {
  const Matrix g = gaussian_matrix(rng, rows, cols);
  const double s = g.empty() ? 0.0 : spectral_norm(g);
  return Complex(1.0 / (s + margin)) * g;
}

}  // namespace liftlab
