#pragma once

#include <cstdint>
#include <string_view>

#include "liftlab/linalg/matrix.hpp"

namespace liftlab {

inline constexpr std::string_view kRngName = "liftlab-ctr64-v1";

// Counter-based generator: output i is a fixed function of (seed, i), so streams
// are reproducible across platforms and need no shared state between trials.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : key_(seed) {}

  std::uint64_t next_u64();
  // Uniform on [0, 1).
  double uniform();
  // Uniform integer in [lo, hi].
  std::size_t uniform_index(std::size_t lo, std::size_t hi);
  double normal();
  // Standard complex Gaussian: real and imaginary parts N(0, 1/2).
  Complex complex_normal();

  std::uint64_t seed() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t x);
// Seed of the i-th independent sub-stream.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t i);

Matrix gaussian_matrix(Rng& rng, std::size_t rows, std::size_t cols);
Vector gaussian_vector(Rng& rng, std::size_t n);
// Haar-like unitary from the polar factor of a Gaussian matrix.
Matrix random_unitary(Rng& rng, std::size_t n);
// M / (||M|| + margin) for a Gaussian M, so the result has norm below one.
Matrix random_contraction(Rng& rng, std::size_t rows, std::size_t cols, double margin = 0.05);

}  // namespace liftlab
