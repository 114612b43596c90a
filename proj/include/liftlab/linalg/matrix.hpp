#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace liftlab {

using Complex = std::complex<double>;
using Vector = std::vector<Complex>;

// Dense complex matrix, row-major. Zero-sized dimensions are allowed.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static Matrix identity(std::size_t n);
  static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix diagonal(std::span<const double> values);
  static Matrix diagonal(std::span<const Complex> values);
  static Matrix from_column(std::span<const Complex> v);
  static Matrix from_columns(std::size_t rows, const std::vector<Vector>& columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<Complex>& entries() const { return data_; }

  Matrix adjoint() const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
  void add_block(std::size_t r0, std::size_t c0, const Matrix& b);
  Vector column(std::size_t j) const;
  void set_column(std::size_t j, std::span<const Complex> v);
  Matrix columns(std::size_t c0, std::size_t nc) const { return block(0, c0, rows_, nc); }

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(Complex s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator-(Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(Complex s, Matrix a);
Vector operator*(const Matrix& a, std::span<const Complex> v);

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);

double frobenius_norm(const Matrix& m);
double max_abs(const Matrix& m);
bool is_finite(const Matrix& m);
// (M + M*) / 2
Matrix hermitian_part(const Matrix& m);
double hermitian_defect(const Matrix& m);

double norm(std::span<const Complex> v);
// Conjugate-linear in the first argument.
Complex inner(std::span<const Complex> a, std::span<const Complex> b);
Vector axpy(Complex s, std::span<const Complex> x, Vector y);

}  // namespace liftlab
