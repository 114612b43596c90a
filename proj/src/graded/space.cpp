#include "liftlab/graded/space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "liftlab/error.hpp"

namespace liftlab {

namespace {

bool all_zero(std::span<const Complex> x) {
  return std::all_of(x.begin(), x.end(), [](const Complex& z) { return z == Complex(0.0, 0.0); });
}

}  // namespace

std::size_t LiftedSpaceShape::tail_dim() const {
  return std::accumulate(tails.begin(), tails.end(), std::size_t{0});
}

std::size_t LiftedSpaceShape::tail_offset(std::size_t block) const {
  if (block > tails.size()) throw ShapeMismatch("tail block index out of range");
  return std::accumulate(tails.begin(), tails.begin() + static_cast<std::ptrdiff_t>(block),
                         std::size_t{0});
}

LiftedSpaceShape finite_shape(std::size_t n) { return {0, {n}}; }

GradedVector::GradedVector(LiftedSpaceShape shape)
    : shape_(std::move(shape)), tail_(shape_.tail_dim(), Complex(0.0, 0.0)) {}

GradedVector GradedVector::in_fiber(const LiftedSpaceShape& shape, std::size_t grade, Vector x) {
  GradedVector v(shape);
  v.add_fiber(grade, x);
  return v;
}

GradedVector GradedVector::in_tail(const LiftedSpaceShape& shape, Vector tail) {
  GradedVector v(shape);
  v.add_tail(tail);
  return v;
}

GradedVector GradedVector::in_tail_block(const LiftedSpaceShape& shape, std::size_t block,
                                         Vector x) {
  if (block >= shape.tails.size() || x.size() != shape.tails[block]) {
    throw ShapeMismatch("tail block length");
  }
  GradedVector v(shape);
  v.add_tail(x, shape.tail_offset(block));
  return v;
}

Vector GradedVector::tail_block(std::size_t block) const {
  const std::size_t off = shape_.tail_offset(block);
  return Vector(tail_.begin() + static_cast<std::ptrdiff_t>(off),
                tail_.begin() + static_cast<std::ptrdiff_t>(off + shape_.tails.at(block)));
}

Vector GradedVector::fiber(std::size_t grade) const {
  auto it = fibers_.find(grade);
  if (it == fibers_.end()) return Vector(shape_.fiber_dim, Complex(0.0, 0.0));
  return it->second;
}

std::size_t GradedVector::grade_extent() const {
  return fibers_.empty() ? 0 : fibers_.rbegin()->first + 1;
}

bool GradedVector::is_zero() const { return fibers_.empty() && all_zero(tail_); }

void GradedVector::add_fiber(std::size_t grade, std::span<const Complex> x) {
  if (x.size() != shape_.fiber_dim) throw ShapeMismatch("fiber block length");
  if (x.empty()) return;
  auto [it, inserted] = fibers_.try_emplace(grade, Vector(x.begin(), x.end()));
  if (!inserted) {
    for (std::size_t i = 0; i < x.size(); ++i) it->second[i] += x[i];
  }
  if (all_zero(it->second)) fibers_.erase(it);
}

void GradedVector::add_tail(std::span<const Complex> x, std::size_t offset) {
  if (offset + x.size() > tail_.size()) throw ShapeMismatch("tail segment out of range");
  for (std::size_t i = 0; i < x.size(); ++i) tail_[offset + i] += x[i];
}

void GradedVector::require_compatible(const GradedVector& o) const {
  if (!(shape_ == o.shape_)) throw ShapeMismatch("graded vectors live in different spaces");
}

GradedVector& GradedVector::operator+=(const GradedVector& o) {
  require_compatible(o);
  for (const auto& [g, x] : o.fibers_) add_fiber(g, x);
  add_tail(o.tail_);
  return *this;
}

GradedVector& GradedVector::operator-=(const GradedVector& o) {
  require_compatible(o);
  for (const auto& [g, x] : o.fibers_) {
    Vector neg(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) neg[i] = -x[i];
    add_fiber(g, neg);
  }
  for (std::size_t i = 0; i < tail_.size(); ++i) tail_[i] -= o.tail_[i];
  return *this;
}

GradedVector& GradedVector::operator*=(Complex s) {
  if (s == Complex(0.0, 0.0)) {
    fibers_.clear();
    std::fill(tail_.begin(), tail_.end(), Complex(0.0, 0.0));
    return *this;
  }
  for (auto it = fibers_.begin(); it != fibers_.end();) {
    for (auto& z : it->second) z *= s;
    // Underflow can zero a block.
    it = all_zero(it->second) ? fibers_.erase(it) : std::next(it);
  }
  for (auto& z : tail_) z *= s;
  return *this;
}

double GradedVector::norm_squared() const {
  double s = 0.0;
  for (const auto& [g, x] : fibers_)
    for (const auto& z : x) s += std::norm(z);
  for (const auto& z : tail_) s += std::norm(z);
  return s;
}

double GradedVector::norm() const { return std::sqrt(norm_squared()); }

GradedVector operator+(GradedVector a, const GradedVector& b) { return a += b; }
GradedVector operator-(GradedVector a, const GradedVector& b) { return a -= b; }
GradedVector operator*(Complex s, GradedVector a) { return a *= s; }

Complex inner(const GradedVector& a, const GradedVector& b) {
  if (!(a.shape() == b.shape())) throw ShapeMismatch("inner: different spaces");
  Complex s = inner(a.tail(), b.tail());
  for (const auto& [g, x] : a.fibers()) {
    auto it = b.fibers().find(g);
    if (it != b.fibers().end()) s += inner(x, it->second);
  }
  return s;
}

GradedVector shift_apply(const GradedVector& v) {
  GradedVector r(v.shape());
  for (const auto& [g, x] : v.fibers()) r.add_fiber(g + 1, x);
  return r;
}

GradedVector shift_adjoint_apply(const GradedVector& v) {
  GradedVector r(v.shape());
  for (const auto& [g, x] : v.fibers())
    if (g > 0) r.add_fiber(g - 1, x);
  return r;
}

bool Window::contains(const GradedVector& v) const {
  return v.shape() == shape && v.grade_extent() <= grades;
}

Vector Window::to_dense(const GradedVector& v) const {
  if (!(v.shape() == shape)) throw ShapeMismatch("window: vector from a different space");
  if (v.grade_extent() > grades) throw ShapeMismatch("window: vector has support beyond the window");
  return truncate(v);
}

Vector Window::truncate(const GradedVector& v) const {
  if (!(v.shape() == shape)) throw ShapeMismatch("window: vector from a different space");
  Vector x(dim(), Complex(0.0, 0.0));
  for (const auto& [g, f] : v.fibers()) {
    if (g >= grades) break;
    std::copy(f.begin(), f.end(), x.begin() + static_cast<std::ptrdiff_t>(fiber_index(g, 0)));
  }
  std::copy(v.tail().begin(), v.tail().end(), x.begin() + static_cast<std::ptrdiff_t>(tail_index(0)));
  return x;
}

GradedVector Window::from_dense(std::span<const Complex> x) const {
  if (x.size() != dim()) throw ShapeMismatch("window: dense length");
  GradedVector v(shape);
  for (std::size_t g = 0; g < grades; ++g) {
    v.add_fiber(g, x.subspan(fiber_index(g, 0), shape.fiber_dim));
  }
  v.add_tail(x.subspan(tail_index(0), shape.tail_dim()));
  return v;
}

GradedVector Window::basis_vector(std::size_t i) const {
  Vector x(dim(), Complex(0.0, 0.0));
  x.at(i) = 1.0;
  return from_dense(x);
}

Window window(const LiftedSpaceShape& shape, std::size_t grades) { return {shape, grades}; }

Window widen(const Window& w, std::size_t grades) {
  return {w.shape, std::max(w.grades, grades)};
}

std::vector<std::size_t> placed_indices(const Window& small, const Window& big, Placement p) {
  if (small.shape.fiber_dim > 0 && small.grades > big.grades) {
    throw ShapeMismatch("placed_indices: small window has more grades");
  }
  if (p.fiber_offset + small.shape.fiber_dim > big.shape.fiber_dim ||
      p.tail_offset + small.shape.tail_dim() > big.shape.tail_dim()) {
    throw ShapeMismatch("placed_indices: placement does not fit");
  }
  std::vector<std::size_t> idx;
  idx.reserve(small.dim());
  for (std::size_t n = 0; n < (small.shape.fiber_dim ? small.grades : 0); ++n)
    for (std::size_t j = 0; j < small.shape.fiber_dim; ++j)
      idx.push_back(big.fiber_index(n, p.fiber_offset + j));
  for (std::size_t t = 0; t < small.shape.tail_dim(); ++t) idx.push_back(big.tail_index(p.tail_offset + t));
  return idx;
}

}  // namespace liftlab
