#include "liftlab/graded/operator.hpp"

#include <algorithm>

#include "liftlab/error.hpp"

namespace liftlab {

namespace {

bool is_zero_matrix(const Matrix& m) { return max_abs(m) == 0.0; }

// dst += src as bands (head entries beyond either head fall back to steady).
void merge_band(Band& dst, const Band& src) {
  const std::size_t h = std::max(dst.head.size(), src.head.size());
  std::vector<Matrix> head;
  head.reserve(h);
  for (std::size_t n = 0; n < h; ++n) head.push_back(dst.at(n) + src.at(n));
  dst.head = std::move(head);
  dst.steady += src.steady;
}

void add_indexed(std::vector<Matrix>& v, std::size_t n, const Matrix& m, std::size_t rows,
                 std::size_t cols) {
  if (m.rows() != rows || m.cols() != cols) throw ShapeMismatch("coupling block shape");
  while (v.size() <= n) v.emplace_back(rows, cols);
  v[n] += m;
}

Matrix placed(const Matrix& m, std::size_t rows, std::size_t cols, std::size_t r0, std::size_t c0) {
  Matrix big(rows, cols);
  big.set_block(r0, c0, m);
  return big;
}

}  // namespace

GradedOperator::GradedOperator(LiftedSpaceShape in, LiftedSpaceShape out)
    : in_(std::move(in)), out_(std::move(out)), tail_to_tail_(out_.tail_dim(), in_.tail_dim()) {}

GradedOperator GradedOperator::identity(const LiftedSpaceShape& shape) {
  GradedOperator r(shape, shape);
  r.add_band_steady(0, Matrix::identity(shape.fiber_dim));
  r.add_tail_to_tail(Matrix::identity(shape.tail_dim()));
  return r;
}

GradedOperator GradedOperator::shift(const LiftedSpaceShape& shape) {
  GradedOperator r(shape, shape);
  r.add_band_steady(1, Matrix::identity(shape.fiber_dim));
  return r;
}

GradedOperator GradedOperator::from_matrix(const Matrix& m) {
  GradedOperator r(finite_shape(m.cols()), finite_shape(m.rows()));
  r.add_tail_to_tail(m);
  r.canonicalize();
  return r;
}

GradedOperator GradedOperator::from_window_matrix(const Matrix& m, const Window& in,
                                                  const Window& out) {
  if (m.rows() != out.dim() || m.cols() != in.dim()) throw ShapeMismatch("window matrix shape");
  GradedOperator r(in.shape, out.shape);
  const std::size_t ei = in.shape.fiber_dim, eo = out.shape.fiber_dim;
  const std::size_t ti = in.shape.tail_dim(), to = out.shape.tail_dim();
  auto add = [](const Matrix& b, auto&& f) {
    if (!is_zero_matrix(b)) f(b);
  };
  for (std::size_t n = 0; n < in.grades && ei > 0; ++n) {
    for (std::size_t g = 0; g < out.grades && eo > 0; ++g) {
      add(m.block(out.fiber_index(g, 0), in.fiber_index(n, 0), eo, ei), [&](const Matrix& b) {
        r.add_band_entry(static_cast<int>(g) - static_cast<int>(n), n, b);
      });
    }
    add(m.block(out.tail_index(0), in.fiber_index(n, 0), to, ei),
        [&](const Matrix& b) { r.add_fiber_to_tail(n, b); });
  }
  for (std::size_t g = 0; g < out.grades && eo > 0; ++g) {
    add(m.block(out.fiber_index(g, 0), in.tail_index(0), eo, ti),
        [&](const Matrix& b) { r.add_tail_to_fiber(g, b); });
  }
  r.add_tail_to_tail(m.block(out.tail_index(0), in.tail_index(0), to, ti));
  r.canonicalize();
  return r;
}

GradedOperator GradedOperator::identity_outside(const Matrix& m, const Window& w) {
  GradedOperator r = from_window_matrix(m, w, w);
  if (w.shape.fiber_dim > 0) {
    Band beyond;
    beyond.head.assign(w.grades, Matrix(w.shape.fiber_dim, w.shape.fiber_dim));
    beyond.steady = Matrix::identity(w.shape.fiber_dim);
    merge_band(r.band(0), beyond);
  }
  r.canonicalize();
  return r;
}

GradedOperator GradedOperator::inclusion(const LiftedSpaceShape& small,
                                         const LiftedSpaceShape& big, Placement p) {
  if (p.fiber_offset + small.fiber_dim > big.fiber_dim ||
      p.tail_offset + small.tail_dim() > big.tail_dim()) {
    throw ShapeMismatch("inclusion: placement does not fit");
  }
  GradedOperator r(small, big);
  r.add_band_steady(0, placed(Matrix::identity(small.fiber_dim), big.fiber_dim, small.fiber_dim,
                              p.fiber_offset, 0));
  r.add_tail_to_tail(placed(Matrix::identity(small.tail_dim()), big.tail_dim(), small.tail_dim(),
                            p.tail_offset, 0));
  r.canonicalize();
  return r;
}

GradedOperator GradedOperator::coordinate_projection(const LiftedSpaceShape& shape,
                                                     std::size_t first, std::size_t count,
                                                     std::size_t tail_first,
                                                     std::size_t tail_count) {
  if (first + count > shape.fiber_dim || tail_first + tail_count > shape.tail_dim()) {
    throw ShapeMismatch("coordinate_projection range");
  }
  GradedOperator r(shape, shape);
  Matrix pf(shape.fiber_dim, shape.fiber_dim);
  for (std::size_t i = first; i < first + count; ++i) pf(i, i) = 1.0;
  Matrix pt(shape.tail_dim(), shape.tail_dim());
  for (std::size_t i = tail_first; i < tail_first + tail_count; ++i) pt(i, i) = 1.0;
  r.add_band_steady(0, pf);
  r.add_tail_to_tail(pt);
  r.canonicalize();
  return r;
}

Band& GradedOperator::band(int offset) {
  auto it = bands_.find(offset);
  if (it == bands_.end()) {
    it = bands_.emplace(offset, Band{{}, Matrix(out_.fiber_dim, in_.fiber_dim)}).first;
  }
  return it->second;
}

void GradedOperator::set_band(int offset, Band b) {
  auto fits = [&](const Matrix& m) { return m.rows() == out_.fiber_dim && m.cols() == in_.fiber_dim; };
  if (!fits(b.steady) || !std::all_of(b.head.begin(), b.head.end(), fits)) {
    throw ShapeMismatch("band matrices do not match the fiber dimensions");
  }
  if (in_.fiber_dim == 0 || out_.fiber_dim == 0) return;
  bands_[offset] = std::move(b);
}

void GradedOperator::add_band_entry(int offset, std::size_t source_grade, const Matrix& m) {
  if (m.rows() != out_.fiber_dim || m.cols() != in_.fiber_dim) throw ShapeMismatch("band entry shape");
  if (in_.fiber_dim == 0 || out_.fiber_dim == 0) return;
  Band& b = band(offset);
  while (b.head.size() <= source_grade) b.head.push_back(b.steady);
  b.head[source_grade] += m;
}

void GradedOperator::add_band_steady(int offset, const Matrix& m) {
  if (m.rows() != out_.fiber_dim || m.cols() != in_.fiber_dim) throw ShapeMismatch("band steady shape");
  if (in_.fiber_dim == 0 || out_.fiber_dim == 0) return;
  Band& b = band(offset);
  for (auto& h : b.head) h += m;
  b.steady += m;
}

void GradedOperator::add_tail_to_fiber(std::size_t grade, const Matrix& m) {
  if (out_.fiber_dim == 0 && m.rows() == 0) return;
  add_indexed(tail_to_fiber_, grade, m, out_.fiber_dim, in_.tail_dim());
}

void GradedOperator::add_fiber_to_tail(std::size_t grade, const Matrix& m) {
  if (in_.fiber_dim == 0 && m.cols() == 0) return;
  add_indexed(fiber_to_tail_, grade, m, out_.tail_dim(), in_.fiber_dim);
}

void GradedOperator::add_tail_to_tail(const Matrix& m) { tail_to_tail_ += m; }

GradedVector GradedOperator::apply(const GradedVector& v) const {
  if (!(v.shape() == in_)) throw ShapeMismatch("apply: vector is not in the operator domain");
  GradedVector r(out_);
  for (const auto& [n, x] : v.fibers()) {
    for (const auto& [k, b] : bands_) {
      const long target = static_cast<long>(n) + k;
      if (target < 0) continue;
      r.add_fiber(static_cast<std::size_t>(target), b.at(n) * x);
    }
    if (n < fiber_to_tail_.size()) r.add_tail(fiber_to_tail_[n] * x);
  }
  r.add_tail(tail_to_tail_ * v.tail());
  for (std::size_t m = 0; m < tail_to_fiber_.size(); ++m) r.add_fiber(m, tail_to_fiber_[m] * v.tail());
  return r;
}

std::vector<GradedVector> GradedOperator::apply_all(const std::vector<GradedVector>& vs) const {
  std::vector<GradedVector> out(vs.size());
  const long n = static_cast<long>(vs.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = apply(vs[static_cast<std::size_t>(i)]);
  return out;
}

std::vector<GradedVector> apply_all_serial(const GradedOperator& op,
                                           const std::vector<GradedVector>& vs) {
  std::vector<GradedVector> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(op.apply(v));
  return out;
}

GradedOperator GradedOperator::adjoint() const {
  GradedOperator r(out_, in_);
  for (const auto& [k, b] : bands_) {
    Band nb;
    nb.steady = b.steady.adjoint();
    const Matrix zero(in_.fiber_dim, out_.fiber_dim);
    if (k >= 0) {
      const std::size_t shift = static_cast<std::size_t>(k);
      for (std::size_t m = 0; m < b.head.size() + shift; ++m) {
        nb.head.push_back(m < shift ? zero : b.head[m - shift].adjoint());
      }
    } else {
      const std::size_t shift = static_cast<std::size_t>(-k);
      for (std::size_t m = 0; m + shift < b.head.size(); ++m) nb.head.push_back(b.head[m + shift].adjoint());
    }
    merge_band(r.band(-k), nb);
  }
  for (std::size_t n = 0; n < tail_to_fiber_.size(); ++n) r.add_fiber_to_tail(n, tail_to_fiber_[n].adjoint());
  for (std::size_t n = 0; n < fiber_to_tail_.size(); ++n) r.add_tail_to_fiber(n, fiber_to_tail_[n].adjoint());
  r.tail_to_tail_ = tail_to_tail_.adjoint();
  r.canonicalize();
  return r;
}

GradedOperator operator*(const GradedOperator& p, const GradedOperator& q) {
  if (!(q.out_ == p.in_)) throw ShapeMismatch("compose: intermediate spaces differ");
  GradedOperator r(q.in_, p.out_);
  const bool fiber_path = q.in_.fiber_dim > 0 && q.out_.fiber_dim > 0 && p.out_.fiber_dim > 0;
  if (fiber_path) {
    for (const auto& [kq, bq] : q.bands_)
      for (const auto& [kp, bp] : p.bands_) {
        const long hq = static_cast<long>(bq.head.size());
        const long hp = static_cast<long>(bp.head.size());
        const long h = std::max({hq, hp - kq, static_cast<long>(-kq), 0L});
        Band t;
        t.steady = bp.steady * bq.steady;
        for (long n = 0; n < h; ++n) {
          const long m = n + kq;
          t.head.push_back(m < 0 ? Matrix(p.out_.fiber_dim, q.in_.fiber_dim)
                                 : bp.at(static_cast<std::size_t>(m)) * bq.at(static_cast<std::size_t>(n)));
        }
        merge_band(r.band(kq + kp), t);
      }
  }
  // fiber -> tail -> fiber
  if (q.in_.fiber_dim > 0 && p.out_.fiber_dim > 0) {
    for (std::size_t n = 0; n < q.fiber_to_tail_.size(); ++n)
      for (std::size_t m = 0; m < p.tail_to_fiber_.size(); ++m)
        r.add_band_entry(static_cast<int>(m) - static_cast<int>(n), n,
                         p.tail_to_fiber_[m] * q.fiber_to_tail_[n]);
  }
  // fiber -> fiber -> tail
  if (q.in_.fiber_dim > 0 && q.out_.fiber_dim > 0) {
    for (const auto& [kq, bq] : q.bands_)
      for (std::size_t m = 0; m < p.fiber_to_tail_.size(); ++m) {
        const long n = static_cast<long>(m) - kq;
        if (n < 0) continue;
        r.add_fiber_to_tail(static_cast<std::size_t>(n), p.fiber_to_tail_[m] * bq.at(static_cast<std::size_t>(n)));
      }
  }
  // fiber -> tail -> tail
  for (std::size_t n = 0; n < q.fiber_to_tail_.size(); ++n)
    r.add_fiber_to_tail(n, p.tail_to_tail_ * q.fiber_to_tail_[n]);
  // tail -> fiber -> fiber
  if (q.out_.fiber_dim > 0 && p.out_.fiber_dim > 0) {
    for (std::size_t m = 0; m < q.tail_to_fiber_.size(); ++m)
      for (const auto& [kp, bp] : p.bands_) {
        const long target = static_cast<long>(m) + kp;
        if (target < 0) continue;
        r.add_tail_to_fiber(static_cast<std::size_t>(target), bp.at(m) * q.tail_to_fiber_[m]);
      }
  }
  // tail -> tail -> fiber
  for (std::size_t m = 0; m < p.tail_to_fiber_.size(); ++m)
    r.add_tail_to_fiber(m, p.tail_to_fiber_[m] * q.tail_to_tail_);
  // tail -> fiber -> tail
  for (std::size_t m = 0; m < std::min(q.tail_to_fiber_.size(), p.fiber_to_tail_.size()); ++m)
    r.add_tail_to_tail(p.fiber_to_tail_[m] * q.tail_to_fiber_[m]);
  r.add_tail_to_tail(p.tail_to_tail_ * q.tail_to_tail_);
  r.canonicalize();
  return r;
}

GradedOperator GradedOperator::embedded(const LiftedSpaceShape& big_in, Placement in,
                                        const LiftedSpaceShape& big_out, Placement out) const {
  if (in.fiber_offset + in_.fiber_dim > big_in.fiber_dim ||
      in.tail_offset + in_.tail_dim() > big_in.tail_dim() ||
      out.fiber_offset + out_.fiber_dim > big_out.fiber_dim ||
      out.tail_offset + out_.tail_dim() > big_out.tail_dim()) {
    throw ShapeMismatch("embedded: placement does not fit");
  }
  GradedOperator r(big_in, big_out);
  const std::size_t ebi = big_in.fiber_dim, ebo = big_out.fiber_dim;
  const std::size_t tbi = big_in.tail_dim(), tbo = big_out.tail_dim();
  for (const auto& [k, b] : bands_) {
    Band nb;
    nb.steady = placed(b.steady, ebo, ebi, out.fiber_offset, in.fiber_offset);
    for (const auto& h : b.head) nb.head.push_back(placed(h, ebo, ebi, out.fiber_offset, in.fiber_offset));
    merge_band(r.band(k), nb);
  }
  for (std::size_t n = 0; n < tail_to_fiber_.size(); ++n)
    r.add_tail_to_fiber(n, placed(tail_to_fiber_[n], ebo, tbi, out.fiber_offset, in.tail_offset));
  for (std::size_t n = 0; n < fiber_to_tail_.size(); ++n)
    r.add_fiber_to_tail(n, placed(fiber_to_tail_[n], tbo, ebi, out.tail_offset, in.fiber_offset));
  r.add_tail_to_tail(placed(tail_to_tail_, tbo, tbi, out.tail_offset, in.tail_offset));
  r.canonicalize();
  return r;
}

bool GradedOperator::is_finitely_supported(double tol) const {
  return std::all_of(bands_.begin(), bands_.end(),
                     [&](const auto& kv) { return max_abs(kv.second.steady) <= tol; });
}

std::size_t GradedOperator::support_grades() const {
  std::size_t g = std::max(tail_to_fiber_.size(), fiber_to_tail_.size());
  for (const auto& [k, b] : bands_)
    for (std::size_t n = 0; n < b.head.size(); ++n) {
      if (is_zero_matrix(b.head[n])) continue;
      const long target = static_cast<long>(n) + k;
      if (target < 0) continue;
      g = std::max({g, n + 1, static_cast<std::size_t>(target) + 1});
    }
  return g;
}

std::size_t GradedOperator::steady_start() const {
  std::size_t s = std::max(tail_to_fiber_.size(), fiber_to_tail_.size());
  for (const auto& [k, b] : bands_) {
    s = std::max(s, b.head.size());
    // Negative bands have no valid source below -k; count those grades as unsettled.
    if (k < 0 && !is_zero_matrix(b.steady)) s = std::max(s, static_cast<std::size_t>(-k));
  }
  return s;
}

double GradedOperator::max_abs_entry() const {
  double m = max_abs(tail_to_tail_);
  for (const auto& [k, b] : bands_) {
    m = std::max(m, max_abs(b.steady));
    for (const auto& h : b.head) m = std::max(m, max_abs(h));
  }
  for (const auto& x : tail_to_fiber_) m = std::max(m, max_abs(x));
  for (const auto& x : fiber_to_tail_) m = std::max(m, max_abs(x));
  return m;
}

Matrix GradedOperator::compress(const Window& in, const Window& out) const {
  if (!(in.shape == in_) || !(out.shape == out_)) throw ShapeMismatch("compress: window shapes");
  Matrix m(out.dim(), in.dim());
  for (std::size_t j = 0; j < in.dim(); ++j) m.set_column(j, out.truncate(apply(in.basis_vector(j))));
  return m;
}

void GradedOperator::require_same_shapes(const GradedOperator& o, const char* op) const {
  if (!(in_ == o.in_) || !(out_ == o.out_)) throw ShapeMismatch(std::string(op) + ": operator shapes differ");
}

GradedOperator& GradedOperator::operator+=(const GradedOperator& o) {
  require_same_shapes(o, "operator+");
  for (const auto& [k, b] : o.bands_) merge_band(band(k), b);
  for (std::size_t n = 0; n < o.tail_to_fiber_.size(); ++n) add_tail_to_fiber(n, o.tail_to_fiber_[n]);
  for (std::size_t n = 0; n < o.fiber_to_tail_.size(); ++n) add_fiber_to_tail(n, o.fiber_to_tail_[n]);
  tail_to_tail_ += o.tail_to_tail_;
  canonicalize();
  return *this;
}

GradedOperator& GradedOperator::operator-=(const GradedOperator& o) {
  return *this += Complex(-1.0) * o;
}

GradedOperator& GradedOperator::operator*=(Complex s) {
  for (auto& [k, b] : bands_) {
    b.steady *= s;
    for (auto& h : b.head) h *= s;
  }
  for (auto& x : tail_to_fiber_) x *= s;
  for (auto& x : fiber_to_tail_) x *= s;
  tail_to_tail_ *= s;
  canonicalize();
  return *this;
}

void GradedOperator::canonicalize() {
  for (auto it = bands_.begin(); it != bands_.end();) {
    Band& b = it->second;
    // Source grades below -offset never reach a target; store them as steady.
    if (it->first < 0) {
      const std::size_t dead = std::min(b.head.size(), static_cast<std::size_t>(-it->first));
      for (std::size_t n = 0; n < dead; ++n) b.head[n] = b.steady;
    }
    while (!b.head.empty() && b.head.back() == b.steady) b.head.pop_back();
    const bool empty = b.head.empty() && is_zero_matrix(b.steady);
    it = empty ? bands_.erase(it) : std::next(it);
  }
  while (!tail_to_fiber_.empty() && is_zero_matrix(tail_to_fiber_.back())) tail_to_fiber_.pop_back();
  while (!fiber_to_tail_.empty() && is_zero_matrix(fiber_to_tail_.back())) fiber_to_tail_.pop_back();
}

GradedOperator operator+(GradedOperator a, const GradedOperator& b) { return a += b; }
GradedOperator operator-(GradedOperator a, const GradedOperator& b) { return a -= b; }
GradedOperator operator*(Complex s, GradedOperator a) { return a *= s; }

}  // namespace liftlab
