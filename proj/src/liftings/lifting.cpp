#include "liftlab/liftings/lifting.hpp"

#include <algorithm>
#include <limits>

#include "liftlab/error.hpp"
#include "liftlab/graded/json.hpp"
#include "liftlab/linalg/decompose.hpp"

namespace liftlab {

const char* to_string(LiftingKind k) {
  switch (k) {
    case LiftingKind::Natural: return "NATURAL_21";
    case LiftingKind::Quasicontraction: return "QUASICONTRACTION_25";
    case LiftingKind::LeftInvertible: return "LEFTINV_31";
    case LiftingKind::ShiftedHost: return "SHIFTED_HOST_37";
  }
  return "NATURAL_21";
}

LiftingKind lifting_kind_from_string(const std::string& s) {
  if (s == "NATURAL_21") return LiftingKind::Natural;
  if (s == "QUASICONTRACTION_25") return LiftingKind::Quasicontraction;
  if (s == "LEFTINV_31") return LiftingKind::LeftInvertible;
  if (s == "SHIFTED_HOST_37") return LiftingKind::ShiftedHost;
  throw ParseError("unknown lifting kind '" + s + "'");
}

namespace {

Matrix corner_identity(std::size_t n, std::size_t k) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < k; ++i) m(i, i) = 1.0;
  return m;
}

void require_block(const std::map<std::string, Matrix>& blocks, const char* name) {
  if (!blocks.count(name)) throw ParseError(std::string("lifting is missing block '") + name + "'");
}

// Operator on big equal to m from the placed small-window coordinates to the given rows.
GradedOperator scattered(const Matrix& m, const std::vector<std::size_t>& rows,
                         const std::vector<std::size_t>& cols, const Window& big) {
  if (m.rows() != rows.size() || m.cols() != cols.size()) throw ShapeMismatch("coupling block shape");
  Matrix full(big.dim(), big.dim());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) full(rows[i], cols[j]) = m(i, j);
  return GradedOperator::from_window_matrix(full, big, big);
}

bool is_with_backbone(const LiftedSpaceShape& s) { return s.fiber_dim > 0; }

}  // namespace

LiftingOperator::LiftingOperator(LiftingKind kind, GradedOperator base,
                                 std::map<std::string, Matrix> blocks, std::size_t window_grades,
                                 std::optional<InnerLifting> inner)
    : kind_(kind),
      base_(std::move(base)),
      blocks_(std::move(blocks)),
      window_grades_(window_grades),
      inner_(std::move(inner)) {
  if (!(base_.in_shape() == base_.out_shape())) throw NonSquare("lifting: base operator is not square");
  if (!is_with_backbone(base_.in_shape()) && window_grades_ != 0 && kind_ != LiftingKind::LeftInvertible) {
    throw ParseError("lifting: a finite host has no grades");
  }
  assemble();
}

void LiftingOperator::assemble() {
  const LiftedSpaceShape& h = base_.in_shape();
  switch (kind_) {
    case LiftingKind::Natural:
    case LiftingKind::ShiftedHost: {
      require_block(blocks_, "X0");
      require_block(blocks_, "DT");
      const Matrix& x0 = blocks_.at("X0");
      const Matrix& dt = blocks_.at("DT");
      const std::size_t h0 = x0.rows();
      if (x0.cols() != h0 || dt.rows() != h0) throw ParseError("lifting: X0 and DT shapes disagree");
      if ((kind_ == LiftingKind::ShiftedHost) != is_with_backbone(h)) {
        throw WrongKind("lifting: the shifted-host kind needs a host with a backbone, and only it");
      }
      const Window wh = window(h, window_grades_);
      if (dt.cols() != wh.dim()) throw ParseError("lifting: DT does not match the host window");
      isometric_dim_ = h0;
      degenerate_ = h0 == 0;
      if (degenerate_) {
        s_ = base_;
        embedding_ = {0, 0};
        return;
      }
      LiftedSpaceShape k{h0 + h.fiber_dim, {h0}};
      k.tails.insert(k.tails.end(), h.tails.begin(), h.tails.end());
      embedding_ = {h0, h0};
      const Window wk = window(k, window_grades_);
      GradedOperator s(k, k);
      s.add_band_steady(1, corner_identity(k.fiber_dim, h0));
      Matrix x(k.fiber_dim, k.tail_dim());
      x.set_block(0, 0, x0);
      s.add_tail_to_fiber(0, x);
      s += base_.embedded(k, embedding_, k, embedding_);
      std::vector<std::size_t> rows(h0);
      for (std::size_t i = 0; i < h0; ++i) rows[i] = wk.tail_index(i);
      s += scattered(dt, rows, placed_indices(wh, wk, embedding_), wk);
      s_ = std::move(s);
      return;
    }
    case LiftingKind::Quasicontraction: {
      for (const char* name : {"D0", "D1"}) require_block(blocks_, name);
      if (is_with_backbone(h)) throw WrongKind("lifting: this kind needs a finite host");
      const Matrix dtilde = vstack(blocks_.at("D0"), blocks_.at("D1"));
      if (dtilde.cols() != h.tail_dim()) throw ParseError("lifting: D0/D1 do not match the host");
      const std::size_t e = dtilde.rows();
      isometric_dim_ = e;
      degenerate_ = e == 0;
      embedding_ = {0, 0};
      if (degenerate_) {
        s_ = base_;
        return;
      }
      const LiftedSpaceShape k{e, h.tails};
      GradedOperator s = GradedOperator::shift(k);
      s.add_tail_to_fiber(0, dtilde);
      s.add_tail_to_tail(base_.tail_to_tail());
      s.canonicalize();
      s_ = std::move(s);
      return;
    }
    case LiftingKind::LeftInvertible: {
      require_block(blocks_, "G0");
      if (!inner_) throw ParseError("lifting: the left invertible kind needs its inner lifting");
      const GradedOperator& q = inner_->q;
      const LiftedSpaceShape& m = q.in_shape();
      if (!(q.out_shape() == m)) throw NonSquare("lifting: inner operator is not square");
      if (!is_with_backbone(m) && window_grades_ != 0) throw ParseError("lifting: a finite space has no grades");
      const Matrix& g0 = blocks_.at("G0");
      const std::size_t kd = g0.rows();
      const Window wm = window(m, window_grades_);
      if (g0.cols() != wm.dim()) throw ParseError("lifting: G0 does not match the window of M");
      const Placement p = inner_->host;
      if (p.fiber_offset + h.fiber_dim > m.fiber_dim || p.tail_offset + h.tail_dim() > m.tail_dim()) {
        throw ShapeMismatch("lifting: host does not fit inside M");
      }
      isometric_dim_ = kd;
      degenerate_ = kd == 0;
      if (degenerate_) {
        s_ = q;
        embedding_ = p;
        return;
      }
      const LiftedSpaceShape k{kd + m.fiber_dim, m.tails};
      const Placement pm{kd, 0};
      embedding_ = {kd + p.fiber_offset, p.tail_offset};
      const Window wk = window(k, std::max<std::size_t>(window_grades_, 1));
      GradedOperator s(k, k);
      s.add_band_steady(1, corner_identity(k.fiber_dim, kd));
      s += q.embedded(k, pm, k, pm);
      std::vector<std::size_t> rows(kd);
      for (std::size_t i = 0; i < kd; ++i) rows[i] = wk.fiber_index(0, i);
      const Window wm_big = window(m, wk.grades);
      const std::vector<std::size_t> all = placed_indices(wm_big, wk, pm);
      // G0 is given on the window of M; pad it to the wider window if needed.
      Matrix g0_big(kd, wm_big.dim());
      const std::vector<std::size_t> map_small = placed_indices(wm, wm_big, {0, 0});
      for (std::size_t i = 0; i < kd; ++i)
        for (std::size_t j = 0; j < wm.dim(); ++j) g0_big(i, map_small[j]) = g0(i, j);
      s += scattered(g0_big, rows, all, wk);
      s_ = std::move(s);
      return;
    }
  }
}

const Matrix& LiftingOperator::block(const std::string& name) const {
  auto it = blocks_.find(name);
  if (it == blocks_.end()) throw InputError("lifting has no block '" + name + "'");
  return it->second;
}

const LiftedSpaceShape& LiftingOperator::generator_space() const {
  if (kind_ == LiftingKind::LeftInvertible) return inner_->q.in_shape();
  return host();
}

Placement LiftingOperator::generator_embedding() const {
  if (kind_ == LiftingKind::LeftInvertible) return {isometric_dim_, 0};
  return embedding_;
}

GradedOperator LiftingOperator::host_inclusion() const {
  return GradedOperator::inclusion(host(), shape(), embedding_);
}

GradedVector LiftingOperator::embed_host(const GradedVector& h) const {
  return host_inclusion().apply(h);
}

GradedVector LiftingOperator::restrict_to_host(const GradedVector& k) const {
  return host_inclusion().adjoint().apply(k);
}

std::vector<GramBlock> LiftingOperator::gram_blocks() const {
  std::vector<GramBlock> out;
  const LiftedSpaceShape& h = host();
  switch (kind_) {
    case LiftingKind::Natural:
    case LiftingKind::ShiftedHost: {
      const Matrix& x0 = block("X0");
      const Matrix& dt = block("DT");
      const Window wh = window(h, window_grades_);
      GradedOperator a = base_.adjoint() * base_;
      a += GradedOperator::from_window_matrix(dt.adjoint() * dt, wh, wh);
      if (x0.rows() > 0) {
        out.push_back({"H1", GradedOperator::from_matrix(Matrix::identity(x0.rows()))});
        out.push_back({"H0", GradedOperator::from_matrix(x0.adjoint() * x0)});
      }
      out.push_back({"H", std::move(a)});
      break;
    }
    case LiftingKind::Quasicontraction: {
      const Matrix dtilde = vstack(block("D0"), block("D1"));
      const Matrix t = base_.tail_to_tail();
      if (dtilde.rows() > 0) out.push_back({"L", GradedOperator::from_matrix(Matrix::identity(dtilde.rows()))});
      out.push_back({"H", GradedOperator::from_matrix(dtilde.adjoint() * dtilde + t.adjoint() * t)});
      break;
    }
    case LiftingKind::LeftInvertible: {
      const GradedOperator& q = inner_->q;
      const Matrix& g0 = block("G0");
      const Window wm = window(q.in_shape(), window_grades_);
      GradedOperator mq = q.adjoint() * q;
      mq += GradedOperator::from_window_matrix(g0.adjoint() * g0, wm, wm);
      if (g0.rows() > 0) out.push_back({"L", GradedOperator::from_matrix(Matrix::identity(g0.rows()))});
      out.push_back({"M", std::move(mq)});
      break;
    }
  }
  return out;
}

double gram_min_eigenvalue(const std::vector<GramBlock>& blocks) {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& b : blocks) {
    if (b.block.in_shape().fiber_dim == 0 && b.block.in_shape().tail_dim() == 0) continue;
    lo = std::min(lo, graded_min_eigenvalue(b.block));
  }
  return lo;
}

MinimalityResult minimal_restriction(const LiftingOperator& s, std::size_t max_grade) {
  const LiftedSpaceShape& k = s.shape();
  const LiftedSpaceShape& gs = s.generator_space();
  const Placement p = s.generator_embedding();
  const GradedOperator j = GradedOperator::inclusion(gs, k, p);
  const std::size_t g = k.fiber_dim > 0 ? max_grade : 0;
  const Window wg = window(gs, gs.fiber_dim > 0 ? g : 0);
  const Window wk = window(k, g);

  std::vector<GradedVector> current;
  for (std::size_t i = 0; i < wg.dim(); ++i) current.push_back(j.apply(wg.basis_vector(i)));
  std::vector<Vector> columns;
  const std::size_t powers = k.fiber_dim > 0 ? g + 1 : 1;
  for (std::size_t n = 0; n <= powers; ++n) {
    for (const auto& v : current) columns.push_back(wk.truncate(v));
    if (n < powers) current = s.op().apply_all(current);
  }
  const Matrix stacked = Matrix::from_columns(wk.dim(), columns);
  MinimalityResult r;
  r.window_dim = wk.dim();
  const double scale = std::max(1.0, spectral_norm(stacked));
  r.span = span_of(stacked, rank_tolerance_for_scale(stacked, scale) * 1e3);
  r.minimal = r.span.dim() == r.window_dim;
  return r;
}

Json to_json(const LiftingOperator& s) {
  Json blocks = Json::object();
  for (const auto& [name, m] : s.blocks()) blocks[name] = to_json(m);
  Json j;
  j["kind"] = to_string(s.kind());
  j["shape"] = to_json(s.shape());
  j["host"] = to_json(s.host());
  j["embedding"] = to_json(s.embedding());
  j["window_grades"] = s.window_grades();
  j["isometric_dim"] = s.isometric_dim();
  j["degenerate"] = s.degenerate();
  j["blocks"] = std::move(blocks);
  j["base"] = to_json(s.base());
  if (s.inner()) {
    Json in;
    in["operator"] = to_json(s.inner()->q);
    in["embedding"] = to_json(s.inner()->host);
    j["inner"] = std::move(in);
  }
  return j;
}

LiftingOperator lifting_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("lifting must be an object");
  for (const char* f : {"kind", "blocks", "base", "window_grades"}) {
    if (!j.contains(f)) throw ParseError(std::string("lifting needs field '") + f + "'");
  }
  if (!j["kind"].is_string()) throw ParseError("lifting kind must be a string");
  if (!j["window_grades"].is_number_unsigned()) throw ParseError("window_grades must be a count");
  if (!j["blocks"].is_object()) throw ParseError("lifting blocks must be an object");
  std::map<std::string, Matrix> blocks;
  for (const auto& [name, m] : j["blocks"].items()) blocks[name] = matrix_from_json(m);
  std::optional<InnerLifting> inner;
  if (j.contains("inner")) {
    const Json& in = j["inner"];
    if (!in.is_object() || !in.contains("operator") || !in.contains("embedding")) {
      throw ParseError("inner lifting needs 'operator' and 'embedding'");
    }
    inner = InnerLifting{graded_operator_from_json(in["operator"]), placement_from_json(in["embedding"])};
  }
  LiftingOperator s;
  try {
    s = LiftingOperator(lifting_kind_from_string(j["kind"].get<std::string>()),
                        graded_operator_from_json(j["base"]), std::move(blocks),
                        j["window_grades"].get<std::size_t>(), std::move(inner));
  } catch (const ShapeMismatch& e) {
    throw ParseError(std::string("lifting blocks: ") + e.what());
  }
  if (j.contains("shape") && !(shape_from_json(j["shape"]) == s.shape())) {
    throw ParseError("lifting shape does not match its blocks");
  }
  if (j.contains("embedding") && !(placement_from_json(j["embedding"]) == s.embedding())) {
    throw ParseError("lifting embedding does not match its blocks");
  }
  return s;
}

}  // namespace liftlab
