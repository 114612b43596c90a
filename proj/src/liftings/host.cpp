#include "liftlab/liftings/host.hpp"

#include <algorithm>
#include <cmath>

#include "liftlab/error.hpp"
#include "liftlab/graded/calculus.hpp"
#include "liftlab/linalg/decompose.hpp"

namespace liftlab {

GradedOperator ShiftedHost::weighted_shift() const {
  GradedOperator w(shape(), shape());
  w.add_band_steady(1, Matrix{{1.0}});
  w.add_band_entry(1, 0, Matrix{{a - 1.0}});
  w.canonicalize();
  return w;
}

GradedOperator ShiftedHost::op() const {
  if (t0.rows() != 1) throw ShapeMismatch("shifted host: T0 must have one row");
  GradedOperator t = weighted_shift();
  t.add_tail_to_fiber(0, t0);
  t.canonicalize();
  return t;
}

double ShiftedHost::t0_norm() const { return spectral_norm(t0); }
double ShiftedHost::wt0_norm() const { return a * t0_norm(); }

Json to_json(const ShiftedHost& h) {
  Json j;
  j["a"] = h.a;
  j["t0"] = to_json(h.t0);
  return j;
}

ShiftedHost shifted_host_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("a") || !j.contains("t0")) {
    throw ParseError("shifted host needs fields a and t0");
  }
  ShiftedHost h{finite_number(j.at("a"), "a"), matrix_from_json(j.at("t0"))};
  if (h.t0.rows() != 1) throw ShapeMismatch("shifted host: t0 must have one row");
  return h;
}

const char* to_string(CertificateSource s) {
  switch (s) {
    case CertificateSource::User: return "USER";
    case CertificateSource::LyapunovSeries: return "LYAPUNOV_SERIES";
    case CertificateSource::ShiftedHost: return "THM37";
    case CertificateSource::SymmetryAverage: return "EXAMPLE35";
  }
  return "USER";
}

CertificateSource certificate_source_from_string(const std::string& s) {
  if (s == "USER") return CertificateSource::User;
  if (s == "LYAPUNOV_SERIES") return CertificateSource::LyapunovSeries;
  if (s == "THM37") return CertificateSource::ShiftedHost;
  if (s == "EXAMPLE35") return CertificateSource::SymmetryAverage;
  throw ParseError("unknown certificate source '" + s + "'");
}

Matrix as_matrix(const GradedOperator& op) {
  if (!op.in_shape().is_finite() || !op.out_shape().is_finite()) {
    throw Unsupported("as_matrix: operator acts on a space with a backbone");
  }
  return op.tail_to_tail();
}

double graded_size(const GradedOperator& op) {
  if (op.is_finitely_supported()) return graded_norm(op);
  return op.max_abs_entry();
}

double quasi_isometry_defect(const GradedOperator& t) {
  const GradedOperator ts = t.adjoint();
  const GradedOperator tt = ts * t;
  const GradedOperator d = ts * tt * t - tt;
  return graded_size(d) / std::max(1.0, graded_size(tt));
}

double automatic_host_constant(const ShiftedHost& host) {
  const double w = host.wt0_norm();
  return std::sqrt(std::max(2.0 * w + 1.0, w * w + 1.0));
}

Certificate build_shifted_host_certificate(const ShiftedHost& host, std::optional<double> c) {
  if (!(host.a >= 1.0)) {
    throw HypothesesFailed("a >= 1", "shifted host: first weight must be at least 1 (W expansive)");
  }
  const double w = host.wt0_norm();
  if (!c && w == 0.0) throw Degenerate("shifted host: T0 = 0 leaves no room for the constant c");
  const double cc = c.value_or(automatic_host_constant(host));
  if (!(cc * cc > w * w)) {
    throw HypothesesFailed("c^2 > ||W T0||^2",
                           "shifted host: c^2 must exceed ||W T0||^2 so that A - T*AT >= 0 is invertible on N(T*)");
  }
  GradedOperator a = GradedOperator::identity(host.shape());
  a.add_band_entry(0, 0, Matrix{{host.a * host.a - 1.0}});
  a.add_tail_to_tail((cc * cc - 1.0) * Matrix::identity(host.tail_dim()));
  a.canonicalize();
  return {a, CertificateSource::ShiftedHost};
}

}  // namespace liftlab
