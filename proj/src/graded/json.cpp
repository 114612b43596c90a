#include "liftlab/graded/json.hpp"

#include <string>

#include "liftlab/error.hpp"

namespace liftlab {

namespace {

std::size_t unsigned_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 0) {
    throw ParseError(std::string("field '") + key + "' must be a non-negative integer");
  }
  return j[key].get<std::size_t>();
}

const Json& array_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_array()) {
    throw ParseError(std::string("field '") + key + "' must be an array");
  }
  return j[key];
}

std::vector<Matrix> matrices_from_json(const Json& a) {
  std::vector<Matrix> out;
  for (const auto& m : a) out.push_back(matrix_from_json(m));
  return out;
}

Json matrices_to_json(const std::vector<Matrix>& ms) {
  Json a = Json::array();
  for (const auto& m : ms) a.push_back(to_json(m));
  return a;
}

}  // namespace

Json to_json(const LiftedSpaceShape& s) {
  Json j;
  j["fiber_dim"] = s.fiber_dim;
  j["tails"] = s.tails;
  return j;
}

LiftedSpaceShape shape_from_json(const Json& j) {
  LiftedSpaceShape s;
  s.fiber_dim = unsigned_field(j, "fiber_dim");
  for (const auto& t : array_field(j, "tails")) {
    if (!t.is_number_integer() || t.get<long long>() < 0) throw ParseError("tail sizes must be non-negative integers");
    s.tails.push_back(t.get<std::size_t>());
  }
  return s;
}

Json to_json(const GradedVector& v) {
  Json fibers = Json::object();
  for (const auto& [g, x] : v.fibers()) fibers[std::to_string(g)] = to_json(x);
  Json tails = Json::array();
  for (std::size_t b = 0; b < v.shape().tails.size(); ++b) tails.push_back(to_json(v.tail_block(b)));
  Json j;
  j["fibers"] = std::move(fibers);
  j["tails"] = std::move(tails);
  return j;
}

GradedVector graded_vector_from_json(const Json& j, const LiftedSpaceShape& shape) {
  if (!j.is_object() || !j.contains("fibers") || !j["fibers"].is_object()) {
    throw ParseError("graded vector needs a 'fibers' object");
  }
  GradedVector v(shape);
  for (const auto& [key, block] : j["fibers"].items()) {
    std::size_t pos = 0;
    unsigned long g = 0;
    try {
      g = std::stoul(key, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != key.size() || key.empty()) throw ParseError("fiber grade keys must be non-negative integers");
    v.add_fiber(g, vector_from_json(block));
  }
  const Json& tails = array_field(j, "tails");
  if (tails.size() != shape.tails.size()) throw ParseError("graded vector tail count does not match shape");
  for (std::size_t b = 0; b < tails.size(); ++b) {
    Vector x = vector_from_json(tails[b]);
    if (x.size() != shape.tails[b]) throw ParseError("graded vector tail length does not match shape");
    v.add_tail(x, shape.tail_offset(b));
  }
  return v;
}

Json to_json(const GradedOperator& op) {
  Json bands = Json::array();
  for (const auto& [k, b] : op.bands()) {
    Json jb;
    jb["offset"] = k;
    jb["head"] = matrices_to_json(b.head);
    jb["steady"] = to_json(b.steady);
    bands.push_back(std::move(jb));
  }
  Json j;
  j["in"] = to_json(op.in_shape());
  j["out"] = to_json(op.out_shape());
  j["bands"] = std::move(bands);
  j["tail_to_fiber"] = matrices_to_json(op.tail_to_fiber());
  j["fiber_to_tail"] = matrices_to_json(op.fiber_to_tail());
  j["tail_to_tail"] = to_json(op.tail_to_tail());
  return j;
}

GradedOperator graded_operator_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("graded operator must be an object");
  if (!j.contains("in") || !j.contains("out")) throw ParseError("graded operator needs 'in' and 'out'");
  GradedOperator op(shape_from_json(j["in"]), shape_from_json(j["out"]));
  try {
    for (const auto& jb : array_field(j, "bands")) {
      if (!jb.contains("offset") || !jb["offset"].is_number_integer()) throw ParseError("band offset");
      if (!jb.contains("steady")) throw ParseError("band needs 'steady'");
      Band b{matrices_from_json(array_field(jb, "head")), matrix_from_json(jb["steady"])};
      op.set_band(jb["offset"].get<int>(), std::move(b));
    }
    const auto tf = matrices_from_json(array_field(j, "tail_to_fiber"));
    for (std::size_t n = 0; n < tf.size(); ++n) op.add_tail_to_fiber(n, tf[n]);
    const auto ft = matrices_from_json(array_field(j, "fiber_to_tail"));
    for (std::size_t n = 0; n < ft.size(); ++n) op.add_fiber_to_tail(n, ft[n]);
    if (!j.contains("tail_to_tail")) throw ParseError("graded operator needs 'tail_to_tail'");
    op.add_tail_to_tail(matrix_from_json(j["tail_to_tail"]));
  } catch (const ShapeMismatch& e) {
    throw ParseError(std::string("graded operator blocks: ") + e.what());
  }
  op.canonicalize();
  return op;
}

Json to_json(const Placement& p) {
  Json j;
  j["fiber_offset"] = p.fiber_offset;
  j["tail_offset"] = p.tail_offset;
  return j;
}

Placement placement_from_json(const Json& j) {
  return {unsigned_field(j, "fiber_offset"), unsigned_field(j, "tail_offset")};
}

}  // namespace liftlab
