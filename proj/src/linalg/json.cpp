#include "liftlab/json.hpp"

#include <cmath>

#include "liftlab/error.hpp"

namespace liftlab {

namespace {

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {finite_number(j, "entry"), 0.0};
  if (!j.is_array() || j.size() != 2) throw ParseError("complex entry must be [re, im] or a real number");
  return {finite_number(j[0], "real part"), finite_number(j[1], "imaginary part")};
}

std::size_t count_field(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_unsigned()) {
    if (j.contains(key) && j[key].is_number_integer() && j[key].get<long long>() >= 0) {
      return j[key].get<std::size_t>();
    }
    throw ParseError(std::string("matrix field '") + key + "' must be a non-negative integer");
  }
  return j[key].get<std::size_t>();
}

}  // namespace

double finite_number(const Json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + " is not a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw ParseError(std::string(what) + " is not finite");
  return x;
}

Json to_json(const Matrix& m) {
  Json data = Json::array();
  for (const auto& z : m.entries()) data.push_back(complex_to_json(z));
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["data"] = std::move(data);
  return j;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("matrix must be a JSON object");
  const std::size_t rows = count_field(j, "rows");
  const std::size_t cols = count_field(j, "cols");
  if (!j.contains("data") || !j["data"].is_array()) throw ParseError("matrix needs a data array");
  const Json& data = j["data"];
  if (data.size() != rows * cols) throw ParseError("matrix data length does not match rows*cols");
  std::vector<Complex> entries;
  entries.reserve(data.size());
  for (const auto& e : data) entries.push_back(complex_from_json(e));
  return Matrix(rows, cols, std::move(entries));
}

Json to_json(std::span<const Complex> v) {
  Json a = Json::array();
  for (const auto& z : v) a.push_back(complex_to_json(z));
  return a;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("vector must be an array of [re, im]");
  Vector v;
  v.reserve(j.size());
  for (const auto& e : j) v.push_back(complex_from_json(e));
  return v;
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace liftlab
