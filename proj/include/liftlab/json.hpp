#pragma once

#include <json.hpp>
#include <string>

#include "liftlab/linalg/matrix.hpp"

namespace liftlab {

// Insertion-ordered so reports serialize with a stable field order.
using Json = nlohmann::ordered_json;

// {"rows": n, "cols": m, "data": [[re, im], ...]} row-major; real entries may be plain numbers.
Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json to_json(std::span<const Complex> v);
Vector vector_from_json(const Json& j);

double finite_number(const Json& j, const char* what);
Json parse_json_text(const std::string& text);
// Deterministic text form: two-space indent, trailing newline.
std::string dump(const Json& j);

}  // namespace liftlab
