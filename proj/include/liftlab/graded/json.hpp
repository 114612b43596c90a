#pragma once

#include "liftlab/graded/operator.hpp"
#include "liftlab/json.hpp"

namespace liftlab {

Json to_json(const LiftedSpaceShape& s);
LiftedSpaceShape shape_from_json(const Json& j);

// {"fibers": {"<grade>": [[re, im], ...]}, "tails": [[[re, im], ...], ...]}
Json to_json(const GradedVector& v);
GradedVector graded_vector_from_json(const Json& j, const LiftedSpaceShape& shape);

Json to_json(const GradedOperator& op);
GradedOperator graded_operator_from_json(const Json& j);

Json to_json(const Placement& p);
Placement placement_from_json(const Json& j);

}  // namespace liftlab
