#pragma once

#include <json.hpp>

#include "invariety/polycore/multipoly.hpp"

namespace invariety::poly {

// {"symbols": [...], "terms": [{"exp": [...], "coef": "<decimal>"}, ...]}
// Terms are written in descending graded-lex order.
nlohmann::json to_json(const MultiPoly& f);
MultiPoly from_json(const nlohmann::json& j);

}  // namespace invariety::poly
