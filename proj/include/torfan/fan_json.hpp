// Fan <-> JSON: {"name"?: string, "dim": n, "rays": [[int...]], "max_cones": [[index...]]}
#pragma once

#include "torfan/fan.hpp"

#include <nlohmann/json.hpp>

namespace torfan {

using Json = nlohmann::json;

/// Throws Error with a message naming the offending field. Rays must be
/// nonzero and primitive, indices in range.
Fan fan_from_json(const Json& j);

Json fan_to_json(const Fan& f);

Json vector_to_json(const IntVector& v);
Json matrix_to_json(const IntMatrix& m);  // list of rows
Json cone_to_json(const Cone& c);

}  // namespace torfan
