#pragma once

#include <nlohmann/json.hpp>

#include "chenbounds/inequalities.hpp"

namespace chen {

using Json = nlohmann::ordered_json;

// Ambient schema: { "m", "f": [7 reals], "phi": row-major flat array,
// "h": row-major flat array }, xi-last convention. Doubles survive the
// round trip bit-for-bit (shortest-round-trip printing).
Json ambient_to_json(const AmbientPoint& a);
AmbientPoint ambient_from_json(const Json& j);

// Instance schema, "schema_version": 1. Frames are stored as row lists;
// "sigma" maps the non-xi normal index (as a string) to an n x n matrix.
// The xi slice is omitted on write and recomputed from (phi h)^T on read.
Json instance_to_json(const SubmanifoldPoint& s);
SubmanifoldPoint instance_from_json(const Json& j);

Json report_to_json(const InequalityReport& r);

// Two-space indent plus trailing newline; the only dump the project uses, so
// identical data always produces identical bytes.
std::string dump_canonical(const Json& j);

}  // namespace chen
