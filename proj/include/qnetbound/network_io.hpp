#pragma once

#include <string>

#include "qnetbound/netgraph.hpp"

namespace qnetbound {

// A network description plus the per-edge use counts that rode along with it.
// total_uses is never inferred from a file; callers that want a per-use
// figure must supply the total themselves.
struct NetworkFile {
  Network network;
  UseProfile profile;
};

// Strict JSON parsing: unknown fields, wrong types, or a wrong schema_version
// are ParseErrors naming the offending location (typos must not silently
// change physics). Semantically invalid values (self-loops, unknown nodes,
// negative uses, ...) surface as SpecErrors from validation.
//
// Expected shape:
//   {
//     "schema_version": 1,
//     "nodes": ["A", "C1", "B"],
//     "endpoints": {"a": "A", "b": "B"},
//     "edges": [
//       {"from": "A", "to": "C1", "length_km": 50.0,
//        "loss_db_per_km": 0.2, "uses": 2.5}
//     ]
//   }
// Per edge, exactly one of loss_db_per_km / attenuation_length_km /
// transmittance; optional mode_factor (default 2) and uses (default 1).
NetworkFile parse_network_json(const std::string& text, const std::string& origin);

// parse_network_json over the file's contents; unreadable files are
// SpecErrors (the path is a domain input, not text to parse).
NetworkFile load_network_file(const std::string& path);

}  // namespace qnetbound
