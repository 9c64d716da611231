#include "qnetbound/network_io.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qnetbound/errors.hpp"

namespace qnetbound {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  throw ParseError(origin + ": " + what);
}

double as_number(const json& value, const std::string& origin, const std::string& where) {
  if (!value.is_number()) {
    fail(origin, where + " must be a number");
  }
  return value.get<double>();
}

std::string as_string(const json& value, const std::string& origin,
                      const std::string& where) {
  if (!value.is_string()) {
    fail(origin, where + " must be a string");
  }
  return value.get<std::string>();
}

ChannelSpec parse_edge(const json& edge, std::size_t index, const std::string& origin,
                       UseProfile& profile) {
  const std::string where = "edges[" + std::to_string(index) + "]";
  if (!edge.is_object()) {
    fail(origin, where + " must be an object");
  }
  ChannelSpec spec;
  bool have_from = false;
  bool have_to = false;
  bool have_length = false;
  for (const auto& [key, value] : edge.items()) {
    if (key == "from") {
      spec.from_node = as_string(value, origin, where + ".from");
      have_from = true;
    } else if (key == "to") {
      spec.to_node = as_string(value, origin, where + ".to");
      have_to = true;
    } else if (key == "length_km") {
      spec.length_km = as_number(value, origin, where + ".length_km");
      have_length = true;
    } else if (key == "attenuation_length_km") {
      spec.attenuation_length_km = as_number(value, origin, where + ".attenuation_length_km");
    } else if (key == "loss_db_per_km") {
      spec.loss_db_per_km = as_number(value, origin, where + ".loss_db_per_km");
    } else if (key == "transmittance") {
      spec.transmittance_override = as_number(value, origin, where + ".transmittance");
    } else if (key == "mode_factor") {
      if (!value.is_number_integer()) {
        fail(origin, where + ".mode_factor must be an integer");
      }
      spec.mode_factor = value.get<int>();
    } else if (key == "uses") {
      profile.uses[index] = as_number(value, origin, where + ".uses");
    } else {
      fail(origin, where + ": unknown field '" + key + "'");
    }
  }
  if (!have_from || !have_to) {
    fail(origin, where + ": both 'from' and 'to' are required");
  }
  const int loss_fields = (spec.attenuation_length_km ? 1 : 0) +
                          (spec.loss_db_per_km ? 1 : 0) +
                          (spec.transmittance_override ? 1 : 0);
  if (loss_fields != 1) {
    throw SpecError(origin + ": " + where +
                    ": expected exactly one of loss_db_per_km, "
                    "attenuation_length_km, transmittance");
  }
  if (!have_length && !spec.transmittance_override) {
    fail(origin, where + ": 'length_km' is required unless transmittance is given");
  }
  return spec;
}

}  // namespace

NetworkFile parse_network_json(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw ParseError(origin + ": " + err.what());
  }
  if (!doc.is_object()) {
    fail(origin, "top level must be an object");
  }

  NetworkFile file;
  bool have_version = false;
  bool have_nodes = false;
  bool have_endpoints = false;
  bool have_edges = false;
  for (const auto& [key, value] : doc.items()) {
    if (key == "schema_version") {
      if (!value.is_number_integer() || value.get<int>() != 1) {
        fail(origin, "unsupported schema_version (expected 1)");
      }
      have_version = true;
    } else if (key == "nodes") {
      if (!value.is_array()) {
        fail(origin, "'nodes' must be an array of strings");
      }
      for (std::size_t i = 0; i < value.size(); ++i) {
        file.network.nodes.push_back(
            as_string(value[i], origin, "nodes[" + std::to_string(i) + "]"));
      }
      have_nodes = true;
    } else if (key == "endpoints") {
      if (!value.is_object()) {
        fail(origin, "'endpoints' must be an object");
      }
      bool have_a = false;
      bool have_b = false;
      for (const auto& [end_key, end_value] : value.items()) {
        if (end_key == "a") {
          file.network.node_a = as_string(end_value, origin, "endpoints.a");
          have_a = true;
        } else if (end_key == "b") {
          file.network.node_b = as_string(end_value, origin, "endpoints.b");
          have_b = true;
        } else {
          fail(origin, "endpoints: unknown field '" + end_key + "'");
        }
      }
      if (!have_a || !have_b) {
        fail(origin, "endpoints must name both 'a' and 'b'");
      }
      have_endpoints = true;
    } else if (key == "edges") {
      if (!value.is_array()) {
        fail(origin, "'edges' must be an array");
      }
      for (std::size_t i = 0; i < value.size(); ++i) {
        file.network.edges.push_back(parse_edge(value[i], i, origin, file.profile));
      }
      have_edges = true;
    } else {
      fail(origin, "unknown field '" + key + "'");
    }
  }
  if (!have_version) {
    fail(origin, "missing schema_version");
  }
  if (!have_nodes || !have_endpoints || !have_edges) {
    fail(origin, "missing one of nodes/endpoints/edges");
  }

  validate(file.network);
  validate(file.network, file.profile);
  return file;
}

NetworkFile load_network_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw SpecError("cannot read network file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_network_json(buffer.str(), path);
}

}  // namespace qnetbound
