#ifndef WREATH_IO_HPP
#define WREATH_IO_HPP

// JSON forms of graph specs, boundary conditions, ray specs and path
// sequences. Graph spec:
//   {"kind": "tree", "params": {"d": 3}}
//   {"kind": "cycle", "params": {"n": 8}}
//   {"kind": "line"}
//   {"kind": "custom", "adjacency": {"a": ["b"], "b": ["a"]}}
// or the shorthand string "tree:3".

#include <string>
#include <vector>

#include "json.hpp"
#include "wreath/builtin.hpp"
#include "wreath/dirichlet.hpp"
#include "wreath/error.hpp"
#include "wreath/ray_families.hpp"
#include "wreath/rays.hpp"

namespace wreath {

using Json = nlohmann::json;

inline GraphSpec graph_spec_from_json(const Json& j) {
  if (j.is_string()) return parse_graph_shorthand(j.get<std::string>());
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw InvalidArgument("graph spec needs a string \"kind\"");
  GraphSpec spec;
  spec.kind = j["kind"].get<std::string>();
  if (spec.kind == "custom") {
    if (!j.contains("adjacency") || !j["adjacency"].is_object())
      throw InvalidArgument("custom graph needs an \"adjacency\" object");
    for (const auto& [v, list] : j["adjacency"].items()) {
      auto& out = spec.adjacency[VertexId(v)];
      if (!list.is_array()) throw InvalidArgument("adjacency of " + v + " is not a list");
      for (const auto& w : list) out.emplace_back(w.get<std::string>());
    }
  } else if (spec.kind == "line") {
    spec.param = 1;
  } else {
    const Json params = j.value("params", Json::object());
    const char* key = (spec.kind == "grid" || spec.kind == "tree") ? "d" : "n";
    if (!params.contains(key) || !params[key].is_number_integer())
      throw InvalidArgument(spec.kind + " needs integer params." + key);
    spec.param = params[key].get<long>();
  }
  builtin_graph(spec);  // validate
  return spec;
}

inline Json graph_spec_to_json(const GraphSpec& spec) {
  Json j{{"kind", spec.kind}};
  if (spec.kind == "custom") {
    Json adj = Json::object();
    for (const auto& [v, list] : spec.adjacency) {
      Json l = Json::array();
      for (const auto& w : list) l.push_back(w.str());
      adj[v.str()] = l;
    }
    j["adjacency"] = adj;
  } else if (spec.kind != "line") {
    const char* key = (spec.kind == "grid" || spec.kind == "tree") ? "d" : "n";
    j["params"] = {{key, spec.param}};
  }
  return j;
}

/// {"fixed": {"<vertex>": value, ...}}
inline BoundaryCondition boundary_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("fixed") || !j["fixed"].is_object())
    throw InvalidArgument("boundary condition needs a \"fixed\" object");
  BoundaryCondition bc;
  for (const auto& [v, x] : j["fixed"].items()) {
    if (!x.is_number()) throw InvalidArgument("boundary value of " + v + " is not a number");
    bc.fixed[VertexId(v)] = x.get<double>();
  }
  return bc;
}

inline RaySpec ray_spec_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("base")) throw InvalidArgument("ray spec needs \"base\"");
  RaySpec r;
  r.family = j.value("family", std::string("frozen"));
  r.base = j["base"].get<std::string>();
  r.start = j.value("start", std::size_t{0});
  return r;
}

inline Json ray_spec_to_json(const RaySpec& r) {
  return {{"family", r.family}, {"base", r.base}, {"start", r.start}};
}

/// A path sequence is a JSON list of vertex-encoding lists.
inline Json path_seq_to_json(const PathSeq& seq) {
  Json out = Json::array();
  for (const auto& p : seq) {
    Json l = Json::array();
    for (const auto& v : p) l.push_back(v.str());
    out.push_back(std::move(l));
  }
  return out;
}

inline PathSeq path_seq_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidArgument("path sequence must be a JSON list");
  PathSeq seq;
  for (const auto& p : j) {
    if (!p.is_array()) throw InvalidArgument("each path must be a JSON list");
    Path path;
    for (const auto& v : p) {
      if (!v.is_string()) throw InvalidArgument("vertex encodings must be strings");
      path.emplace_back(v.get<std::string>());
    }
    seq.push_back(std::move(path));
  }
  return seq;
}

}  // namespace wreath

#endif  // WREATH_IO_HPP
