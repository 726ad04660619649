#ifndef WREATH_BUILTIN_HPP
#define WREATH_BUILTIN_HPP

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "wreath/error.hpp"
#include "wreath/finite_graph.hpp"
#include "wreath/oracle.hpp"
#include "wreath/vertex_id.hpp"

namespace wreath {

/// Description of a builtin or custom graph.
///   line          Z, vertices "0", "+1", "-1", ...
///   grid(d)       Z^d, vertices "+1,0,-2"
///   tree(d)       d-regular tree, root "r", children "r.0", "r.0.1", ...
///   cycle(n)      vertices "0".."n-1"
///   path(n)       n vertices "0".."n-1"
///   complete(n)   vertices "0".."n-1"
///   custom        explicit adjacency
struct GraphSpec {
  std::string kind;
  long param = 0;  // d or n
  std::map<VertexId, std::vector<VertexId>> adjacency;

  bool finite() const { return kind != "line" && kind != "grid" && kind != "tree"; }
  std::string label() const {
    if (kind == "line" || kind == "custom") return kind;
    return kind + "(" + std::to_string(param) + ")";
  }
};

namespace detail {

inline long long parse_int(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  long long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || s.empty())
    throw InvalidArgument("not an integer vertex: " + std::string(s));
  return v;
}

// Integer vertex names must be in canonical form ("0", "+k", "-k") so each
// vertex has exactly one name.
inline long long parse_canonical_int(std::string_view s) {
  const long long v = parse_int(s);
  if (encode_int(v) != s) throw InvalidArgument("non-canonical integer vertex: " + std::string(s));
  return v;
}

inline std::vector<long long> parse_coords(const std::string& s, long d) {
  std::vector<long long> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = s.find(',', start);
    out.push_back(parse_canonical_int(std::string_view(s).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (static_cast<long>(out.size()) != d) throw InvalidArgument("wrong grid dimension: " + s);
  return out;
}

inline std::string join_coords(const std::vector<long long>& c) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ',';
    out += encode_int(c[i]);
  }
  return out;
}

inline std::vector<VertexId> line_neighbors(const VertexId& v) {
  long long k = parse_canonical_int(v.str());
  std::vector<VertexId> out{VertexId(encode_int(k - 1)), VertexId(encode_int(k + 1))};
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<VertexId> grid_neighbors(const VertexId& v, long d) {
  auto c = parse_coords(v.str(), d);
  std::vector<VertexId> out;
  for (long i = 0; i < d; ++i) {
    for (int delta : {-1, 1}) {
      c[i] += delta;
      out.emplace_back(join_coords(c));
      c[i] -= delta;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Labels along the root-to-vertex path; validates ranges.
inline std::vector<long> tree_labels(const std::string& s, long d) {
  if (s.empty() || s.front() != 'r') throw InvalidArgument("not a tree vertex: " + s);
  std::vector<long> labels;
  std::size_t pos = 1;
  while (pos < s.size()) {
    if (s[pos] != '.') throw InvalidArgument("not a tree vertex: " + s);
    std::size_t next = s.find('.', pos + 1);
    std::string_view part = std::string_view(s).substr(pos + 1, next - pos - 1);
    long k = 0;
    auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), k);
    if (ec != std::errc{} || p != part.data() + part.size() || part.empty() || k < 0)
      throw InvalidArgument("not a tree vertex: " + s);
    long limit = labels.empty() ? d : d - 1;
    if (k >= limit) throw InvalidArgument("tree label out of range: " + s);
    labels.push_back(k);
    pos = next == std::string::npos ? s.size() : next;
  }
  return labels;
}

inline std::vector<VertexId> tree_neighbors(const VertexId& v, long d) {
  auto labels = tree_labels(v.str(), d);
  std::vector<VertexId> out;
  if (!labels.empty()) out.emplace_back(v.str().substr(0, v.str().rfind('.')));
  long children = labels.empty() ? d : d - 1;
  for (long k = 0; k < children; ++k) out.emplace_back(v.str() + "." + std::to_string(k));
  std::sort(out.begin(), out.end());
  return out;
}

inline VertexId indexed(long i) { return VertexId(std::to_string(i)); }

}  // namespace detail

/// Backing FiniteGraph of a finite spec.
inline FiniteGraph finite_graph(const GraphSpec& spec) {
  FiniteGraph::Builder b;
  const long n = spec.param;
  if (spec.kind == "path") {
    if (n < 1) throw InvalidArgument("path(n) needs n >= 1");
    for (long i = 0; i < n; ++i) b.add_vertex(detail::indexed(i));
    for (long i = 0; i + 1 < n; ++i) b.add_edge(detail::indexed(i), detail::indexed(i + 1));
  } else if (spec.kind == "cycle") {
    if (n < 3) throw InvalidArgument("cycle(n) needs n >= 3");
    for (long i = 0; i < n; ++i) b.add_edge(detail::indexed(i), detail::indexed((i + 1) % n));
  } else if (spec.kind == "complete") {
    if (n < 1) throw InvalidArgument("complete(n) needs n >= 1");
    for (long i = 0; i < n; ++i) b.add_vertex(detail::indexed(i));
    for (long i = 0; i < n; ++i)
      for (long j = i + 1; j < n; ++j) b.add_edge(detail::indexed(i), detail::indexed(j));
  } else if (spec.kind == "custom") {
    if (spec.adjacency.empty()) throw InvalidArgument("custom graph has no vertices");
    for (const auto& [v, _] : spec.adjacency) {
      if (v.empty() || v.str().find_first_of(":|, ") != std::string::npos)
        throw InvalidArgument("custom vertex names must be nonempty without ':|, ': '" +
                              v.str() + "'");
    }
    return FiniteGraph::from_adjacency(spec.adjacency);
  } else {
    throw InvalidArgument("not a finite graph kind: " + spec.kind);
  }
  return std::move(b).build();
}

inline GraphOracle builtin_graph(const GraphSpec& spec) {
  const long d = spec.param;
  if (spec.kind == "line")
    return GraphOracle(detail::line_neighbors, VertexId("0"), spec.label());
  if (spec.kind == "grid") {
    if (d < 1) throw InvalidArgument("grid(d) needs d >= 1");
    return GraphOracle([d](const VertexId& v) { return detail::grid_neighbors(v, d); },
                       VertexId(detail::join_coords(std::vector<long long>(d, 0))),
                       spec.label());
  }
  if (spec.kind == "tree") {
    if (d < 1) throw InvalidArgument("tree(d) needs d >= 1");
    return GraphOracle([d](const VertexId& v) { return detail::tree_neighbors(v, d); },
                       VertexId("r"), spec.label());
  }
  if (spec.kind == "path" || spec.kind == "cycle" || spec.kind == "complete" ||
      spec.kind == "custom") {
    FiniteGraph g = finite_graph(spec);
    VertexId root = spec.kind == "custom" ? g.vertex(0) : VertexId("0");
    return GraphOracle::from_finite(std::move(g), std::move(root), spec.label());
  }
  throw InvalidArgument("unknown graph kind: " + spec.kind);
}

/// Parses "line", "grid:2", "tree:3", "cycle:8", "path:5", "complete:2".
inline GraphSpec parse_graph_shorthand(const std::string& text) {
  GraphSpec spec;
  auto colon = text.find(':');
  spec.kind = text.substr(0, colon);
  if (colon != std::string::npos) spec.param = static_cast<long>(detail::parse_int(text.substr(colon + 1)));
  else if (spec.kind != "line") throw InvalidArgument("graph '" + text + "' needs a parameter");
  if (spec.kind == "line") spec.param = 1;
  builtin_graph(spec);  // validate
  return spec;
}

/// The k-th vertex (k >= 0) of a named base ray in an infinite builtin.
///   line:    "+" or "-"
///   grid(d): "+i" or "-i" along axis i
///   tree(d): "k" descends branch k of the root, then child 0 forever
inline std::function<VertexId(std::size_t)> base_ray(const GraphSpec& spec,
                                                     const std::string& name) {
  if (spec.kind == "line" && (name == "+" || name == "-")) {
    const long long sign = name == "+" ? 1 : -1;
    return [sign](std::size_t k) { return VertexId(encode_int(sign * static_cast<long long>(k))); };
  }
  if (spec.kind == "grid" && name.size() >= 2 && (name[0] == '+' || name[0] == '-')) {
    const long long sign = name[0] == '+' ? 1 : -1;
    const long axis = static_cast<long>(detail::parse_int(name.substr(1)));
    if (axis < 0 || axis >= spec.param) throw InvalidArgument("bad grid axis in ray " + name);
    const long d = spec.param;
    return [sign, axis, d](std::size_t k) {
      std::vector<long long> c(d, 0);
      c[axis] = sign * static_cast<long long>(k);
      return VertexId(detail::join_coords(c));
    };
  }
  if (spec.kind == "tree") {
    if (spec.param < 2) throw InvalidArgument("tree(d) has no rays for d < 2");
    const long branch = static_cast<long>(detail::parse_int(name));
    if (branch < 0 || branch >= spec.param) throw InvalidArgument("bad tree branch " + name);
    return [branch](std::size_t k) {
      std::string s = "r";
      if (k > 0) s += "." + std::to_string(branch);
      for (std::size_t i = 1; i < k; ++i) s += ".0";
      return VertexId(s);
    };
  }
  throw InvalidArgument("no base ray '" + name + "' in " + spec.label());
}

}  // namespace wreath

#endif  // WREATH_BUILTIN_HPP
