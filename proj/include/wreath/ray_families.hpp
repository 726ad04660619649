#ifndef WREATH_RAY_FAMILIES_HPP
#define WREATH_RAY_FAMILIES_HPP

#include <cstddef>
#include <functional>
#include <string>

#include "wreath/builtin.hpp"
#include "wreath/error.hpp"
#include "wreath/lamplighter.hpp"
#include "wreath/rays.hpp"

namespace wreath {

/// Named ray in a lamplighter over an infinite builtin G.
///   frozen: walk along the base ray with every lamp in the default state
///   toggle: first switch the lamp at the base ray's start, then walk
///   lighting: alternately switch the current lamp and step, leaving every
///             visited lamp switched
/// `start` drops that many leading base-ray vertices.
struct RaySpec {
  std::string family = "frozen";
  std::string base;
  std::size_t start = 0;
};

/// The base ray itself, as a Ray in G.
inline Ray base_graph_ray(const GraphSpec& g, const RaySpec& spec) {
  auto at = base_ray(g, spec.base);
  const std::size_t start = spec.start;
  return Ray::from_index([at, start](std::size_t k) { return at(k + start); });
}

inline Ray lamp_ray(const LampGraph& lg, const GraphSpec& g, const RaySpec& spec) {
  auto at = base_ray(g, spec.base);
  const std::size_t start = spec.start;
  Configuration config(lg.default_state());
  if (spec.family == "lighting") {
    const VertexId on = lg.lamps().neighbor_ids(lg.default_state()).front();
    return Ray::from_index([at, start, config, on](std::size_t k) {
      Configuration c = config;
      const std::size_t steps = k / 2;
      for (std::size_t j = 0; j < steps + (k % 2); ++j) c.set(at(j + start), on);
      return LampVertex{std::move(c), at(steps + start)}.encode();
    });
  }
  if (spec.family == "toggle") {
    const VertexId first = at(start);
    config.set(first, lg.lamps().neighbor_ids(lg.default_state()).front());
  } else if (spec.family != "frozen") {
    throw InvalidArgument("unknown ray family: " + spec.family);
  }
  return Ray::from_index([at, start, config](std::size_t k) {
    return LampVertex{config, at(k + start)}.encode();
  });
}

/// Default disjoint pair (S, Q) for the gadget: S toggles the root lamp
/// and walks one way, Q walks the other way with all lamps default.
inline std::pair<RaySpec, RaySpec> default_ray_pair(const GraphSpec& g) {
  if (g.kind == "line") return {{"toggle", "+", 0}, {"frozen", "-", 0}};
  if (g.kind == "grid") return {{"toggle", "+0", 0}, {"frozen", "-0", 0}};
  if (g.kind == "tree") return {{"toggle", "0", 0}, {"frozen", "1", 0}};
  throw InvalidArgument("no default rays for " + g.label());
}

}  // namespace wreath

#endif  // WREATH_RAY_FAMILIES_HPP
