#ifndef WREATH_ORACLE_HPP
#define WREATH_ORACLE_HPP

#include <algorithm>
#include <cstddef>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wreath/error.hpp"
#include "wreath/finite_graph.hpp"
#include "wreath/vertex_id.hpp"

namespace wreath {

inline constexpr std::size_t kDefaultBallCap = 5'000'000;

/// A locally finite graph given only through its neighbor function.
/// Infinite graphs are never enumerated; finite ones also carry the
/// backing FiniteGraph.
class GraphOracle {
 public:
  using NeighborFn = std::function<std::vector<VertexId>(const VertexId&)>;

  GraphOracle(NeighborFn fn, VertexId root, std::string name = {})
      : fn_(std::move(fn)), root_(std::move(root)), name_(std::move(name)) {}

  static GraphOracle from_finite(FiniteGraph g, VertexId root, std::string name = {}) {
    if (!g.contains(root)) throw InvalidArgument("root not in graph: " + root.str());
    auto shared = std::make_shared<const FiniteGraph>(std::move(g));
    GraphOracle o([shared](const VertexId& v) { return shared->neighbor_ids(v); },
                  std::move(root), std::move(name));
    o.finite_ = std::move(shared);
    return o;
  }

  std::vector<VertexId> neighbors(const VertexId& v) const { return fn_(v); }
  const VertexId& root() const noexcept { return root_; }
  const std::string& name() const noexcept { return name_; }

  bool is_finite() const noexcept { return finite_ != nullptr; }
  const FiniteGraph* finite() const noexcept { return finite_.get(); }

 private:
  NeighborFn fn_;
  VertexId root_;
  std::string name_;
  std::shared_ptr<const FiniteGraph> finite_;
};

struct Ball {
  FiniteGraph graph;  // BFS order; graph.vertex(0) == center
  VertexId center;
  long radius = 0;
  std::vector<long> dist;  // aligned with graph vertex order
  std::vector<VertexId> boundary;
  std::vector<std::size_t> sphere_sizes;  // sphere_sizes[k] = #vertices at distance k
};

/// Closed ball of `radius` around `center`, as the induced subgraph.
/// Throws ResourceLimit once more than `cap` vertices are discovered.
inline Ball ball(const GraphOracle& oracle, const VertexId& center, long radius,
                 std::size_t cap = kDefaultBallCap) {
  if (radius < 0) throw InvalidArgument("ball radius must be >= 0");
  std::vector<VertexId> order{center};
  std::unordered_map<VertexId, std::size_t> index{{center, 0}};
  std::vector<long> dist{0};
  std::vector<std::vector<std::size_t>> adj(1);

  for (std::size_t head = 0; head < order.size(); ++head) {
    const bool interior = dist[head] < radius;
    for (auto& w : oracle.neighbors(order[head])) {
      auto it = index.find(w);
      if (it == index.end()) {
        if (!interior) continue;
        if (order.size() >= cap)
          throw ResourceLimit("ball exceeds vertex cap of " + std::to_string(cap));
        it = index.emplace(w, order.size()).first;
        order.push_back(std::move(w));
        dist.push_back(dist[head] + 1);
        adj.emplace_back();
      }
      adj[head].push_back(it->second);
    }
  }

  FiniteGraph::Builder b;
  for (const auto& v : order) b.add_vertex(v);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j : adj[i])
      if (i < j) b.add_edge(order[i], order[j]);

  Ball out{std::move(b).build(), center, radius, std::move(dist), {}, {}};
  out.sphere_sizes.assign(static_cast<std::size_t>(radius) + 1, 0);
  for (std::size_t i = 0; i < out.dist.size(); ++i) {
    ++out.sphere_sizes[static_cast<std::size_t>(out.dist[i])];
    if (out.dist[i] == radius) out.boundary.push_back(out.graph.vertex(i));
  }
  return out;
}

/// Checks u in N(v) <=> v in N(u) for every v in `sample` and all of its
/// neighbors. Returns the first offending pair, if any.
inline std::optional<std::pair<VertexId, VertexId>> find_asymmetry(
    const GraphOracle& oracle, std::span<const VertexId> sample) {
  for (const auto& v : sample) {
    for (const auto& w : oracle.neighbors(v)) {
      auto back = oracle.neighbors(w);
      if (std::find(back.begin(), back.end(), v) == back.end()) return std::pair{v, w};
    }
  }
  return std::nullopt;
}

}  // namespace wreath

#endif  // WREATH_ORACLE_HPP
