#ifndef WREATH_FINITE_GRAPH_HPP
#define WREATH_FINITE_GRAPH_HPP

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wreath/error.hpp"
#include "wreath/vertex_id.hpp"

namespace wreath {

using Path = std::vector<VertexId>;

/// Finite simple undirected graph. Vertices keep their insertion order;
/// each adjacency list is sorted by neighbor encoding.
class FiniteGraph {
 public:
  class Builder;

  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }

  const VertexId& vertex(std::size_t i) const { return ids_.at(i); }
  const std::vector<VertexId>& vertices() const noexcept { return ids_; }

  std::optional<std::size_t> index_of(const VertexId& v) const {
    auto it = index_.find(v);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const VertexId& v) const { return index_.contains(v); }

  std::size_t at(const VertexId& v) const {
    auto it = index_.find(v);
    if (it == index_.end())
      throw InvalidArgument("vertex not in graph: " + v.str());
    return it->second;
  }

  std::span<const std::size_t> neighbors(std::size_t i) const { return adj_.at(i); }
  std::size_t degree(std::size_t i) const { return adj_.at(i).size(); }

  std::vector<VertexId> neighbor_ids(const VertexId& v) const {
    std::vector<VertexId> out;
    for (std::size_t j : adj_[at(v)]) out.push_back(ids_[j]);
    return out;
  }

  std::size_t edge_count() const noexcept { return edges_; }

  /// Each edge once, as (i, j) with i < j, ordered by i then adjacency order.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    out.reserve(edges_);
    for (std::size_t i = 0; i < adj_.size(); ++i)
      for (std::size_t j : adj_[i])
        if (i < j) out.emplace_back(i, j);
    return out;
  }

  bool adjacent(std::size_t i, std::size_t j) const {
    const auto& a = adj_.at(i);
    return std::binary_search(a.begin(), a.end(), j, [this](std::size_t x, std::size_t y) {
      return ids_[x] < ids_[y];
    });
  }

  /// Validates symmetry and simplicity; throws InvalidArgument otherwise.
  static FiniteGraph from_adjacency(const std::map<VertexId, std::vector<VertexId>>& adj);

 private:
  std::vector<VertexId> ids_;
  std::unordered_map<VertexId, std::size_t> index_;
  std::vector<std::vector<std::size_t>> adj_;
  std::size_t edges_ = 0;
};

class FiniteGraph::Builder {
 public:
  std::size_t add_vertex(const VertexId& v) {
    auto [it, inserted] = g_.index_.try_emplace(v, g_.ids_.size());
    if (inserted) {
      g_.ids_.push_back(v);
      g_.adj_.emplace_back();
    }
    return it->second;
  }

  // Repeated edges collapse; self-loops are rejected.
  void add_edge(const VertexId& a, const VertexId& b) {
    if (a == b) throw InvalidArgument("self-loop at " + a.str());
    std::size_t i = add_vertex(a);
    std::size_t j = add_vertex(b);
    g_.adj_[i].push_back(j);
    g_.adj_[j].push_back(i);
  }

  FiniteGraph build() && {
    std::size_t twice = 0;
    for (auto& list : g_.adj_) {
      std::sort(list.begin(), list.end(),
                [this](std::size_t x, std::size_t y) { return g_.ids_[x] < g_.ids_[y]; });
      list.erase(std::unique(list.begin(), list.end()), list.end());
      twice += list.size();
    }
    g_.edges_ = twice / 2;
    return std::move(g_);
  }

 private:
  FiniteGraph g_;
};

inline FiniteGraph FiniteGraph::from_adjacency(
    const std::map<VertexId, std::vector<VertexId>>& adj) {
  for (const auto& [v, list] : adj) {
    std::vector<VertexId> sorted = list;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InvalidArgument("repeated neighbor in adjacency of " + v.str());
    for (const auto& w : list) {
      if (w == v) throw InvalidArgument("self-loop at " + v.str());
      auto it = adj.find(w);
      if (it == adj.end() ||
          std::find(it->second.begin(), it->second.end(), v) == it->second.end())
        throw InvalidArgument("asymmetric adjacency: " + v.str() + " -> " + w.str());
    }
  }
  Builder b;
  for (const auto& [v, list] : adj) b.add_vertex(v);
  for (const auto& [v, list] : adj)
    for (const auto& w : list) b.add_edge(v, w);
  return std::move(b).build();
}

/// BFS distances from `source`; unreachable vertices get -1.
inline std::vector<long> bfs_distances(const FiniteGraph& g, std::size_t source) {
  std::vector<long> dist(g.size(), -1);
  std::deque<std::size_t> queue{source};
  dist.at(source) = 0;
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t w : g.neighbors(u)) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

inline bool is_connected(const FiniteGraph& g) {
  if (g.empty()) return true;
  auto d = bfs_distances(g, 0);
  return std::none_of(d.begin(), d.end(), [](long x) { return x < 0; });
}

/// Maximum BFS distance over all vertex pairs.
inline long diameter(const FiniteGraph& g) {
  if (g.empty()) throw InvalidArgument("diameter of empty graph");
  long best = 0;
  for (std::size_t s = 0; s < g.size(); ++s) {
    for (long d : bfs_distances(g, s)) {
      if (d < 0) throw InvalidArgument("diameter of disconnected graph");
      best = std::max(best, d);
    }
  }
  return best;
}

/// A shortest u-v path. BFS scans neighbors in encoding order and keeps
/// the first discoverer as parent, so ties prefer smaller encodings.
inline Path shortest_path(const FiniteGraph& g, const VertexId& u, const VertexId& v) {
  const std::size_t src = g.at(u);
  const std::size_t dst = g.at(v);
  std::vector<std::size_t> parent(g.size(), g.size());
  std::deque<std::size_t> queue{src};
  parent[src] = src;
  while (!queue.empty() && parent[dst] == g.size()) {
    std::size_t x = queue.front();
    queue.pop_front();
    for (std::size_t w : g.neighbors(x)) {
      if (parent[w] == g.size()) {
        parent[w] = x;
        queue.push_back(w);
      }
    }
  }
  if (parent[dst] == g.size())
    throw InvalidArgument("no path from " + u.str() + " to " + v.str());
  Path path;
  for (std::size_t x = dst; x != src; x = parent[x]) path.push_back(g.vertex(x));
  path.push_back(g.vertex(src));
  std::reverse(path.begin(), path.end());
  return path;
}

/// Subgraph induced by `keep` (vertex order follows `keep`).
inline FiniteGraph induced_subgraph(const FiniteGraph& g, std::span<const VertexId> keep) {
  FiniteGraph::Builder b;
  std::vector<char> in(g.size(), 0);
  for (const auto& v : keep) {
    b.add_vertex(v);
    in[g.at(v)] = 1;
  }
  for (const auto& v : keep) {
    std::size_t i = g.at(v);
    for (std::size_t j : g.neighbors(i))
      if (in[j]) b.add_edge(v, g.vertex(j));
  }
  return std::move(b).build();
}

}  // namespace wreath

#endif  // WREATH_FINITE_GRAPH_HPP
