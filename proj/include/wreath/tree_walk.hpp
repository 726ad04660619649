#ifndef WREATH_TREE_WALK_HPP
#define WREATH_TREE_WALK_HPP

#include <algorithm>
#include <cstddef>
#include <span>
#include <unordered_set>
#include <utility>
#include <vector>

#include "wreath/error.hpp"
#include "wreath/finite_graph.hpp"
#include "wreath/vertex_id.hpp"

namespace wreath {

inline bool is_tree(const FiniteGraph& t) {
  return !t.empty() && t.edge_count() + 1 == t.size() && is_connected(t);
}

namespace detail {

inline void require_tree(const FiniteGraph& t, const VertexId& v, const VertexId& w) {
  if (!is_tree(t)) throw InvalidArgument("walk requires a tree");
  if (!t.contains(v)) throw InvalidArgument("vertex not in tree: " + v.str());
  if (!t.contains(w)) throw InvalidArgument("vertex not in tree: " + w.str());
}

// Iterative DFS closed walk from `root`, children in adjacency order,
// except that `last` (if given) is descended into after all siblings and
// never returned from.
inline std::vector<std::size_t> dfs_walk(const FiniteGraph& t, std::size_t root,
                                         std::span<const std::size_t> spine) {
  std::vector<char> on_spine(t.size(), 0);
  for (std::size_t x : spine) on_spine[x] = 1;
  std::vector<std::size_t> walk{root};
  struct Frame {
    std::size_t v, parent, next;
  };
  std::vector<Frame> stack{{root, t.size(), 0}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    auto nb = t.neighbors(f.v);
    // Off-spine children first.
    while (f.next < nb.size() && (nb[f.next] == f.parent || on_spine[nb[f.next]])) ++f.next;
    if (f.next < nb.size()) {
      std::size_t c = nb[f.next++];
      walk.push_back(c);
      stack.push_back({c, f.v, 0});
      continue;
    }
    std::size_t v = f.v;
    std::size_t parent = f.parent;
    stack.pop_back();
    if (on_spine[v]) {
      // Continue down the spine instead of returning.
      for (std::size_t c : t.neighbors(v)) {
        if (c != parent && on_spine[c]) {
          walk.push_back(c);
          stack.clear();
          stack.push_back({c, v, 0});
          break;
        }
      }
    } else if (parent < t.size()) {
      walk.push_back(parent);
    }
  }
  return walk;
}

}  // namespace detail

/// Closed walk from v traversing every edge of the tree once in each
/// direction (2|E| edges).
inline Path euler_tour(const FiniteGraph& t, const VertexId& v) {
  detail::require_tree(t, v, v);
  Path out;
  for (std::size_t x : detail::dfs_walk(t, t.at(v), {})) out.push_back(t.vertex(x));
  return out;
}

/// v-w walk covering every edge of the tree: the Euler tour from v
/// followed by the tree path v -> w, so |walk| <= 3|E|.
inline Path tree_walk(const FiniteGraph& t, const VertexId& v, const VertexId& w) {
  Path walk = euler_tour(t, v);
  Path home = shortest_path(t, v, w);
  walk.insert(walk.end(), home.begin() + 1, home.end());
  return walk;
}

/// v-w walk covering every edge that visits the branches hanging off the
/// v-w path before moving on along it: |walk| = 2|E| - d(v, w).
inline Path covering_walk(const FiniteGraph& t, const VertexId& v, const VertexId& w) {
  detail::require_tree(t, v, w);
  std::vector<std::size_t> spine;
  for (const auto& x : shortest_path(t, v, w)) spine.push_back(t.at(x));
  if (spine.size() == 1) spine.clear();  // v == w: plain closed tour
  Path out;
  for (std::size_t x : detail::dfs_walk(t, t.at(v), spine)) out.push_back(t.vertex(x));
  return out;
}

/// Smallest subtree of `t` containing every vertex of `terminals`
/// (nonempty), found by repeatedly pruning non-terminal leaves.
inline FiniteGraph steiner_subtree(const FiniteGraph& t, std::span<const VertexId> terminals) {
  if (terminals.empty()) throw InvalidArgument("steiner subtree needs a terminal");
  std::vector<char> keep(t.size(), 1), terminal(t.size(), 0);
  std::vector<std::size_t> deg(t.size());
  for (const auto& v : terminals) terminal[t.at(v)] = 1;
  std::vector<std::size_t> leaves;
  for (std::size_t i = 0; i < t.size(); ++i) {
    deg[i] = t.degree(i);
    if (deg[i] <= 1 && !terminal[i]) leaves.push_back(i);
  }
  while (!leaves.empty()) {
    std::size_t x = leaves.back();
    leaves.pop_back();
    if (!keep[x]) continue;
    keep[x] = 0;
    for (std::size_t y : t.neighbors(x)) {
      if (keep[y] && --deg[y] <= 1 && !terminal[y]) leaves.push_back(y);
    }
  }
  std::vector<VertexId> kept;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (keep[i]) kept.push_back(t.vertex(i));
  return induced_subgraph(t, kept);
}

}  // namespace wreath

#endif  // WREATH_TREE_WALK_HPP
