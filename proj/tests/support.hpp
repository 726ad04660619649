// Independent reference implementations used as test oracles.
#ifndef WREATH_TESTS_SUPPORT_HPP
#define WREATH_TESTS_SUPPORT_HPP

#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wreath/wreath.hpp"

namespace testing_support {

using wreath::FiniteGraph;
using wreath::VertexId;

/// Dense Gaussian elimination with partial pivoting.
inline std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    std::swap(a[c], a[p]);
    std::swap(b[c], b[p]);
    if (std::abs(a[c][c]) < 1e-300) throw std::runtime_error("singular system");
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t r = n; r-- > 0;) {
    double s = b[r];
    for (std::size_t k = r + 1; k < n; ++k) s -= a[r][k] * x[k];
    x[r] = s / a[r][r];
  }
  return x;
}

/// Harmonic extension by a dense solve of the free-vertex Laplacian.
inline std::vector<double> dense_harmonic(const FiniteGraph& g, const std::map<VertexId, double>& fixed) {
  std::vector<long> slot(g.size(), -1);
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (!fixed.contains(g.vertex(i))) {
      slot[i] = static_cast<long>(free.size());
      free.push_back(i);
    }
  std::vector<std::vector<double>> a(free.size(), std::vector<double>(free.size(), 0.0));
  std::vector<double> b(free.size(), 0.0);
  for (std::size_t k = 0; k < free.size(); ++k) {
    const std::size_t i = free[k];
    a[k][k] = static_cast<double>(g.degree(i));
    for (std::size_t j : g.neighbors(i)) {
      if (slot[j] >= 0) a[k][static_cast<std::size_t>(slot[j])] -= 1.0;
      else b[k] += fixed.at(g.vertex(j));
    }
  }
  const auto x = dense_solve(a, b);
  std::vector<double> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    out[i] = slot[i] >= 0 ? x[static_cast<std::size_t>(slot[i])] : fixed.at(g.vertex(i));
  return out;
}

inline double dense_energy(const FiniteGraph& g, const std::vector<double>& v) {
  double w = 0;
  for (auto [i, j] : g.edges()) w += (v[i] - v[j]) * (v[i] - v[j]);
  return w;
}

/// Random connected graph: a random spanning tree plus `extra` chords.
inline FiniteGraph random_connected(std::mt19937_64& rng, std::size_t n, std::size_t extra) {
  FiniteGraph::Builder b;
  for (std::size_t i = 0; i < n; ++i) b.add_vertex(VertexId("v" + std::to_string(i)));
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    b.add_edge(VertexId("v" + std::to_string(i)), VertexId("v" + std::to_string(pick(rng))));
  }
  std::uniform_int_distribution<std::size_t> any(0, n - 1);
  for (std::size_t k = 0; k < extra; ++k) {
    std::size_t u = any(rng), v = any(rng);
    if (u != v) b.add_edge(VertexId("v" + std::to_string(u)), VertexId("v" + std::to_string(v)));
  }
  return std::move(b).build();
}

inline FiniteGraph random_tree(std::mt19937_64& rng, std::size_t edges) {
  return random_connected(rng, edges + 1, 0);
}

/// Z wr K2 by direct BFS over (position, set of lit lamps); returns
/// (vertex count, edge count, sphere sizes).
struct LineLampBall {
  std::size_t vertices = 0, edges = 0;
  std::vector<std::size_t> spheres;
};

inline LineLampBall brute_line_k2_ball(long radius) {
  using State = std::pair<long, std::set<long>>;
  std::map<State, long> dist;
  std::vector<State> queue{{0, {}}};
  dist[queue[0]] = 0;
  auto nbrs = [](const State& s) {
    std::vector<State> out{{s.first - 1, s.second}, {s.first + 1, s.second}};
    State t = s;
    if (t.second.contains(t.first)) t.second.erase(t.first);
    else t.second.insert(t.first);
    out.push_back(t);
    return out;
  };
  for (std::size_t h = 0; h < queue.size(); ++h) {
    const State s = queue[h];
    if (dist[s] == radius) continue;
    for (const auto& t : nbrs(s))
      if (!dist.contains(t)) {
        dist[t] = dist[s] + 1;
        queue.push_back(t);
      }
  }
  LineLampBall r;
  r.vertices = dist.size();
  r.spheres.assign(static_cast<std::size_t>(radius) + 1, 0);
  std::size_t twice = 0;
  for (const auto& [s, d] : dist) {
    ++r.spheres[static_cast<std::size_t>(d)];
    for (const auto& t : nbrs(s)) twice += dist.contains(t);
  }
  r.edges = twice / 2;
  return r;
}

}  // namespace testing_support

#endif
