#ifndef WREATH_DIRICHLET_HPP
#define WREATH_DIRICHLET_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "wreath/error.hpp"
#include "wreath/finite_graph.hpp"
#include "wreath/vertex_id.hpp"

namespace wreath {

/// Fixed values on a nonempty set of vertices; all others are free.
struct BoundaryCondition {
  std::map<VertexId, double> fixed;
};

struct SolverOptions {
  double tol = 1e-10;  // on the max harmonic residual
  long max_iter = 1'000'000;
};

struct HarmonicSolution {
  std::vector<double> values;  // aligned with the graph's vertex order
  double residual = 0.0;       // max over free x of |phi(x) - mean of phi over N(x)|
  double energy = 0.0;
  long iterations = 0;
};

/// Sum over edges of (phi(u) - phi(v))^2.
inline double energy(const FiniteGraph& g, std::span<const double> values) {
  if (values.size() != g.size()) throw InvalidArgument("energy: value count does not match graph");
  double total = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j : g.neighbors(i))
      if (i < j) total += (values[i] - values[j]) * (values[i] - values[j]);
  return total;
}

inline double energy(const FiniteGraph& g, const std::unordered_map<VertexId, double>& values) {
  std::vector<double> dense(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto it = values.find(g.vertex(i));
    if (it == values.end()) throw InvalidArgument("energy: missing value at " + g.vertex(i).str());
    dense[i] = it->second;
  }
  return energy(g, dense);
}

/// Max over the vertices not in `fixed_mask` of the harmonic defect.
inline double harmonic_residual(const FiniteGraph& g, std::span<const double> values,
                                std::span<const char> fixed_mask) {
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (fixed_mask[i] || g.degree(i) == 0) continue;
    double sum = 0.0;
    for (std::size_t j : g.neighbors(i)) sum += values[j];
    worst = std::max(worst, std::abs(values[i] - sum / static_cast<double>(g.degree(i))));
  }
  return worst;
}

/// Harmonic extension of `bc` to a finite graph: solves the graph
/// Laplacian restricted to the free vertices by Jacobi-preconditioned
/// conjugate gradients, stopping once the max harmonic residual is <= tol.
inline HarmonicSolution solve_dirichlet(const FiniteGraph& g, const BoundaryCondition& bc,
                                        const SolverOptions& opt = {}) {
  if (bc.fixed.empty()) throw InvalidArgument("boundary condition is empty");
  const std::size_t n = g.size();
  std::vector<char> fixed(n, 0);
  HarmonicSolution sol;
  sol.values.assign(n, 0.0);
  for (const auto& [v, x] : bc.fixed) {
    std::size_t i = g.at(v);
    fixed[i] = 1;
    sol.values[i] = x;
  }

  // Every free vertex must reach the boundary.
  {
    std::vector<char> seen = fixed;
    std::deque<std::size_t> queue;
    for (std::size_t i = 0; i < n; ++i)
      if (fixed[i]) queue.push_back(i);
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t w : g.neighbors(u))
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
    }
    for (std::size_t i = 0; i < n; ++i)
      if (!seen[i])
        throw InvalidArgument("free vertex " + g.vertex(i).str() + " cannot reach the boundary");
  }

  std::vector<std::size_t> free_idx;
  std::vector<long> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i)
    if (!fixed[i]) {
      slot[i] = static_cast<long>(free_idx.size());
      free_idx.push_back(i);
    }
  const std::size_t m = free_idx.size();
  if (m == 0) {
    sol.energy = energy(g, sol.values);
    return sol;
  }

  // A x = b with A = D - adjacency on free vertices.
  std::vector<double> diag(m), b(m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t i = free_idx[k];
    diag[k] = static_cast<double>(g.degree(i));
    for (std::size_t j : g.neighbors(i))
      if (fixed[j]) b[k] += sol.values[j];
  }
  auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t k = 0; k < m; ++k) {
      double acc = diag[k] * x[k];
      for (std::size_t j : g.neighbors(free_idx[k]))
        if (slot[j] >= 0) acc -= x[static_cast<std::size_t>(slot[j])];
      y[k] = acc;
    }
  };
  // Harmonic defect at free vertex k is r_k / d_k.
  auto defect = [&](const std::vector<double>& r) {
    double worst = 0.0;
    for (std::size_t k = 0; k < m; ++k) worst = std::max(worst, std::abs(r[k]) / diag[k]);
    return worst;
  };

  std::vector<double> x(m, 0.0), r(m), z(m), p(m), ap(m);
  auto true_residual = [&] {
    apply(x, ap);
    for (std::size_t k = 0; k < m; ++k) r[k] = b[k] - ap[k];
  };
  auto restart = [&] {
    true_residual();
    for (std::size_t k = 0; k < m; ++k) p[k] = z[k] = r[k] / diag[k];
  };
  restart();
  double rz = 0.0;
  for (std::size_t k = 0; k < m; ++k) rz += r[k] * z[k];

  long it = 0;
  while (true) {
    if (defect(r) <= opt.tol) {
      // The recurrence residual drifts; confirm on the true one.
      true_residual();
      if (defect(r) <= opt.tol) break;
      restart();
      rz = 0.0;
      for (std::size_t k = 0; k < m; ++k) rz += r[k] * z[k];
    }
    if (it >= opt.max_iter)
      throw ConvergenceError("solver hit max_iter " + std::to_string(opt.max_iter) +
                             " with residual " + std::to_string(defect(r)));
    apply(p, ap);
    double pap = 0.0;
    for (std::size_t k = 0; k < m; ++k) pap += p[k] * ap[k];
    if (pap <= 0.0) {
      restart();
      ++it;
      continue;
    }
    const double alpha = rz / pap;
    for (std::size_t k = 0; k < m; ++k) {
      x[k] += alpha * p[k];
      r[k] -= alpha * ap[k];
      z[k] = r[k] / diag[k];
    }
    double rz_next = 0.0;
    for (std::size_t k = 0; k < m; ++k) rz_next += r[k] * z[k];
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t k = 0; k < m; ++k) p[k] = z[k] + beta * p[k];
    ++it;
  }

  for (std::size_t k = 0; k < m; ++k) sol.values[free_idx[k]] = x[k];
  sol.iterations = it;
  sol.residual = harmonic_residual(g, sol.values, fixed);
  sol.energy = energy(g, sol.values);
  return sol;
}

/// 1 / energy of the harmonic function that is 0 on `a` and 1 on `b`.
inline double effective_resistance(const FiniteGraph& g, std::span<const VertexId> a,
                                   std::span<const VertexId> b, const SolverOptions& opt = {}) {
  if (a.empty() || b.empty()) throw InvalidArgument("effective resistance needs nonempty sets");
  BoundaryCondition bc;
  for (const auto& v : a) bc.fixed[v] = 0.0;
  for (const auto& v : b) {
    if (bc.fixed.contains(v)) throw InvalidArgument("sets overlap at " + v.str());
    bc.fixed[v] = 1.0;
  }
  // Vertices that cannot reach either set carry no current.
  std::vector<char> reach(g.size(), 0);
  std::deque<std::size_t> queue;
  for (const auto& [v, _] : bc.fixed) {
    reach[g.at(v)] = 1;
    queue.push_back(g.at(v));
  }
  while (!queue.empty()) {
    std::size_t x = queue.front();
    queue.pop_front();
    for (std::size_t y : g.neighbors(x))
      if (!reach[y]) {
        reach[y] = 1;
        queue.push_back(y);
      }
  }
  double w = 0.0;
  if (std::all_of(reach.begin(), reach.end(), [](char c) { return c != 0; })) {
    w = solve_dirichlet(g, bc, opt).energy;
  } else {
    std::vector<VertexId> keep;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (reach[i]) keep.push_back(g.vertex(i));
    w = solve_dirichlet(induced_subgraph(g, keep), bc, opt).energy;
  }
  if (!(w > 0.0)) throw InvalidArgument("sets are not connected");
  return 1.0 / w;
}

/// sum of (phi_k - phi_{k+1})^2 along a path given by its values.
inline double path_energy(std::span<const double> values) {
  double total = 0.0;
  for (std::size_t k = 1; k < values.size(); ++k)
    total += (values[k] - values[k - 1]) * (values[k] - values[k - 1]);
  return total;
}

/// Split of a path's edges by the steepness threshold tau*u/(c*i).
struct ThresholdSplit {
  std::vector<std::size_t> high;  // edge k joins path vertex k and k+1
  std::vector<std::size_t> low;
  double threshold = 0.0;
  double high_sum = 0.0;  // sum of |phi difference| over high edges
  double low_sum = 0.0;
  double high_energy = 0.0;
  double energy_floor = 0.0;  // (1 - tau) * tau * u^2 / (c*i)
};

/// Partitions the edges of a path P_i (given by the values along it) into
/// steep edges, |difference| >= tau*u/(c*i), and the rest. Requires
/// |P_i| <= c*i and endpoint gap >= u. The flat edges then carry less than
/// tau*u of the gap, so the steep ones dissipate more than
/// (1-tau)*tau*u^2/(c*i); both facts are checked.
inline ThresholdSplit threshold_split(std::span<const double> path_values, double u, double c,
                                      long i, double tau = 0.9) {
  if (path_values.size() < 2) throw InvalidArgument("threshold_split: path has no edge");
  if (!(u > 0.0) || !(c > 0.0) || i < 1 || !(tau > 0.0 && tau < 1.0))
    throw InvalidArgument("threshold_split: need u > 0, c > 0, i >= 1, 0 < tau < 1");
  const double len = static_cast<double>(path_values.size() - 1);
  const double budget = c * static_cast<double>(i);
  if (len > budget)
    throw InvalidArgument("threshold_split: |P_i| = " + std::to_string(len) + " exceeds c*i = " +
                          std::to_string(budget));
  const double gap = std::abs(path_values.back() - path_values.front());
  if (gap < u)
    throw InvalidArgument("threshold_split: endpoint gap " + std::to_string(gap) + " < u = " +
                          std::to_string(u));

  ThresholdSplit out;
  out.threshold = tau * u / budget;
  for (std::size_t k = 0; k + 1 < path_values.size(); ++k) {
    const double f = std::abs(path_values[k + 1] - path_values[k]);
    if (f >= out.threshold) {
      out.high.push_back(k);
      out.high_sum += f;
      out.high_energy += f * f;
    } else {
      out.low.push_back(k);
      out.low_sum += f;
    }
  }
  out.energy_floor = (1.0 - tau) * tau * u * u / budget;
  if (!(out.low_sum < tau * u))
    throw ConstructionError("threshold_split: flat edges carry " + std::to_string(out.low_sum));
  if (!(out.high_sum > (1.0 - tau) * u))
    throw ConstructionError("threshold_split: steep edges carry only " +
                            std::to_string(out.high_sum));
  if (!(out.high_energy > out.energy_floor))
    throw ConstructionError("threshold_split: steep energy " + std::to_string(out.high_energy) +
                            " <= floor " + std::to_string(out.energy_floor));
  return out;
}

/// Per-path energy floors 0.09 u^2/(c i) and their partial sums. The sums
/// grow like the harmonic series and so have no finite limit.
struct DivergenceCertificate {
  double u = 0.0;
  double c = 0.0;
  std::vector<double> terms;
  std::vector<double> partial_sums;
};

inline DivergenceCertificate divergence_certificate(std::size_t n, double u, double c) {
  if (n < 1 || !(u > 0.0) || !(c > 0.0))
    throw InvalidArgument("divergence_certificate: need n >= 1, u > 0, c > 0");
  DivergenceCertificate cert{u, c, {}, {}};
  cert.terms.reserve(n);
  cert.partial_sums.reserve(n);
  double sum = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    double term = 0.09 * u * u / (c * static_cast<double>(i));
    sum += term;
    cert.terms.push_back(term);
    cert.partial_sums.push_back(sum);
  }
  return cert;
}

}  // namespace wreath

#endif  // WREATH_DIRICHLET_HPP
