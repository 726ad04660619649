#ifndef WREATH_RAYS_HPP
#define WREATH_RAYS_HPP

#include <algorithm>
#include <cstddef>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "wreath/error.hpp"
#include "wreath/finite_graph.hpp"
#include "wreath/oracle.hpp"
#include "wreath/vertex_id.hpp"

namespace wreath {

/// One-way infinite path, materialized lazily. Copies (and tails) share
/// the materialized prefix.
class Ray {
 public:
  /// Given the prefix so far, returns the next vertex (nullopt: the ray
  /// cannot be continued, which callers report as exhaustion).
  using Extender = std::function<std::optional<VertexId>(std::span<const VertexId>)>;

  Ray(std::vector<VertexId> prefix, Extender extend)
      : src_(std::make_shared<Source>(Source{std::move(prefix), std::move(extend)})) {}

  static Ray from_index(std::function<VertexId(std::size_t)> vertex_at) {
    return Ray({}, [f = std::move(vertex_at)](std::span<const VertexId> prefix) {
      return std::optional<VertexId>(f(prefix.size()));
    });
  }

  const VertexId& at(std::size_t k) const {
    src_->materialize(offset_ + k + 1);
    return src_->prefix[offset_ + k];
  }

  /// First n vertices.
  std::vector<VertexId> take(std::size_t n) const {
    src_->materialize(offset_ + n);
    return {src_->prefix.begin() + static_cast<std::ptrdiff_t>(offset_),
            src_->prefix.begin() + static_cast<std::ptrdiff_t>(offset_ + n)};
  }

  /// The co-final subray starting at index k.
  Ray tail(std::size_t k) const {
    Ray r = *this;
    r.offset_ += k;
    return r;
  }

 private:
  struct Source {
    std::vector<VertexId> prefix;
    Extender extend;

    void materialize(std::size_t n) {
      while (prefix.size() < n) {
        auto next = extend ? extend(prefix) : std::nullopt;
        if (!next)
          throw ResourceLimit("ray exhausted after " + std::to_string(prefix.size()) +
                              " vertices");
        prefix.push_back(std::move(*next));
      }
    }
  };

  std::shared_ptr<Source> src_;
  std::size_t offset_ = 0;
};

/// Two-way infinite path ... x_{-1} x_0 x_1 ..., held as two rays that
/// share x_0: forward = x_0 x_1 ..., backward = x_0 x_{-1} ...
class DoubleRay {
 public:
  DoubleRay(Ray forward, Ray backward) : fwd_(std::move(forward)), bwd_(std::move(backward)) {
    if (fwd_.at(0) != bwd_.at(0)) throw InvalidArgument("double ray halves disagree at x_0");
  }

  const VertexId& at(long i) const {
    return i >= 0 ? fwd_.at(static_cast<std::size_t>(i)) : bwd_.at(static_cast<std::size_t>(-i));
  }

  /// x_{-n} .. x_{n}.
  std::vector<VertexId> window(std::size_t n) const { return segment(-static_cast<long>(n), static_cast<long>(n)); }

  /// x_lo .. x_hi inclusive.
  std::vector<VertexId> segment(long lo, long hi) const {
    std::vector<VertexId> out;
    for (long i = lo; i <= hi; ++i) out.push_back(at(i));
    return out;
  }

  /// x_i x_{i+1} ...
  Ray forward_from(long i) const {
    if (i >= 0) return fwd_.tail(static_cast<std::size_t>(i));
    std::vector<VertexId> head = segment(i, 0);
    Ray rest = fwd_.tail(1);
    const std::size_t n = head.size();
    return Ray(std::move(head), [rest, n](std::span<const VertexId> p) {
      return std::optional<VertexId>(rest.at(p.size() - n));
    });
  }

  /// x_i x_{i-1} ...
  Ray backward_from(long i) const {
    if (i <= 0) return bwd_.tail(static_cast<std::size_t>(-i));
    std::vector<VertexId> head = segment(0, i);
    std::reverse(head.begin(), head.end());
    Ray rest = bwd_.tail(1);
    const std::size_t n = head.size();
    return Ray(std::move(head), [rest, n](std::span<const VertexId> p) {
      return std::optional<VertexId>(rest.at(p.size() - n));
    });
  }

 private:
  Ray fwd_;
  Ray bwd_;
};

/// Finite paths P_1, P_2, ...; each runs from its S-side endpoint to its
/// Q-side endpoint.
using PathSeq = std::vector<Path>;

/// Checks consecutive adjacency (via the oracle) and distinctness.
inline bool is_simple_path(const GraphOracle& oracle, std::span<const VertexId> path) {
  std::unordered_set<VertexId> seen;
  for (std::size_t k = 0; k < path.size(); ++k) {
    if (!seen.insert(path[k]).second) return false;
    if (k > 0) {
      auto nb = oracle.neighbors(path[k - 1]);
      if (std::find(nb.begin(), nb.end(), path[k]) == nb.end()) return false;
    }
  }
  return true;
}

struct SplicedRay {
  DoubleRay ray;
  long s_start = 0;  // index of the first vertex of S' in `ray`
  long q_start = 0;  // index of the first vertex of Q' in `ray`
  std::size_t s_tail_index = 0;  // S' = S.tail(s_tail_index)
  std::size_t q_tail_index = 0;
  Path connector;  // q_start .. s_start
};

/// A double ray containing a tail of S (forwards) and a tail of Q
/// (backwards), joined by a shortest connector found by BFS from the first
/// `horizon`+1 vertices of Q to those of S. The connector is trimmed at its
/// last meeting with Q and first meeting with S afterwards.
inline SplicedRay splice_double_ray(const Ray& s, const Ray& q, const GraphOracle& oracle,
                                    std::size_t horizon, std::size_t cap = kDefaultBallCap) {
  const auto s_pre = s.take(horizon + 1);
  const auto q_pre = q.take(horizon + 1);
  std::unordered_map<VertexId, std::size_t> s_index, q_index;
  for (std::size_t k = 0; k < s_pre.size(); ++k) s_index.emplace(s_pre[k], k);
  for (std::size_t k = 0; k < q_pre.size(); ++k) {
    if (s_index.contains(q_pre[k]))
      throw InvalidArgument("rays S and Q meet at " + q_pre[k].str());
    q_index.emplace(q_pre[k], k);
  }

  // Multi-source BFS from Q's prefix, depth-limited by the horizon.
  std::unordered_map<VertexId, std::pair<VertexId, long>> parent;  // vertex -> (parent, depth)
  std::deque<VertexId> queue;
  for (const auto& v : q_pre)
    if (parent.emplace(v, std::pair{v, 0L}).second) queue.push_back(v);
  std::optional<VertexId> hit;
  while (!queue.empty() && !hit) {
    VertexId u = queue.front();
    queue.pop_front();
    const long depth = parent.at(u).second;
    if (depth >= static_cast<long>(horizon)) continue;
    for (auto& w : oracle.neighbors(u)) {
      if (parent.contains(w)) continue;
      if (parent.size() >= cap) throw ResourceLimit("splice search exceeded vertex cap");
      parent.emplace(w, std::pair{u, depth + 1});
      if (s_index.contains(w)) {
        hit = w;
        break;
      }
      queue.push_back(std::move(w));
    }
  }
  if (!hit) throw ResourceLimit("no S-Q connector within horizon " + std::to_string(horizon));

  Path path{*hit};
  while (!q_index.contains(path.back())) path.push_back(parent.at(path.back()).first);
  std::reverse(path.begin(), path.end());  // Q ... S

  std::size_t last_q = 0;
  for (std::size_t k = 0; k < path.size(); ++k)
    if (q_index.contains(path[k])) last_q = k;
  std::size_t first_s = last_q;
  while (!s_index.contains(path[first_s])) ++first_s;
  Path connector(path.begin() + static_cast<std::ptrdiff_t>(last_q),
                 path.begin() + static_cast<std::ptrdiff_t>(first_s + 1));

  const std::size_t qi = q_index.at(connector.front());
  const std::size_t si = s_index.at(connector.back());
  Ray s_tail = s.tail(si);
  Ray q_tail = q.tail(qi);

  const std::size_t n = connector.size();
  Ray forward(connector, [s_tail, n](std::span<const VertexId> p) {
    return std::optional<VertexId>(s_tail.at(p.size() - n + 1));
  });
  SplicedRay out{DoubleRay(std::move(forward), q_tail), static_cast<long>(n) - 1, 0, si, qi,
                 connector};

  const long reach = static_cast<long>(horizon);
  if (!is_simple_path(oracle, out.ray.segment(-reach, out.s_start + reach)))
    throw ConstructionError("spliced double ray is not simple within the horizon");
  return out;
}

/// Failure of greedy monotone extension.
class MonotoneRayError : public ConstructionError {
 public:
  enum class Kind { NoAscent, PlateauLoop };
  MonotoneRayError(Kind kind, const VertexId& at, const std::string& what)
      : ConstructionError(what), kind_(kind), at_(at) {}
  Kind kind() const noexcept { return kind_; }
  const VertexId& vertex() const noexcept { return at_; }

 private:
  Kind kind_;
  VertexId at_;
};

using VertexFunction = std::function<double(const VertexId&)>;

/// Greedy double ray through the seed edge x0 x1 along which phi is
/// non-decreasing: forward steps take the phi-maximal neighbor, backward
/// steps the phi-minimal one, ties to the smaller encoding. Returns a
/// DoubleRay whose window x_{-steps}..x_{steps} is already materialized.
/// Throws MonotoneRayError when no neighbor continues monotonically
/// (phi not harmonic there) or the greedy walk revisits a vertex.
inline DoubleRay monotone_double_ray(VertexFunction phi, const GraphOracle& oracle,
                                     const VertexId& x0, const VertexId& x1, std::size_t steps) {
  if (!(phi(x1) > phi(x0))) throw InvalidArgument("seed edge needs phi(x1) > phi(x0)");
  auto nb0 = oracle.neighbors(x0);
  if (std::find(nb0.begin(), nb0.end(), x1) == nb0.end())
    throw InvalidArgument("seed vertices are not adjacent");

  auto stepper = [phi, oracle](bool up) {
    return [phi, oracle, up](std::span<const VertexId> prefix) -> std::optional<VertexId> {
      const VertexId& x = prefix.back();
      auto nb = oracle.neighbors(x);
      std::sort(nb.begin(), nb.end());
      const double here = phi(x);
      const VertexId* best = nullptr;
      double best_val = 0;
      for (const auto& y : nb) {
        double val = phi(y);
        if (!best || (up ? val > best_val : val < best_val)) {
          best = &y;
          best_val = val;
        }
      }
      if (!best || (up ? best_val < here : best_val > here))
        throw MonotoneRayError(MonotoneRayError::Kind::NoAscent, x,
                               "no monotone continuation at " + x.str());
      if (std::find(prefix.begin(), prefix.end(), *best) != prefix.end())
        throw MonotoneRayError(MonotoneRayError::Kind::PlateauLoop, *best,
                               "plateau loop revisits " + best->str());
      return *best;
    };
  };

  DoubleRay d(Ray({x0, x1}, stepper(true)), Ray({x0}, stepper(false)));
  auto win = d.window(steps);
  std::unordered_set<VertexId> seen;
  for (const auto& v : win)
    if (!seen.insert(v).second)
      throw MonotoneRayError(MonotoneRayError::Kind::PlateauLoop, v,
                             "plateau loop revisits " + v.str());
  return d;
}

struct DisjointReport {
  bool edge_disjoint = true;
  bool interior_vertex_disjoint = true;
  std::optional<std::string> first_violation;
};

/// Exact pairwise check over all pairs of distinct paths: no shared edge,
/// and no interior vertex of one path on another path.
inline DisjointReport check_disjoint(const PathSeq& paths) {
  struct Seen {
    std::size_t path;
    bool interior;
  };
  auto edge_key = [](const VertexId& a, const VertexId& b) {
    const auto& [lo, hi] = std::minmax(a, b);
    return lo.str() + '\n' + hi.str();
  };
  DisjointReport report;
  std::unordered_map<VertexId, std::vector<Seen>> vertices;
  std::unordered_map<std::string, std::size_t> edges;
  auto note = [&](std::string msg) {
    if (!report.first_violation) report.first_violation = std::move(msg);
  };
  for (std::size_t j = 0; j < paths.size(); ++j) {
    const Path& p = paths[j];
    for (std::size_t k = 0; k < p.size(); ++k) {
      const bool interior = k > 0 && k + 1 < p.size();
      auto& seen = vertices[p[k]];
      for (const auto& prev : seen) {
        if (prev.path != j && (interior || prev.interior)) {
          report.interior_vertex_disjoint = false;
          note("paths " + std::to_string(prev.path) + " and " + std::to_string(j) +
               " share vertex " + p[k].str());
        }
      }
      seen.push_back({j, interior});
      if (k > 0) {
        auto [it, inserted] = edges.emplace(edge_key(p[k - 1], p[k]), j);
        if (!inserted && it->second != j) {
          report.edge_disjoint = false;
          note("paths " + std::to_string(it->second) + " and " + std::to_string(j) +
               " share edge " + p[k - 1].str() + " -- " + p[k].str());
        }
      }
    }
  }
  return report;
}

}  // namespace wreath

#endif  // WREATH_RAYS_HPP
