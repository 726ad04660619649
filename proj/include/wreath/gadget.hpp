#ifndef WREATH_GADGET_HPP
#define WREATH_GADGET_HPP

#include <algorithm>
#include <cstddef>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "wreath/error.hpp"
#include "wreath/finite_graph.hpp"
#include "wreath/lamplighter.hpp"
#include "wreath/rays.hpp"
#include "wreath/tree_walk.hpp"
#include "wreath/vertex_id.hpp"

namespace wreath {

/// How Z_i is produced: the lamp-fixing tree walk, or a breadth-first
/// search for a shortest path (small instances only).
enum class ZMode { Constructive, Bfs };

using LampPath = std::vector<LampVertex>;

inline Path encode_path(const LampPath& p) {
  Path out;
  out.reserve(p.size());
  for (const auto& v : p) out.push_back(v.encode());
  return out;
}

inline std::size_t edge_length(const LampPath& p) { return p.empty() ? 0 : p.size() - 1; }

namespace detail {

// Lamps outside `region` must agree.
inline void require_agreement_outside(const Configuration& a, const Configuration& b,
                                      const FiniteGraph& region) {
  auto check = [&](const std::map<VertexId, VertexId>& lit) {
    for (const auto& [g, _] : lit)
      if (!region.contains(g) && a.state(g) != b.state(g))
        throw InvalidArgument("endpoints differ at lamp " + g.str() + " outside the region");
  };
  check(a.lit());
  check(b.lit());
}

inline VertexId entry_point(const LampGraph& lg, const FiniteGraph& region, const VertexId& pos) {
  if (region.contains(pos)) return pos;
  auto nb = lg.base().neighbors(pos);
  std::sort(nb.begin(), nb.end());
  for (const auto& x : nb)
    if (region.contains(x)) return x;
  throw InvalidArgument("position " + pos.str() + " is not adjacent to the region");
}

// Chronological loop erasure.
inline LampPath loop_erase(const LampPath& walk) {
  LampPath out;
  std::unordered_map<VertexId, std::size_t> where;
  for (const auto& v : walk) {
    VertexId key = v.encode();
    auto it = where.find(key);
    if (it != where.end()) {
      for (std::size_t k = it->second + 1; k < out.size(); ++k) where.erase(out[k].encode());
      out.resize(it->second + 1);
      continue;
    }
    where.emplace(std::move(key), out.size());
    out.push_back(v);
  }
  return out;
}

}  // namespace detail

/// A path from `from` to `to` whose interior stays in the blow-up of the
/// vertex set of `tree`. The endpoints must agree on every lamp outside
/// that set.
///
/// Constructive: step into the tree, walk the smallest subtree holding the
/// entry, exit and every lamp that must change (side branches before the
/// entry-exit spine), switch each such lamp along a shortest H-path on its
/// first visit, then step out. Length is at most
/// 2 + 2|E(tree)| + |V(tree)| diam(H).
///
/// Bfs: a true shortest path; throws ResourceLimit past `state_cap` states.
inline LampPath build_z(const LampGraph& lg, const FiniteGraph& tree, const LampVertex& from,
                        const LampVertex& to, ZMode mode, std::size_t state_cap = 1'000'000) {
  if (tree.empty()) throw InvalidArgument("build_z: empty region");
  detail::require_agreement_outside(from.config, to.config, tree);
  if (from == to) return {from};

  if (mode == ZMode::Bfs) {
    std::unordered_map<VertexId, VertexId> parent;
    std::unordered_map<VertexId, LampVertex> decoded;
    const VertexId start = from.encode(), goal = to.encode();
    parent.emplace(start, start);
    std::deque<LampVertex> queue{from};
    bool found = false;
    while (!queue.empty() && !found) {
      LampVertex u = std::move(queue.front());
      queue.pop_front();
      const VertexId ukey = u.encode();
      for (auto& w : lg.neighbors(u)) {
        VertexId wkey = w.encode();
        if (parent.contains(wkey)) continue;
        if (wkey != goal && !tree.contains(w.pos)) continue;
        if (parent.size() >= state_cap) throw ResourceLimit("build_z: BFS state cap exceeded");
        parent.emplace(wkey, ukey);
        if (wkey == goal) {
          found = true;
          break;
        }
        queue.push_back(std::move(w));
      }
    }
    if (!found) throw ConstructionError("build_z: target unreachable inside the region");
    LampPath out;
    for (VertexId k = goal;; k = parent.at(k)) {
      out.push_back(lg.decode(k));
      if (k == start) break;
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

  const VertexId a = detail::entry_point(lg, tree, from.pos);
  const VertexId b = detail::entry_point(lg, tree, to.pos);
  std::vector<VertexId> terminals{a, b};
  std::set<VertexId> lamps;
  for (const auto& [g, _] : from.config.lit()) lamps.insert(g);
  for (const auto& [g, _] : to.config.lit()) lamps.insert(g);
  for (const auto& g : lamps)
    if (tree.contains(g) && from.config.state(g) != to.config.state(g)) terminals.push_back(g);

  const FiniteGraph sub = steiner_subtree(tree, terminals);
  const Path route = covering_walk(sub, a, b);

  LampPath walk{from};
  LampVertex cur = from;
  auto step_to = [&](const VertexId& x) {
    if (cur.pos == x) return;
    cur.pos = x;
    walk.push_back(cur);
  };
  std::unordered_set<VertexId> visited;
  for (const auto& x : route) {
    step_to(x);
    if (!visited.insert(x).second) continue;
    const VertexId& target = to.config.state(x);
    if (cur.config.state(x) == target) continue;
    Path hs = shortest_path(lg.lamps(), cur.config.state(x), target);
    for (std::size_t k = 1; k < hs.size(); ++k) {
      cur = lg.switched(cur, hs[k]);
      walk.push_back(cur);
    }
  }
  step_to(to.pos);
  if (!(cur == to)) throw ConstructionError("build_z: constructive walk missed its target");

  LampPath out = detail::loop_erase(walk);
  for (std::size_t k = 1; k + 1 < out.size(); ++k)
    if (!tree.contains(out[k].pos))
      throw ConstructionError("build_z: interior left the region at " + out[k].encode().str());
  return out;
}

/// One connecting path P_i = s s' X q+ q- Y s+ s- Z q' q of the
/// construction, with its pieces.
struct GadgetPath {
  long i = 0;
  LampVertex s, s_prime, q_plus, q_minus, s_plus, s_minus, q_prime, q;
  Switch e, f, e_prime;
  LampPath x, y, z;  // s'..q+, q-..s+, s-..q'
  LampPath assembled;
  VertexId base_s, base_q;
  std::vector<VertexId> region;  // V_{i-1}
  long tree_diameter = 0;        // diam(T_i)
  long prev_tree_diameter = 0;   // diam(T_{i-1})
  long tree_edges = 0;           // |E(T_i)|
  long lamp_diameter = 0;        // diam(H)

  std::size_t x_len() const { return edge_length(x); }
  std::size_t y_len() const { return edge_length(y); }
  std::size_t z_len() const { return edge_length(z); }
  std::size_t length() const { return edge_length(assembled); }
  long z_bound() const { return 3 * tree_edges * lamp_diameter; }
  Path encoded() const { return encode_path(assembled); }
};

inline long tree_diameter(const FiniteGraph& t) {
  if (t.size() <= 1) return 0;
  auto d0 = bfs_distances(t, 0);
  std::size_t far = static_cast<std::size_t>(std::max_element(d0.begin(), d0.end()) - d0.begin());
  auto d1 = bfs_distances(t, far);
  return *std::max_element(d1.begin(), d1.end());
}

/// Evolving state (V_i, T_i, cursors on S', Q') of the path construction
/// for two disjoint rays of a lamplighter graph. Sequential use only.
class Gadget {
 public:
  /// V_0 = base vertices met by the segment of `ray` between the first
  /// vertices of S' (index s_start) and Q' (index q_start); T_0 is the BFS
  /// spanning tree of G[V_0] rooted at the base of the S' start.
  Gadget(LampGraph lg, const DoubleRay& ray, long s_start, long q_start,
         ZMode mode = ZMode::Constructive)
      : lg_(std::move(lg)), mode_(mode) {
    if (s_start == q_start) throw InvalidArgument("S' and Q' must start at distinct indices");
    const bool forward = s_start > q_start;
    s_tail_ = forward ? ray.forward_from(s_start) : ray.backward_from(s_start);
    q_tail_ = forward ? ray.backward_from(q_start) : ray.forward_from(q_start);
    for (const auto& v : ray.segment(std::min(s_start, q_start), std::max(s_start, q_start))) {
      VertexId g = lg_.decode(v).pos;
      if (in_v_.insert(g).second) v_order_.push_back(g);
    }
    const VertexId root = lg_.decode(s_tail_->at(0)).pos;
    std::unordered_set<VertexId> reached{root};
    std::deque<VertexId> queue{root};
    while (!queue.empty()) {
      VertexId u = queue.front();
      queue.pop_front();
      auto nb = lg_.base().neighbors(u);
      std::sort(nb.begin(), nb.end());
      for (const auto& w : nb)
        if (in_v_.contains(w) && reached.insert(w).second) {
          tree_edges_.emplace_back(u, w);
          queue.push_back(w);
        }
    }
    if (reached.size() != in_v_.size())
      throw ConstructionError("G[V_0] is not connected");
    rebuild_tree();
    diameter_ = tree_diameter(tree_);
  }

  long step() const noexcept { return i_; }
  const FiniteGraph& tree() const noexcept { return tree_; }
  const std::vector<VertexId>& vertex_set() const noexcept { return v_order_; }
  long diameter() const noexcept { return diameter_; }
  const LampGraph& graph() const noexcept { return lg_; }

  /// Builds P_{i+1} and advances the state.
  GadgetPath next_path() {
    GadgetPath p;
    p.i = i_ + 1;
    p.lamp_diameter = lg_.lamp_diameter();
    p.prev_tree_diameter = diameter_;
    p.region = v_order_;

    auto [s_pred, s] = exit_vertex(*s_tail_, s_cursor_);
    auto [q_pred, q] = exit_vertex(*q_tail_, q_cursor_);
    const VertexId x = s.pos, y = q.pos;
    if (x == y)
      throw ConstructionError("step " + std::to_string(p.i) + ": s_i and q_i share base vertex " +
                              x.str());
    if (!std::holds_alternative<Move>(lg_.classify_edge(s_pred, s)) ||
        !std::holds_alternative<Move>(lg_.classify_edge(q_pred, q)))
      throw ConstructionError("tail edge into s_i or q_i is not a move");

    const FiniteGraph prev_tree = tree_;
    in_v_.insert(x);
    in_v_.insert(y);
    v_order_.push_back(x);
    v_order_.push_back(y);
    tree_edges_.emplace_back(s_pred.pos, x);
    tree_edges_.emplace_back(q_pred.pos, y);
    rebuild_tree();

    p.s = s;
    p.q = q;
    p.base_s = x;
    p.base_q = y;

    // e: switch at s_i to the smallest adjacent lamp state.
    const VertexId hx = s.config.state(x);
    const VertexId hx_new = lg_.lamps().neighbor_ids(hx).front();
    p.s_prime = lg_.switched(s, hx_new);
    p.e = Switch{x, hx, hx_new};

    // X: move-only along the tree path x -> y.
    for (const auto& g : shortest_path(tree_, x, y)) p.x.push_back({p.s_prime.config, g});
    p.q_plus = p.x.back();

    const VertexId hy = p.q_plus.config.state(y);
    const VertexId hy_new = lg_.lamps().neighbor_ids(hy).front();
    p.q_minus = lg_.switched(p.q_plus, hy_new);
    p.f = Switch{y, hy, hy_new};

    for (const auto& g : shortest_path(tree_, y, x)) p.y.push_back({p.q_minus.config, g});
    p.s_plus = p.y.back();

    // e' undoes e.
    p.s_minus = lg_.switched(p.s_plus, hx);
    p.e_prime = Switch{x, hx_new, hx};

    // q' is q_i switched along [f].
    const VertexId& hq = q.config.state(y);
    VertexId hq_new;
    if (hq == hy) hq_new = hy_new;
    else if (hq == hy_new) hq_new = hy;
    else
      throw ConstructionError("lamp at [q_i] is not an endpoint of [f]");
    p.q_prime = lg_.switched(q, hq_new);

    p.z = build_z(lg_, prev_tree, p.s_minus, p.q_prime, mode_);

    p.assembled.push_back(p.s);
    for (const auto* part : {&p.x, &p.y, &p.z}) p.assembled.insert(p.assembled.end(), part->begin(), part->end());
    p.assembled.push_back(p.q);

    std::unordered_set<VertexId> seen;
    for (const auto& v : p.assembled)
      if (!seen.insert(v.encode()).second)
        throw ConstructionError("P_" + std::to_string(p.i) + " revisits " + v.encode().str());

    diameter_ = tree_diameter(tree_);
    p.tree_diameter = diameter_;
    p.tree_edges = static_cast<long>(tree_.edge_count());
    ++i_;
    return p;
  }

 private:
  static constexpr std::size_t kMaxScan = 10'000'000;

  // First vertex past `cursor` whose base is outside V, with its predecessor.
  std::pair<LampVertex, LampVertex> exit_vertex(const Ray& tail, std::size_t& cursor) {
    std::size_t k = cursor;
    while (in_v_.contains(lg_.decode(tail.at(k + 1)).pos)) {
      if (++k - cursor > kMaxScan) throw ResourceLimit("tail never leaves the blow-up of V");
    }
    cursor = k + 1;
    return {lg_.decode(tail.at(k)), lg_.decode(tail.at(k + 1))};
  }

  void rebuild_tree() {
    FiniteGraph::Builder b;
    for (const auto& v : v_order_) b.add_vertex(v);
    for (const auto& [u, w] : tree_edges_) b.add_edge(u, w);
    tree_ = std::move(b).build();
    if (!is_tree(tree_)) throw ConstructionError("T is not a spanning tree of V");
  }

  LampGraph lg_;
  ZMode mode_;
  std::optional<Ray> s_tail_, q_tail_;
  std::size_t s_cursor_ = 0, q_cursor_ = 0;
  std::unordered_set<VertexId> in_v_;
  std::vector<VertexId> v_order_;
  std::vector<std::pair<VertexId, VertexId>> tree_edges_;
  FiniteGraph tree_;
  long diameter_ = 0;
  long i_ = 0;
};

inline Gadget init_gadget(const LampGraph& lg, const SplicedRay& spliced,
                          ZMode mode = ZMode::Constructive) {
  return Gadget(lg, spliced.ray, spliced.s_start, spliced.q_start, mode);
}

/// Row-wise length bounds and structural checks for one gadget path.
struct StepCheck {
  bool x_bound = false;       // |X_i| <= diam(T_i)
  bool y_bound = false;       // |Y_i| <= diam(T_i)
  bool z_bound = false;       // |Z_i| <= 3 |E(T_i)| diam(H)
  bool length_identity = false;  // |P_i| = |X_i| + |Y_i| + |Z_i| + 4
  bool diameter_growth = false;  // diam(T_i) - diam(T_{i-1}) <= 2
  bool structure = false;     // switch/move pattern, Z interior, simplicity, adjacency
  bool outside_lamps = false; // lamps outside V_i constant along P_i
  std::vector<std::string> problems;

  bool ok() const {
    return x_bound && y_bound && z_bound && length_identity && diameter_growth && structure &&
           outside_lamps;
  }
};

inline StepCheck check_step(const LampGraph& lg, const GadgetPath& p) {
  StepCheck c;
  const auto diam = static_cast<std::size_t>(p.tree_diameter);
  c.x_bound = p.x_len() <= diam;
  c.y_bound = p.y_len() <= diam;
  c.z_bound = static_cast<long>(p.z_len()) <= p.z_bound();
  c.length_identity = p.length() == p.x_len() + p.y_len() + p.z_len() + 4;
  c.diameter_growth = p.tree_diameter - p.prev_tree_diameter <= 2;
  if (!c.x_bound) c.problems.push_back("|X| > diam(T)");
  if (!c.y_bound) c.problems.push_back("|Y| > diam(T)");
  if (!c.z_bound) c.problems.push_back("|Z| > 3|E(T)|diam(H)");
  if (!c.length_identity) c.problems.push_back("|P| != |X|+|Y|+|Z|+4");
  if (!c.diameter_growth) c.problems.push_back("diam(T) grew by more than 2");

  c.structure = true;
  auto fail = [&](std::string why) {
    c.structure = false;
    c.problems.push_back(std::move(why));
  };
  auto is_switch = [&](const LampVertex& u, const LampVertex& v) {
    try {
      return std::holds_alternative<Switch>(lg.classify_edge(u, v));
    } catch (const InvalidArgument&) {
      return false;
    }
  };
  auto move_only = [&](const LampPath& part) {
    for (std::size_t k = 1; k < part.size(); ++k) {
      try {
        if (!std::holds_alternative<Move>(lg.classify_edge(part[k - 1], part[k]))) return false;
      } catch (const InvalidArgument&) {
        return false;
      }
    }
    return true;
  };
  if (!is_switch(p.s, p.s_prime) || !is_switch(p.q_plus, p.q_minus) ||
      !is_switch(p.s_plus, p.s_minus) || !is_switch(p.q_prime, p.q))
    fail("e, f, e' or the final edge is not a switch");
  if (!p.e_prime.same_h_edge(p.e)) fail("[e'] != [e]");
  if (!move_only(p.x) || !move_only(p.y)) fail("X or Y uses a switch");
  std::unordered_set<VertexId> region(p.region.begin(), p.region.end());
  for (std::size_t k = 1; k + 1 < p.z.size(); ++k)
    if (!region.contains(p.z[k].pos)) fail("Z leaves the blow-up of V_{i-1}");
  if (p.s_minus.config.state(p.base_s) != p.q_prime.config.state(p.base_s))
    fail("lamp [s_i] differs between the ends of Z");
  std::unordered_set<VertexId> seen;
  for (std::size_t k = 0; k < p.assembled.size(); ++k) {
    if (!seen.insert(p.assembled[k].encode()).second) fail("P is not simple");
    if (k > 0) {
      try {
        lg.classify_edge(p.assembled[k - 1], p.assembled[k]);
      } catch (const InvalidArgument&) {
        fail("P has a non-edge at position " + std::to_string(k));
      }
    }
  }

  // Lamps at G-vertices outside V_i keep the state they have at s_i.
  c.outside_lamps = true;
  region.insert(p.base_s);
  region.insert(p.base_q);
  for (const auto& v : p.assembled) {
    for (const auto* lit : {&v.config.lit(), &p.s.config.lit()}) {
      for (const auto& [g, _] : *lit) {
        if (!region.contains(g) && v.config.state(g) != p.s.config.state(g)) {
          c.outside_lamps = false;
        }
      }
    }
  }
  if (!c.outside_lamps) c.problems.push_back("a lamp outside V_i changed along P");
  return c;
}

/// For i < j, every interior vertex of P_j differs from every vertex of
/// P_i in the lamp at [s_j] or the lamp at [q_j]. Returns the first
/// counterexample, if any.
inline std::optional<std::string> check_lamp_witness(const std::vector<GadgetPath>& paths) {
  for (std::size_t j = 0; j < paths.size(); ++j) {
    const auto& pj = paths[j];
    std::set<std::pair<VertexId, VertexId>> earlier;
    for (std::size_t i = 0; i < j; ++i)
      for (const auto& v : paths[i].assembled)
        earlier.emplace(v.config.state(pj.base_s), v.config.state(pj.base_q));
    for (std::size_t k = 1; k + 1 < pj.assembled.size(); ++k) {
      const auto& v = pj.assembled[k];
      if (earlier.contains({v.config.state(pj.base_s), v.config.state(pj.base_q)}))
        return "P_" + std::to_string(pj.i) + " interior vertex " + v.encode().str() +
               " matches an earlier path at lamps [s_j], [q_j]";
    }
  }
  return std::nullopt;
}

struct GrowthRow {
  long i = 0;
  std::size_t length = 0;
  double ratio = 0.0;  // |P_i| / i
  double c_hat = 0.0;  // max over k <= i of |P_k| / k
};

struct GrowthReport {
  double c_hat = 0.0;
  std::vector<GrowthRow> rows;
};

/// c_hat = max_i |P_i| / i, with its running value per i (paths numbered
/// from 1 in sequence order).
inline GrowthReport verify_linear_growth(const PathSeq& paths) {
  if (paths.empty()) throw InvalidArgument("verify_linear_growth: no paths");
  GrowthReport r;
  for (std::size_t k = 0; k < paths.size(); ++k) {
    GrowthRow row;
    row.i = static_cast<long>(k + 1);
    row.length = paths[k].empty() ? 0 : paths[k].size() - 1;
    row.ratio = static_cast<double>(row.length) / static_cast<double>(row.i);
    r.c_hat = std::max(r.c_hat, row.ratio);
    row.c_hat = r.c_hat;
    r.rows.push_back(row);
  }
  return r;
}

}  // namespace wreath

#endif  // WREATH_GADGET_HPP
