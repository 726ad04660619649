#ifndef WREATH_LAMPLIGHTER_HPP
#define WREATH_LAMPLIGHTER_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wreath/error.hpp"
#include "wreath/finite_graph.hpp"
#include "wreath/oracle.hpp"
#include "wreath/vertex_id.hpp"

namespace wreath {

/// Finite-support lamp assignment V(G) -> V(H). Only lamps whose state
/// differs from the default are stored.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(VertexId default_state) : default_(std::move(default_state)) {}

  const VertexId& default_state() const noexcept { return default_; }
  const std::map<VertexId, VertexId>& lit() const noexcept { return lit_; }
  std::size_t support_size() const noexcept { return lit_.size(); }

  const VertexId& state(const VertexId& g) const {
    auto it = lit_.find(g);
    return it == lit_.end() ? default_ : it->second;
  }

  void set(const VertexId& g, const VertexId& h) {
    if (h == default_) lit_.erase(g);
    else lit_[g] = h;
  }

  Configuration with(const VertexId& g, const VertexId& h) const {
    Configuration c = *this;
    c.set(g, h);
    return c;
  }

  // "g1:h1,g2:h2", sorted by lamp position.
  std::string encode() const {
    std::string out;
    for (const auto& [g, h] : lit_) {
      if (!out.empty()) out += ',';
      out += g.str();
      out += ':';
      out += h.str();
    }
    return out;
  }

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  VertexId default_;
  std::map<VertexId, VertexId> lit_;
};

/// A vertex (C, x) of G wr H.
struct LampVertex {
  Configuration config;
  VertexId pos;

  /// Text form "pos | g1:h1,g2:h2"; "pos |" when every lamp is default.
  VertexId encode() const {
    std::string lamps = config.encode();
    return VertexId(pos.str() + " |" + (lamps.empty() ? "" : " " + lamps));
  }

  friend bool operator==(const LampVertex&, const LampVertex&) = default;
};

/// Inverse of LampVertex::encode. G-encodings must not contain ':' or
/// '|' and H-encodings must not contain ',' ':' or '|'.
inline LampVertex decode_lamp_vertex(const std::string& text, const VertexId& default_state) {
  auto bar = text.find(" |");
  if (bar == std::string::npos || bar == 0)
    throw InvalidArgument("not a lamplighter vertex: '" + text + "'");
  LampVertex v{Configuration(default_state), VertexId(text.substr(0, bar))};
  std::size_t pos = bar + 2;
  if (pos == text.size()) return v;
  if (text[pos] != ' ') throw InvalidArgument("not a lamplighter vertex: '" + text + "'");
  ++pos;
  while (pos < text.size()) {
    auto colon = text.find(':', pos);
    if (colon == std::string::npos || colon == pos)
      throw InvalidArgument("bad lamp entry in '" + text + "'");
    auto comma = text.find(',', colon);
    auto end = comma == std::string::npos ? text.size() : comma;
    VertexId g(text.substr(pos, colon - pos));
    VertexId h(text.substr(colon + 1, end - colon - 1));
    if (h.empty() || h == default_state || v.config.lit().contains(g))
      throw InvalidArgument("non-canonical lamp entry in '" + text + "'");
    v.config.set(g, h);
    pos = end == text.size() ? end : end + 1;
  }
  if (v.encode().str() != text)
    throw InvalidArgument("non-canonical lamplighter vertex: '" + text + "'");
  return v;
}

/// Lamplighter move along an edge of G; configuration frozen.
struct Move {
  VertexId from;
  VertexId to;
  friend bool operator==(const Move&, const Move&) = default;
};

/// Lamp change at `at` along the H-edge {from_state, to_state}.
struct Switch {
  VertexId at;
  VertexId from_state;
  VertexId to_state;

  // Same underlying H-edge, ignoring direction.
  bool same_h_edge(const Switch& o) const {
    return (from_state == o.from_state && to_state == o.to_state) ||
           (from_state == o.to_state && to_state == o.from_state);
  }
  friend bool operator==(const Switch&, const Switch&) = default;
};

using EdgeKind = std::variant<Move, Switch>;

/// G wr H over a locally finite G and a finite connected H.
class LampGraph {
 public:
  LampGraph(GraphOracle base, FiniteGraph lamps, std::optional<VertexId> default_state = {})
      : base_(std::move(base)), lamps_(std::make_shared<const FiniteGraph>(std::move(lamps))) {
    if (lamps_->edge_count() == 0) throw InvalidArgument("lamp graph H has no edge");
    if (!is_connected(*lamps_)) throw InvalidArgument("lamp graph H is not connected");
    for (const auto& h : lamps_->vertices())
      if (h.str().find_first_of(",:| ") != std::string::npos)
        throw InvalidArgument("lamp state names must not contain ',:| ': " + h.str());
    if (default_state) {
      if (!lamps_->contains(*default_state))
        throw InvalidArgument("default state not in H: " + default_state->str());
      s0_ = *default_state;
    } else {
      s0_ = *std::min_element(lamps_->vertices().begin(), lamps_->vertices().end());
    }
    lamp_diameter_ = diameter(*lamps_);
  }

  const GraphOracle& base() const noexcept { return base_; }
  const FiniteGraph& lamps() const noexcept { return *lamps_; }
  const VertexId& default_state() const noexcept { return s0_; }
  long lamp_diameter() const noexcept { return lamp_diameter_; }

  LampVertex root() const { return {Configuration(s0_), base_.root()}; }
  LampVertex at(const VertexId& pos) const { return {Configuration(s0_), pos}; }

  LampVertex decode(const VertexId& v) const { return decode_lamp_vertex(v.str(), s0_); }

  /// Moves first (by target position), then switches (by new state).
  std::vector<LampVertex> neighbors(const LampVertex& v) const {
    std::vector<LampVertex> out;
    for (auto& x : base_.neighbors(v.pos)) out.push_back({v.config, std::move(x)});
    const auto& here = v.config.state(v.pos);
    for (auto& h : lamps_->neighbor_ids(here)) out.push_back({v.config.with(v.pos, h), v.pos});
    return out;
  }

  std::size_t degree(const LampVertex& v) const {
    return base_.neighbors(v.pos).size() + lamps_->degree(lamps_->at(v.config.state(v.pos)));
  }

  /// The vertex reached from v by switching its current lamp to `state`.
  LampVertex switched(const LampVertex& v, const VertexId& state) const {
    const auto& here = v.config.state(v.pos);
    if (!lamps_->adjacent(lamps_->at(here), lamps_->at(state)))
      throw InvalidArgument("no H-edge " + here.str() + "-" + state.str());
    return {v.config.with(v.pos, state), v.pos};
  }

  /// Edge type of uv; throws InvalidArgument when u, v are not adjacent.
  EdgeKind classify_edge(const LampVertex& u, const LampVertex& v) const {
    if (u == v) throw InvalidArgument("not an edge: identical endpoints");
    if (u.config == v.config) {
      auto nb = base_.neighbors(u.pos);
      if (std::find(nb.begin(), nb.end(), v.pos) == nb.end())
        throw InvalidArgument("not an edge: positions not adjacent in G");
      return Move{u.pos, v.pos};
    }
    if (u.pos != v.pos) throw InvalidArgument("not an edge: position and lamps both differ");
    if (u.config.with(u.pos, v.config.state(u.pos)) != v.config)
      throw InvalidArgument("not an edge: lamps differ away from the lamplighter");
    const auto& a = u.config.state(u.pos);
    const auto& b = v.config.state(u.pos);
    if (!lamps_->adjacent(lamps_->at(a), lamps_->at(b)))
      throw InvalidArgument("not an edge: lamp states not adjacent in H");
    return Switch{u.pos, a, b};
  }

  /// The same graph as an oracle over encoded vertices, rooted at
  /// (all default, root of G).
  GraphOracle oracle() const {
    LampGraph self = *this;
    return GraphOracle(
        [self](const VertexId& v) {
          std::vector<VertexId> out;
          for (const auto& w : self.neighbors(self.decode(v))) out.push_back(w.encode());
          return out;
        },
        root().encode(), base_.name() + " wr H");
  }

 private:
  GraphOracle base_;
  std::shared_ptr<const FiniteGraph> lamps_;
  VertexId s0_;
  long lamp_diameter_ = 0;
};

inline const VertexId& base_of(const LampVertex& v) noexcept { return v.pos; }

}  // namespace wreath

#endif  // WREATH_LAMPLIGHTER_HPP
