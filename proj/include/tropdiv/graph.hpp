#pragma once

#include "tropdiv/error.hpp"
#include "tropdiv/rational.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace tropdiv {

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<int> rank_;
};

}  // namespace detail

/// An edge of a model. Offsets along the edge are measured from `u` toward
/// `v`; for loops (`u == v`) that stored direction is the fixed orientation.
struct Edge {
  std::string id;
  int u = -1;
  int v = -1;
  Rational length;

  bool is_loop() const { return u == v; }
  int other(int w) const { return w == u ? v : u; }
};

/// Model of a metric graph: named vertices plus a list of edges with
/// positive rational lengths. Loops and parallel edges are allowed.
/// Instances are immutable once constructed.
class MetricGraph {
 public:
  MetricGraph() = default;

  MetricGraph(std::vector<std::string> vertex_ids, std::vector<Edge> edges)
      : vertex_ids_(std::move(vertex_ids)), edges_(std::move(edges)) {
    for (std::size_t i = 0; i < vertex_ids_.size(); ++i) {
      if (!vertex_index_.emplace(vertex_ids_[i], static_cast<int>(i)).second)
        throw InvariantViolation("duplicate vertex id '" + vertex_ids_[i] + "'");
    }
    incident_.resize(vertex_ids_.size());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const Edge& e = edges_[i];
      if (!edge_index_.emplace(e.id, static_cast<int>(i)).second)
        throw InvariantViolation("duplicate edge id '" + e.id + "'");
      if (e.u < 0 || e.v < 0 || e.u >= num_vertices() || e.v >= num_vertices())
        throw InvariantViolation("edge '" + e.id + "' has an undeclared endpoint");
      if (e.length <= 0) throw InvariantViolation("edge '" + e.id + "' must have positive length");
      incident_[e.u].push_back(static_cast<int>(i));
      incident_[e.v].push_back(static_cast<int>(i));  // loops appear twice
    }
  }

  struct EdgeSpec {
    std::string id;
    std::string u;
    std::string v;
    Rational length;
  };

  /// Builds a graph from vertex ids and edges whose endpoints are given by id.
  static MetricGraph from_ids(std::vector<std::string> vertex_ids, const std::vector<EdgeSpec>& specs) {
    std::unordered_map<std::string, int> index;
    for (std::size_t i = 0; i < vertex_ids.size(); ++i) index.emplace(vertex_ids[i], static_cast<int>(i));
    std::vector<Edge> edges;
    edges.reserve(specs.size());
    for (const auto& s : specs) {
      auto iu = index.find(s.u);
      auto iv = index.find(s.v);
      if (iu == index.end() || iv == index.end())
        throw InvariantViolation("edge '" + s.id + "' has an undeclared endpoint");
      edges.push_back(Edge{s.id, iu->second, iv->second, s.length});
    }
    return MetricGraph(std::move(vertex_ids), std::move(edges));
  }

  int num_vertices() const { return static_cast<int>(vertex_ids_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::string>& vertex_ids() const { return vertex_ids_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& vertex_id(int v) const { return vertex_ids_.at(v); }
  const Edge& edge(int e) const { return edges_.at(e); }
  /// Edge indices incident to `v`; a loop is listed twice.
  const std::vector<int>& incident(int v) const { return incident_.at(v); }
  int valency(int v) const { return static_cast<int>(incident_.at(v).size()); }

  std::optional<int> find_vertex(const std::string& id) const {
    auto it = vertex_index_.find(id);
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<int> find_edge(const std::string& id) const {
    auto it = edge_index_.find(id);
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
  }
  int vertex_index(const std::string& id) const {
    if (auto v = find_vertex(id)) return *v;
    throw InvariantViolation("unknown vertex '" + id + "'");
  }
  int edge_index(const std::string& id) const {
    if (auto e = find_edge(id)) return *e;
    throw InvariantViolation("unknown edge '" + id + "'");
  }

  Rational total_length() const {
    Rational s = 0;
    for (const auto& e : edges_) s += e.length;
    return s;
  }

  friend bool operator==(const MetricGraph& a, const MetricGraph& b) {
    if (a.vertex_ids_ != b.vertex_ids_ || a.edges_.size() != b.edges_.size()) return false;
    for (std::size_t i = 0; i < a.edges_.size(); ++i) {
      const Edge& x = a.edges_[i];
      const Edge& y = b.edges_[i];
      if (x.id != y.id || x.u != y.u || x.v != y.v || x.length != y.length) return false;
    }
    return true;
  }

 private:
  std::vector<std::string> vertex_ids_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> incident_;
  std::unordered_map<std::string, int> vertex_index_;
  std::unordered_map<std::string, int> edge_index_;
};

/// A location on a metric graph: a model vertex or an interior point of an
/// edge at a rational offset strictly between 0 and the edge length.
class Point {
 public:
  Point() = default;

  static Point at_vertex(int v) {
    Point p;
    p.vertex_ = v;
    return p;
  }

  /// Normalizes offsets 0 and `length` to the corresponding endpoint.
  static Point on_edge(const MetricGraph& g, int e, const Rational& offset) {
    const Edge& ed = g.edge(e);
    if (offset < 0 || offset > ed.length)
      throw InvariantViolation("offset " + to_string(offset) + " outside edge '" + ed.id + "'");
    if (offset == 0) return at_vertex(ed.u);
    if (offset == ed.length) return at_vertex(ed.v);
    Point p;
    p.edge_ = e;
    p.offset_ = offset;
    return p;
  }

  bool is_vertex() const { return vertex_ >= 0; }
  int vertex() const { return vertex_; }
  int edge() const { return edge_; }
  const Rational& offset() const { return offset_; }

  friend bool operator==(const Point& a, const Point& b) {
    return a.vertex_ == b.vertex_ && a.edge_ == b.edge_ && (a.vertex_ >= 0 || a.offset_ == b.offset_);
  }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
  friend bool operator<(const Point& a, const Point& b) {
    if (a.is_vertex() != b.is_vertex()) return a.is_vertex();
    if (a.is_vertex()) return a.vertex_ < b.vertex_;
    if (a.edge_ != b.edge_) return a.edge_ < b.edge_;
    return a.offset_ < b.offset_;
  }

 private:
  int vertex_ = -1;
  int edge_ = -1;
  Rational offset_;
};

inline std::string describe(const MetricGraph& g, const Point& p) {
  if (p.is_vertex()) return g.vertex_id(p.vertex());
  return g.edge(p.edge()).id + "@" + to_string(p.offset());
}

/// Closed subinterval [lo, hi] of an edge, in that edge's offsets.
struct Interval {
  int edge = -1;
  Rational lo;
  Rational hi;
};

/// Closed subset of a metric graph: whole vertices, whole closed edges and
/// closed subintervals of edges.
struct Subgraph {
  std::set<int> vertices;
  std::set<int> edges;
  std::vector<Interval> intervals;

  bool empty() const { return vertices.empty() && edges.empty() && intervals.empty(); }
};

/// Per-edge description of a closed set: the vertices it contains and, for
/// each edge, the sorted maximal closed intervals of [0, length] it covers
/// (endpoint vertices in the set contribute degenerate intervals).
struct CoveredSet {
  std::vector<bool> vertex_in;
  std::vector<std::vector<std::pair<Rational, Rational>>> covered;
};

inline CoveredSet normalize(const MetricGraph& g, const Subgraph& a) {
  CoveredSet cs;
  cs.vertex_in.assign(g.num_vertices(), false);
  cs.covered.assign(g.num_edges(), {});
  for (int v : a.vertices) cs.vertex_in.at(v) = true;
  for (int e : a.edges) {
    cs.vertex_in[g.edge(e).u] = true;
    cs.vertex_in[g.edge(e).v] = true;
    cs.covered[e].emplace_back(Rational(0), g.edge(e).length);
  }
  for (const auto& iv : a.intervals) {
    const Edge& ed = g.edge(iv.edge);
    if (iv.lo > iv.hi || iv.lo < 0 || iv.hi > ed.length)
      throw InvariantViolation("bad interval on edge '" + ed.id + "'");
    if (iv.lo == 0) cs.vertex_in[ed.u] = true;
    if (iv.hi == ed.length) cs.vertex_in[ed.v] = true;
    cs.covered[iv.edge].emplace_back(iv.lo, iv.hi);
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    auto& c = cs.covered[e];
    const Edge& ed = g.edge(e);
    if (cs.vertex_in[ed.u]) c.emplace_back(Rational(0), Rational(0));
    if (cs.vertex_in[ed.v]) c.emplace_back(ed.length, ed.length);
    std::sort(c.begin(), c.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<std::pair<Rational, Rational>> merged;
    for (auto& iv : c) {
      if (!merged.empty() && iv.first <= merged.back().second) {
        if (iv.second > merged.back().second) merged.back().second = iv.second;
      } else {
        merged.push_back(iv);
      }
    }
    c = std::move(merged);
  }
  return cs;
}

inline bool contains(const MetricGraph& g, const CoveredSet& cs, const Point& p) {
  if (p.is_vertex()) return cs.vertex_in.at(p.vertex());
  for (const auto& [lo, hi] : cs.covered.at(p.edge()))
    if (lo <= p.offset() && p.offset() <= hi) return true;
  (void)g;
  return false;
}

/// Connected component label of every vertex, and the component count.
inline std::pair<std::vector<int>, int> vertex_components(const MetricGraph& g) {
  detail::UnionFind uf(g.num_vertices());
  for (const auto& e : g.edges()) uf.unite(e.u, e.v);
  std::vector<int> label(g.num_vertices(), -1);
  std::map<std::size_t, int> ids;
  for (int v = 0; v < g.num_vertices(); ++v) {
    auto [it, fresh] = ids.emplace(uf.find(v), static_cast<int>(ids.size()));
    label[v] = it->second;
  }
  return {label, static_cast<int>(ids.size())};
}

inline int num_components(const MetricGraph& g) { return vertex_components(g).second; }
inline bool is_connected(const MetricGraph& g) { return g.num_vertices() > 0 && num_components(g) == 1; }

inline void require_connected(const MetricGraph& g, const char* op) {
  if (!is_connected(g)) throw DisconnectedGraph(std::string(op) + " requires a connected graph");
}

/// First Betti number e - v + f.
inline int betti1(const MetricGraph& g) { return g.num_edges() - g.num_vertices() + num_components(g); }

/// Sum of component genera minus the number of components plus one.
inline int genus_dec(const MetricGraph& g) {
  auto [label, k] = vertex_components(g);
  std::vector<int> ev(k, 0), vv(k, 0);
  for (int v = 0; v < g.num_vertices(); ++v) ++vv[label[v]];
  for (const auto& e : g.edges()) ++ev[label[e.u]];
  int total = 0;
  for (int i = 0; i < k; ++i) total += ev[i] - vv[i] + 1;
  return total - k + 1;
}

/// All spanning trees as sorted edge-index lists, in lexicographic order.
inline std::vector<std::vector<int>> spanning_trees(const MetricGraph& g) {
  require_connected(g, "spanning_trees");
  const int need = g.num_vertices() - 1;
  std::vector<int> candidates;
  for (int e = 0; e < g.num_edges(); ++e)
    if (!g.edge(e).is_loop()) candidates.push_back(e);
  std::vector<std::vector<int>> out;
  std::vector<int> chosen;
  // Depth-first over increasing edge indices; acyclicity is re-checked on
  // each extension since union-find does not support undo cheaply.
  auto acyclic_with = [&](int e) {
    detail::UnionFind uf(g.num_vertices());
    for (int c : chosen) uf.unite(g.edge(c).u, g.edge(c).v);
    return uf.find(g.edge(e).u) != uf.find(g.edge(e).v);
  };
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (static_cast<int>(chosen.size()) == need) {
      out.push_back(chosen);
      return;
    }
    for (std::size_t i = start; i < candidates.size(); ++i) {
      if (candidates.size() - i < static_cast<std::size_t>(need) - chosen.size()) break;
      if (!acyclic_with(candidates[i])) continue;
      chosen.push_back(candidates[i]);
      self(self, i + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// The lexicographically first spanning tree: greedy over edge indices.
inline std::vector<int> first_spanning_tree(const MetricGraph& g) {
  require_connected(g, "first_spanning_tree");
  detail::UnionFind uf(g.num_vertices());
  std::vector<int> tree;
  for (int e = 0; e < g.num_edges(); ++e)
    if (uf.unite(g.edge(e).u, g.edge(e).v)) tree.push_back(e);
  return tree;
}

inline bool is_spanning_tree(const MetricGraph& g, const std::vector<int>& tree) {
  if (static_cast<int>(tree.size()) != g.num_vertices() - 1) return false;
  detail::UnionFind uf(g.num_vertices());
  for (int e : tree) {
    if (e < 0 || e >= g.num_edges()) return false;
    if (!uf.unite(g.edge(e).u, g.edge(e).v)) return false;
  }
  return true;
}

/// A refined model together with the translation of points of the original
/// graph into points of the refinement.
struct Subdivision {
  struct Piece {
    int new_edge;
    Rational start;  // offset in the original edge
    Rational end;
  };

  MetricGraph graph;
  /// pieces[e] lists the refined edges covering original edge e, in order.
  std::vector<std::vector<Piece>> pieces;
  int original_vertices = 0;

  Point map(const Point& p) const {
    if (p.is_vertex()) return p;
    for (const auto& pc : pieces.at(p.edge())) {
      if (p.offset() >= pc.start && p.offset() <= pc.end)
        return Point::on_edge(graph, pc.new_edge, p.offset() - pc.start);
    }
    throw InternalError("point not covered by subdivision");
  }
};

/// Inserts each interior point as a new valency-2 vertex. Vertices keep their
/// indices; new vertices are appended and named "<edge>@<offset>"; refined
/// edges are named "<edge>" when the edge is untouched and "<edge>.k" otherwise.
inline Subdivision subdivide(const MetricGraph& g, const std::vector<Point>& points) {
  std::vector<std::set<Rational>> cuts(g.num_edges());
  for (const auto& p : points)
    if (!p.is_vertex()) cuts.at(p.edge()).insert(p.offset());
  std::vector<std::string> vids = g.vertex_ids();
  std::vector<MetricGraph::EdgeSpec> specs;
  std::vector<std::vector<Subdivision::Piece>> pieces(g.num_edges());
  int next_edge = 0;
  for (int e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    if (cuts[e].empty()) {
      specs.push_back({ed.id, g.vertex_id(ed.u), g.vertex_id(ed.v), ed.length});
      pieces[e].push_back({next_edge++, Rational(0), ed.length});
      continue;
    }
    std::string prev = g.vertex_id(ed.u);
    Rational prev_off = 0;
    int k = 1;
    for (const auto& t : cuts[e]) {
      std::string name = ed.id + "@" + to_string(t);
      vids.push_back(name);
      specs.push_back({ed.id + "." + std::to_string(k++), prev, name, t - prev_off});
      pieces[e].push_back({next_edge++, prev_off, t});
      prev = name;
      prev_off = t;
    }
    specs.push_back({ed.id + "." + std::to_string(k), prev, g.vertex_id(ed.v), ed.length - prev_off});
    pieces[e].push_back({next_edge++, prev_off, ed.length});
  }
  Subdivision s{MetricGraph::from_ids(std::move(vids), specs), std::move(pieces), g.num_vertices()};
  return s;
}

/// What to delete from a graph before taking complement components.
struct Removal {
  std::vector<Point> points;
  std::vector<int> open_edges;
};

/// The complement of a removal, cut into pieces: each edge splits at removed
/// interior points; pieces touching a surviving vertex attach to it. Every
/// node (surviving vertex or piece) carries a component label.
class CutGraph {
 public:
  struct Piece {
    int edge;
    Rational lo;
    Rational hi;
    bool open_lo;  // lo is a removed point
    bool open_hi;
  };

  CutGraph(const MetricGraph& g, const Removal& removal) : g_(&g) {
    vertex_alive_.assign(g.num_vertices(), true);
    std::vector<std::set<Rational>> cuts(g.num_edges());
    std::vector<bool> edge_removed(g.num_edges(), false);
    for (const auto& p : removal.points) {
      if (p.is_vertex()) vertex_alive_.at(p.vertex()) = false;
      else cuts.at(p.edge()).insert(p.offset());
    }
    for (int e : removal.open_edges) edge_removed.at(e) = true;
    pieces_of_edge_.assign(g.num_edges(), {});
    for (int e = 0; e < g.num_edges(); ++e) {
      if (edge_removed[e]) continue;
      const Edge& ed = g.edge(e);
      Rational lo = 0;
      bool open_lo = !vertex_alive_[ed.u];
      for (const auto& t : cuts[e]) {
        pieces_of_edge_[e].push_back(static_cast<int>(pieces_.size()));
        pieces_.push_back({e, lo, t, open_lo, true});
        lo = t;
        open_lo = true;
      }
      pieces_of_edge_[e].push_back(static_cast<int>(pieces_.size()));
      pieces_.push_back({e, lo, ed.length, open_lo, !vertex_alive_[ed.v]});
    }
    const std::size_t nv = g.num_vertices();
    detail::UnionFind uf(nv + pieces_.size());
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      const Piece& pc = pieces_[i];
      const Edge& ed = g.edge(pc.edge);
      if (pc.lo == 0 && !pc.open_lo) uf.unite(nv + i, ed.u);
      if (pc.hi == ed.length && !pc.open_hi) uf.unite(nv + i, ed.v);
    }
    label_.assign(nv + pieces_.size(), -1);
    std::map<std::size_t, int> ids;
    for (std::size_t n = 0; n < nv + pieces_.size(); ++n) {
      if (n < nv && !vertex_alive_[n]) continue;
      auto [it, fresh] = ids.emplace(uf.find(n), static_cast<int>(ids.size()));
      label_[n] = it->second;
    }
    count_ = static_cast<int>(ids.size());
  }

  int num_components() const { return count_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  bool vertex_alive(int v) const { return vertex_alive_.at(v); }
  int vertex_component(int v) const { return label_.at(v); }
  int piece_component(int i) const { return label_.at(g_->num_vertices() + i); }

  /// Component of a surviving point, or -1 if the point was removed.
  int component_of(const Point& p) const {
    if (p.is_vertex()) return vertex_alive(p.vertex()) ? vertex_component(p.vertex()) : -1;
    for (int i : pieces_of_edge_.at(p.edge())) {
      const Piece& pc = pieces_[i];
      bool above = pc.open_lo ? p.offset() > pc.lo : p.offset() >= pc.lo;
      bool below = pc.open_hi ? p.offset() < pc.hi : p.offset() <= pc.hi;
      if (above && below) return piece_component(i);
    }
    return -1;
  }

  /// Components as closed subgraphs (closures of the pieces).
  std::vector<Subgraph> components() const {
    std::vector<Subgraph> out(count_);
    for (int v = 0; v < g_->num_vertices(); ++v)
      if (vertex_alive_[v]) out[vertex_component(v)].vertices.insert(v);
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      const Piece& pc = pieces_[i];
      const Edge& ed = g_->edge(pc.edge);
      auto& sg = out[piece_component(static_cast<int>(i))];
      if (pc.lo == 0 && pc.hi == ed.length && !pc.open_lo && !pc.open_hi) sg.edges.insert(pc.edge);
      else sg.intervals.push_back({pc.edge, pc.lo, pc.hi});
    }
    return out;
  }

 private:
  const MetricGraph* g_;
  std::vector<bool> vertex_alive_;
  std::vector<Piece> pieces_;
  std::vector<std::vector<int>> pieces_of_edge_;
  std::vector<int> label_;
  int count_ = 0;
};

/// Connected components of the complement of removed points and open edges.
/// Pieces bounded by a removed interior point are reported by their closure.
inline std::vector<Subgraph> complement_components(const MetricGraph& g, const Removal& removal) {
  return CutGraph(g, removal).components();
}

}  // namespace tropdiv
