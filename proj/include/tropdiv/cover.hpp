#pragma once

#include "tropdiv/divisor.hpp"

#include <array>
#include <cstdint>

namespace tropdiv {

/// Spanning tree of the base plus, for every non-tree edge, whether its two
/// lifts swap sheets.
struct SignAssignment {
  std::vector<int> tree;
  std::map<int, bool> swapped;  // non-tree edge -> swapped
};

/// Free double cover. Lifts keep the orientation of the base edge, so a
/// point at offset t on a lift projects to offset t on the base edge, and
/// the involution maps offset t on one lift to offset t on the other.
struct DoubleCover {
  GraphPtr base;
  GraphPtr total;
  std::vector<int> vertex_map;     // total vertex -> base vertex
  std::vector<int> edge_map;       // total edge -> base edge
  std::vector<int> vertex_swap;    // involution on vertices
  std::vector<int> edge_swap;      // involution on edges
  std::vector<std::array<int, 2>> vertex_lifts;  // base vertex -> its two preimages
  std::vector<std::array<int, 2>> edge_lifts;    // base edge -> its two preimages

  Point project(const Point& p) const {
    if (p.is_vertex()) return Point::at_vertex(vertex_map.at(p.vertex()));
    return Point::on_edge(*base, edge_map.at(p.edge()), p.offset());
  }

  Point involution(const Point& p) const {
    if (p.is_vertex()) return Point::at_vertex(vertex_swap.at(p.vertex()));
    return Point::on_edge(*total, edge_swap.at(p.edge()), p.offset());
  }

  std::array<Point, 2> lifts(const Point& p) const {
    if (p.is_vertex()) {
      const auto& l = vertex_lifts.at(p.vertex());
      return {Point::at_vertex(l[0]), Point::at_vertex(l[1])};
    }
    const auto& l = edge_lifts.at(p.edge());
    return {Point::on_edge(*total, l[0], p.offset()), Point::on_edge(*total, l[1], p.offset())};
  }

  bool connected() const { return is_connected(*total); }

  /// Checks every defining property: two preimages of each vertex and edge,
  /// lengths and orientations preserved, and an involution that is a
  /// fixed-point-free automorphism commuting with the projection.
  void validate() const {
    const MetricGraph& b = *base;
    const MetricGraph& t = *total;
    if (static_cast<int>(vertex_map.size()) != t.num_vertices() || static_cast<int>(edge_map.size()) != t.num_edges() ||
        static_cast<int>(vertex_swap.size()) != t.num_vertices() || static_cast<int>(edge_swap.size()) != t.num_edges())
      throw InvariantViolation("cover maps do not match the total graph");
    std::vector<int> vcount(b.num_vertices(), 0), ecount(b.num_edges(), 0);
    for (int v = 0; v < t.num_vertices(); ++v) {
      int w = vertex_swap[v];
      if (w < 0 || w >= t.num_vertices()) throw InvariantViolation("involution leaves the vertex set");
      if (w == v) throw InvariantViolation("involution fixes vertex '" + t.vertex_id(v) + "'");
      if (vertex_swap[w] != v) throw InvariantViolation("involution is not of order two");
      if (vertex_map[w] != vertex_map[v]) throw InvariantViolation("involution does not preserve fibres");
      ++vcount.at(vertex_map[v]);
    }
    for (int e = 0; e < t.num_edges(); ++e) {
      const Edge& te = t.edge(e);
      const Edge& be = b.edge(edge_map.at(e));
      if (te.length != be.length) throw InvariantViolation("lift '" + te.id + "' changes length");
      if (vertex_map[te.u] != be.u || vertex_map[te.v] != be.v)
        throw InvariantViolation("lift '" + te.id + "' does not cover its base edge in orientation");
      int f = edge_swap[e];
      if (f < 0 || f >= t.num_edges()) throw InvariantViolation("involution leaves the edge set");
      if (f == e) throw InvariantViolation("involution fixes edge '" + te.id + "'");
      if (edge_swap[f] != e) throw InvariantViolation("involution is not of order two");
      if (edge_map[f] != edge_map[e]) throw InvariantViolation("involution does not preserve fibres");
      if (t.edge(f).u != vertex_swap[te.u] || t.edge(f).v != vertex_swap[te.v])
        throw InvariantViolation("involution is not a graph automorphism at '" + te.id + "'");
      ++ecount[edge_map[e]];
    }
    for (int c : vcount)
      if (c != 2) throw InvariantViolation("base vertex without exactly two preimages");
    for (int c : ecount)
      if (c != 2) throw InvariantViolation("base edge without exactly two preimages");
  }

  /// Fills the lift tables from the maps; total ids ordered so the lift with
  /// the smaller index comes first.
  void index_lifts() {
    vertex_lifts.assign(base->num_vertices(), {-1, -1});
    edge_lifts.assign(base->num_edges(), {-1, -1});
    for (int v = 0; v < total->num_vertices(); ++v) {
      auto& l = vertex_lifts[vertex_map[v]];
      (l[0] < 0 ? l[0] : l[1]) = v;
    }
    for (int e = 0; e < total->num_edges(); ++e) {
      auto& l = edge_lifts[edge_map[e]];
      (l[0] < 0 ? l[0] : l[1]) = e;
    }
  }
};

/// Two copies T+ and T- of the tree, plus two lifts of each non-tree edge.
/// Total ids are the base ids suffixed with "+" and "-".
inline DoubleCover build_cover(const GraphPtr& gp, const SignAssignment& s) {
  const MetricGraph& g = *gp;
  if (!is_spanning_tree(g, s.tree)) throw NotASpanningTree("cover construction needs a spanning tree");
  std::vector<bool> in_tree(g.num_edges(), false);
  for (int e : s.tree) in_tree[e] = true;
  for (const auto& [e, flag] : s.swapped)
    if (e < 0 || e >= g.num_edges() || in_tree[e]) throw InvariantViolation("sign given for a tree edge or unknown edge");
  DoubleCover c;
  c.base = gp;
  std::vector<std::string> vids;
  for (int v = 0; v < g.num_vertices(); ++v) {
    vids.push_back(g.vertex_id(v) + "+");
    vids.push_back(g.vertex_id(v) + "-");
    c.vertex_map.push_back(v);
    c.vertex_map.push_back(v);
    c.vertex_swap.push_back(2 * v + 1);
    c.vertex_swap.push_back(2 * v);
  }
  std::vector<Edge> edges;
  for (int e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    bool swap = false;
    if (!in_tree[e]) {
      auto it = s.swapped.find(e);
      swap = it != s.swapped.end() && it->second;
    }
    int up = 2 * ed.u, um = 2 * ed.u + 1, vp = 2 * ed.v, vm = 2 * ed.v + 1;
    edges.push_back(Edge{ed.id + "+", up, swap ? vm : vp, ed.length});
    edges.push_back(Edge{ed.id + "-", um, swap ? vp : vm, ed.length});
    c.edge_map.push_back(e);
    c.edge_map.push_back(e);
    c.edge_swap.push_back(2 * e + 1);
    c.edge_swap.push_back(2 * e);
  }
  c.total = share(MetricGraph(std::move(vids), std::move(edges)));
  c.index_lifts();
  c.validate();
  return c;
}

/// All 2^g sign assignments for a fixed tree, in binary counting order over
/// the non-tree edges (first non-tree edge is the lowest bit).
inline std::vector<SignAssignment> enumerate_signs(const MetricGraph& g, std::vector<int> tree) {
  if (!is_spanning_tree(g, tree)) throw NotASpanningTree("cover enumeration needs a spanning tree");
  std::sort(tree.begin(), tree.end());
  std::vector<bool> in_tree(g.num_edges(), false);
  for (int e : tree) in_tree[e] = true;
  std::vector<int> free_edges;
  for (int e = 0; e < g.num_edges(); ++e)
    if (!in_tree[e]) free_edges.push_back(e);
  if (free_edges.size() >= 31) throw InvariantViolation("genus too large to enumerate covers");
  std::vector<SignAssignment> out;
  for (std::uint32_t mask = 0; mask < (1u << free_edges.size()); ++mask) {
    SignAssignment s{tree, {}};
    for (std::size_t i = 0; i < free_edges.size(); ++i) s.swapped[free_edges[i]] = (mask >> i) & 1u;
    out.push_back(std::move(s));
  }
  return out;
}

inline std::vector<DoubleCover> enumerate_covers(const GraphPtr& g, const std::vector<int>& tree) {
  std::vector<DoubleCover> out;
  for (const auto& s : enumerate_signs(*g, tree)) out.push_back(build_cover(g, s));
  return out;
}

inline int cover_genus(const DoubleCover& c) {
  if (!c.connected()) throw DisconnectedCover("the total graph of this cover is disconnected");
  return betti1(*c.total);
}

inline Divisor norm(const DoubleCover& c, const Divisor& d) {
  require_same_graph(c.total, d.graph_ptr());
  Divisor out(c.base);
  for (const auto& [p, k] : d.terms()) out.add(c.project(p), k);
  return out;
}

inline Divisor involute(const DoubleCover& c, const Divisor& d) {
  require_same_graph(c.total, d.graph_ptr());
  Divisor out(c.total);
  for (const auto& [p, k] : d.terms()) out.add(c.involution(p), k);
  return out;
}

inline Divisor pullback(const DoubleCover& c, const Divisor& d) {
  require_same_graph(c.base, d.graph_ptr());
  Divisor out(c.total);
  for (const auto& [p, k] : d.terms())
    for (const auto& l : c.lifts(p)) out.add(l, k);
  return out;
}

}  // namespace tropdiv
