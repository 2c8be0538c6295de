#pragma once

#include "tropdiv/divisor.hpp"

#include <cstdlib>
#include <optional>
#include <queue>

namespace tropdiv {

struct BurnResult {
  Subgraph unburnt;
  bool burns_all = true;
};

namespace detail {

/// The model refined at a finite set of marked points. Nodes are the
/// original vertices followed by the marked interior points; segments are
/// the pieces of edges between consecutive nodes.
struct RefinedModel {
  struct Segment {
    int edge;
    Rational lo;
    Rational hi;
    int a;  // node at lo
    int b;  // node at hi
  };

  std::vector<Point> nodes;
  std::map<Point, int> index;
  std::vector<Segment> segments;
  std::vector<std::vector<int>> node_segments;  // loops listed twice

  RefinedModel(const MetricGraph& g, const std::vector<Point>& marks) {
    for (int v = 0; v < g.num_vertices(); ++v) {
      index.emplace(Point::at_vertex(v), v);
      nodes.push_back(Point::at_vertex(v));
    }
    std::vector<std::vector<std::pair<Rational, int>>> stops(g.num_edges());
    for (const auto& p : marks) {
      if (p.is_vertex() || index.count(p)) continue;
      int id = static_cast<int>(nodes.size());
      index.emplace(p, id);
      nodes.push_back(p);
      stops[p.edge()].emplace_back(p.offset(), id);
    }
    node_segments.resize(nodes.size());
    for (int e = 0; e < g.num_edges(); ++e) {
      const Edge& ed = g.edge(e);
      auto& st = stops[e];
      std::sort(st.begin(), st.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      Rational lo = 0;
      int a = ed.u;
      auto push = [&](const Rational& hi, int b) {
        int s = static_cast<int>(segments.size());
        segments.push_back({e, lo, hi, a, b});
        node_segments[a].push_back(s);
        node_segments[b].push_back(s);
      };
      for (const auto& [t, id] : st) {
        push(t, id);
        lo = t;
        a = id;
      }
      push(ed.length, ed.v);
    }
  }

  int node(const Point& p) const { return index.at(p); }
};

struct Burn {
  std::vector<bool> node_burnt;
  std::vector<bool> segment_burnt;
  bool all = true;
};

/// Fire spreads from `source`; a node holding c chips burns once more than
/// c burnt segments reach it.
inline Burn run_fire(const RefinedModel& m, const std::vector<std::int64_t>& chips, int source) {
  Burn b;
  b.node_burnt.assign(m.nodes.size(), false);
  b.segment_burnt.assign(m.segments.size(), false);
  std::vector<std::int64_t> hits(m.nodes.size(), 0);
  std::queue<int> queue;
  b.node_burnt[source] = true;
  queue.push(source);
  while (!queue.empty()) {
    int n = queue.front();
    queue.pop();
    for (int s : m.node_segments[n]) {
      if (b.segment_burnt[s]) continue;
      b.segment_burnt[s] = true;
      const auto& seg = m.segments[s];
      int other = seg.a == n ? seg.b : seg.a;
      if (other == n) continue;
      if (b.node_burnt[other]) continue;
      if (++hits[other] > chips[other]) {
        b.node_burnt[other] = true;
        queue.push(other);
      }
    }
  }
  for (bool x : b.node_burnt) b.all = b.all && x;
  return b;
}

inline Subgraph unburnt_set(const MetricGraph& g, const RefinedModel& m, const Burn& b) {
  Subgraph a;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (!b.node_burnt[v]) a.vertices.insert(v);
  for (std::size_t n = g.num_vertices(); n < m.nodes.size(); ++n) {
    if (b.node_burnt[n]) continue;
    const Point& p = m.nodes[n];
    a.intervals.push_back({p.edge(), p.offset(), p.offset()});
  }
  for (std::size_t s = 0; s < m.segments.size(); ++s) {
    if (b.segment_burnt[s]) continue;
    const auto& seg = m.segments[s];
    a.intervals.push_back({seg.edge, seg.lo, seg.hi});
  }
  return a;
}

inline std::int64_t event_cap() {
  if (const char* env = std::getenv("TROPDIV_EVENT_CAP")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return 1000000;
}

inline std::vector<Point> marks_of(const Divisor& d, const Point& q) {
  std::vector<Point> marks = d.support();
  marks.push_back(q);
  return marks;
}

/// Dhar's algorithm for a divisor already effective away from q: fire the
/// unburnt set by the largest admissible distance until everything burns.
inline Divisor reduce_effective(Divisor d, const Point& q, PLFunction* witness) {
  const MetricGraph& g = d.graph();
  const std::int64_t cap = event_cap();
  for (std::int64_t events = 0;; ++events) {
    if (events > cap)
      throw InternalError("reduction exceeded " + std::to_string(cap) + " firing events; current divisor " + describe(d));
    RefinedModel m(g, marks_of(d, q));
    std::vector<std::int64_t> chips(m.nodes.size(), 0);
    for (const auto& [p, c] : d.terms()) chips[m.node(p)] = c;
    Burn b = run_fire(m, chips, m.node(q));
    if (b.all) return d;

    // Burnt segments with an unburnt end are where chips leave the set.
    struct Exit {
      int segment;
      bool from_lo;
    };
    std::vector<Exit> exits;
    std::optional<Rational> eps;
    for (std::size_t s = 0; s < m.segments.size(); ++s) {
      if (!b.segment_burnt[s]) continue;
      const auto& seg = m.segments[s];
      bool a_in = !b.node_burnt[seg.a];
      bool b_in = !b.node_burnt[seg.b];
      if (a_in == b_in) continue;
      exits.push_back({static_cast<int>(s), a_in});
      Rational len = seg.hi - seg.lo;
      if (!eps || len < *eps) eps = len;
    }
    if (exits.empty()) throw InternalError("unburnt set has no boundary");
    if (witness) *witness += firing_function(d.graph_ptr(), unburnt_set(g, m, b), *eps);
    for (const auto& ex : exits) {
      const auto& seg = m.segments[ex.segment];
      if (ex.from_lo) {
        d.add(m.nodes[seg.a], -1);
        d.add(Point::on_edge(g, seg.edge, seg.lo + *eps), 1);
      } else {
        d.add(m.nodes[seg.b], -1);
        d.add(Point::on_edge(g, seg.edge, seg.hi - *eps), 1);
      }
    }
  }
}

}  // namespace detail

inline void require_effective_away(const Divisor& d, const Point& q) {
  if (!d.effective_away_from(q)) throw NotEffectiveAwayFromQ("divisor " + describe(d) + " has anti-chips away from the base point");
}

inline BurnResult dhar_burn(const Divisor& d, const Point& q) {
  require_effective_away(d, q);
  const MetricGraph& g = d.graph();
  require_connected(g, "dhar_burn");
  detail::RefinedModel m(g, detail::marks_of(d, q));
  std::vector<std::int64_t> chips(m.nodes.size(), 0);
  for (const auto& [p, c] : d.terms()) chips[m.node(p)] = c;
  detail::Burn b = detail::run_fire(m, chips, m.node(q));
  BurnResult r;
  r.burns_all = b.all;
  if (!b.all) r.unburnt = detail::unburnt_set(g, m, b);
  return r;
}

struct Reduction {
  Divisor divisor;
  PLFunction witness;
};

namespace detail {

/// Moves every anti-chip away from q onto q. For an anti-chip at x the
/// divisor (g+1)q - x is effective away from x and, having degree g, its
/// x-reduced form R keeps R(x) >= 0; adding the principal divisor R - ((g+1)q - x)
/// therefore cancels the anti-chip without creating new ones away from q.
inline Divisor clear_antichips(Divisor d, const Point& q, PLFunction* witness) {
  const GraphPtr& gp = d.graph_ptr();
  const std::int64_t genus = betti1(*gp);
  for (;;) {
    std::optional<Point> x;
    std::int64_t n = 0;
    for (const auto& [p, c] : d.terms())
      if (c < 0 && p != q) {
        x = p;
        n = -c;
        break;
      }
    if (!x) return d;
    Divisor base = Divisor::point(gp, q, genus + 1) + Divisor::point(gp, *x, -1);
    PLFunction f = PLFunction::constant(gp);
    Divisor r = reduce_effective(base, *x, witness ? &f : nullptr);
    if (r[*x] < 0) throw InternalError("reduced divisor of degree g has an anti-chip at its base");
    d += n * (r - base);
    if (witness) *witness += n * f;
  }
}

}  // namespace detail

/// The unique q-reduced divisor equivalent to D, with f such that
/// D + div(f) equals the result.
inline Reduction reduce_with_witness(const Divisor& d, const Point& q) {
  require_connected(d.graph(), "reduce");
  PLFunction w = PLFunction::constant(d.graph_ptr());
  Divisor e = detail::clear_antichips(d, q, &w);
  Divisor r = detail::reduce_effective(std::move(e), q, &w);
  return {std::move(r), std::move(w)};
}

inline Divisor reduce(const Divisor& d, const Point& q) {
  require_connected(d.graph(), "reduce");
  return detail::reduce_effective(detail::clear_antichips(d, q, nullptr), q, nullptr);
}

/// Vertex with the smallest id; the fixed base point for equivalence tests.
inline Point canonical_base(const MetricGraph& g) {
  int best = 0;
  for (int v = 1; v < g.num_vertices(); ++v)
    if (g.vertex_id(v) < g.vertex_id(best)) best = v;
  return Point::at_vertex(best);
}

inline bool is_equivalent(const Divisor& a, const Divisor& b) {
  require_same_graph(a.graph_ptr(), b.graph_ptr());
  if (a.degree() != b.degree()) return false;
  return reduce(a - b, canonical_base(a.graph())).is_zero();
}

/// An effective divisor equivalent to D, namely its q-reduced form, when one exists.
inline std::optional<Divisor> effective_rep(const Divisor& d, const Point& q) {
  if (d.degree() < 0) return std::nullopt;
  Divisor r = reduce(d, q);
  if (!r.is_effective()) return std::nullopt;
  return r;
}

inline std::optional<Divisor> effective_rep(const Divisor& d) { return effective_rep(d, canonical_base(d.graph())); }

}  // namespace tropdiv
