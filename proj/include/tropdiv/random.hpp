#pragma once

#include "tropdiv/divisor.hpp"

#include <random>

namespace tropdiv {

/// Seeded generator of random exact objects. Rationals are drawn with
/// bounded numerators and denominators to keep arithmetic fast.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& engine() { return rng_; }

  std::int64_t integer(std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_); }

  bool coin() { return integer(0, 1) == 1; }

  /// Positive rational num/den with num <= max_num, den <= max_den.
  Rational length(long max_num = 100, long max_den = 20) {
    return make_rational(static_cast<long>(integer(1, max_num)), static_cast<long>(integer(1, max_den)));
  }

  /// Rational strictly inside (0, len).
  Rational inside(const Rational& len, long max_den = 20) {
    for (;;) {
      Rational t = len * make_rational(static_cast<long>(integer(1, max_den - 1)), max_den);
      t.canonicalize();
      if (t > 0 && t < len) return t;
    }
  }

  Point interior_point(const MetricGraph& g, long max_den = 20) {
    int e = static_cast<int>(integer(0, g.num_edges() - 1));
    return Point::on_edge(g, e, inside(g.edge(e).length, max_den));
  }

  /// Vertex with probability 1/4, otherwise an interior point.
  Point point(const MetricGraph& g) {
    if (integer(0, 3) == 0) return Point::at_vertex(static_cast<int>(integer(0, g.num_vertices() - 1)));
    return interior_point(g);
  }

  MetricGraph relength(const MetricGraph& g, long max_num = 100, long max_den = 20) {
    std::vector<Edge> edges = g.edges();
    for (auto& e : edges) e.length = length(max_num, max_den);
    return MetricGraph(g.vertex_ids(), std::move(edges));
  }

  /// Divisor of the given degree: a few random points with coefficients in
  /// [-2, 2], then the degree fixed up at one more random point.
  Divisor divisor(const GraphPtr& g, std::int64_t degree, int points = 4) {
    Divisor d(g);
    for (int i = 0; i < points; ++i) d.add(point(*g), integer(-2, 2));
    d.add(point(*g), degree - d.degree());
    return d;
  }

  Divisor effective(const GraphPtr& g, std::int64_t degree) {
    Divisor d(g);
    for (std::int64_t i = 0; i < degree; ++i) d.add(point(*g), 1);
    return d;
  }

  /// Random continuous PL function with integer slopes. Each edge gets a few
  /// free linear pieces; a final pair of pieces with consecutive slopes
  /// closes the gap to the value fixed at the far endpoint.
  PLFunction pl_function(const GraphPtr& gp, int max_knots = 2, std::int64_t max_slope = 2) {
    const MetricGraph& g = *gp;
    std::vector<Rational> vv(g.num_vertices());
    for (auto& v : vv) v = make_rational(static_cast<long>(integer(-10, 10)), static_cast<long>(integer(1, 4)));
    std::vector<std::vector<PLFunction::Knot>> knots(g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) {
      const Edge& ed = g.edge(e);
      std::set<Rational> cuts;
      int n = static_cast<int>(integer(0, max_knots));
      for (int i = 0; i < n; ++i) cuts.insert(inside(ed.length));
      auto& ks = knots[e];
      ks.push_back({Rational(0), vv[ed.u]});
      Rational t = 0, val = vv[ed.u];
      for (const auto& c : cuts) {
        val += integer(-max_slope, max_slope) * (c - t);
        t = c;
        ks.push_back({t, val});
      }
      Rational span = ed.length - t;
      Rational rise = vv[ed.v] - val;
      Rational avg = rise / span;
      if (is_integer(avg)) {
        ks.push_back({ed.length, vv[ed.v]});
        continue;
      }
      // s on a stretch of length x, s + 1 on the rest: s*span + (span - x) = rise
      Rational s(floor_int(avg));
      Rational rest = rise - s * span;  // length covered at slope s + 1
      Rational x = span - rest;
      if (coin()) {
        ks.push_back({t + x, val + s * x});
      } else {
        ks.push_back({t + rest, val + (s + 1) * rest});
      }
      ks.push_back({ed.length, vv[ed.v]});
    }
    PLFunction f = PLFunction::from_knots(gp, std::move(vv), std::move(knots));
    f.simplify();
    return f;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace tropdiv
