#pragma once

#include "tropdiv/graph.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace tropdiv {

using GraphPtr = std::shared_ptr<const MetricGraph>;

inline GraphPtr share(MetricGraph g) { return std::make_shared<const MetricGraph>(std::move(g)); }

inline void require_same_graph(const GraphPtr& a, const GraphPtr& b) {
  if (a == b) return;
  if (!a || !b || !(*a == *b)) throw GraphMismatch("divisors live on different graphs");
}

/// Finite integer combination of points of a metric graph. Zero
/// coefficients are never stored.
class Divisor {
 public:
  using Terms = std::map<Point, std::int64_t>;

  Divisor() = default;
  explicit Divisor(GraphPtr g) : g_(std::move(g)) {}
  Divisor(GraphPtr g, const Terms& terms) : g_(std::move(g)) {
    for (const auto& [p, c] : terms) add(p, c);
  }

  static Divisor point(GraphPtr g, const Point& p, std::int64_t c = 1) {
    Divisor d(std::move(g));
    d.add(p, c);
    return d;
  }

  const GraphPtr& graph_ptr() const { return g_; }
  const MetricGraph& graph() const { return *g_; }
  const Terms& terms() const { return terms_; }

  std::int64_t operator[](const Point& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? 0 : it->second;
  }

  Divisor& add(const Point& p, std::int64_t c) {
    if (c == 0) return *this;
    auto [it, fresh] = terms_.emplace(p, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
    return *this;
  }

  std::int64_t degree() const {
    std::int64_t d = 0;
    for (const auto& [p, c] : terms_) d += c;
    return d;
  }

  bool is_zero() const { return terms_.empty(); }

  bool is_effective() const {
    for (const auto& [p, c] : terms_)
      if (c < 0) return false;
    return true;
  }

  bool effective_away_from(const Point& q) const {
    for (const auto& [p, c] : terms_)
      if (c < 0 && p != q) return false;
    return true;
  }

  std::vector<Point> support() const {
    std::vector<Point> s;
    s.reserve(terms_.size());
    for (const auto& [p, c] : terms_) s.push_back(p);
    return s;
  }

  Divisor positive_part() const {
    Divisor d(g_);
    for (const auto& [p, c] : terms_)
      if (c > 0) d.terms_.emplace(p, c);
    return d;
  }

  Divisor& operator+=(const Divisor& o) {
    require_same_graph(g_, o.g_);
    for (const auto& [p, c] : o.terms_) add(p, c);
    return *this;
  }
  Divisor& operator-=(const Divisor& o) {
    require_same_graph(g_, o.g_);
    for (const auto& [p, c] : o.terms_) add(p, -c);
    return *this;
  }
  friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
  friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
  friend Divisor operator-(const Divisor& a) {
    Divisor d(a.g_);
    for (const auto& [p, c] : a.terms_) d.terms_.emplace(p, -c);
    return d;
  }
  friend Divisor operator*(std::int64_t k, const Divisor& a) {
    Divisor d(a.g_);
    if (k == 0) return d;
    for (const auto& [p, c] : a.terms_) d.terms_.emplace(p, k * c);
    return d;
  }
  friend bool operator==(const Divisor& a, const Divisor& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Divisor& a, const Divisor& b) { return !(a == b); }

 private:
  GraphPtr g_;
  Terms terms_;
};

inline Divisor add(const Divisor& a, const Divisor& b) { return a + b; }
inline Divisor negate(const Divisor& a) { return -a; }
inline std::int64_t degree(const Divisor& d) { return d.degree(); }

inline std::string describe(const Divisor& d) {
  if (d.is_zero()) return "0";
  std::string s;
  for (const auto& [p, c] : d.terms()) {
    if (!s.empty()) s += c < 0 ? " - " : " + ";
    else if (c < 0) s += "-";
    std::int64_t a = c < 0 ? -c : c;
    if (a != 1) s += std::to_string(a) + "*";
    s += describe(d.graph(), p);
  }
  return s;
}

/// Continuous piecewise-linear function with integer slopes. Each edge
/// carries a sorted knot list (offset, value) that starts at offset 0 and
/// ends at the edge length; between consecutive knots the function is
/// linear. The knots of all edges form the subdivision the function lives on.
class PLFunction {
 public:
  struct Knot {
    Rational offset;
    Rational value;
  };

  PLFunction() = default;

  static PLFunction constant(GraphPtr g, const Rational& c = 0) {
    PLFunction f;
    f.g_ = std::move(g);
    f.vertex_value_.assign(f.g_->num_vertices(), c);
    f.knots_.resize(f.g_->num_edges());
    for (int e = 0; e < f.g_->num_edges(); ++e)
      f.knots_[e] = {{Rational(0), c}, {f.g_->edge(e).length, c}};
    return f;
  }

  /// Validates continuity at the vertices and integrality of every slope.
  static PLFunction from_knots(GraphPtr g, std::vector<Rational> vertex_values, std::vector<std::vector<Knot>> knots) {
    PLFunction f;
    f.g_ = std::move(g);
    f.vertex_value_ = std::move(vertex_values);
    f.knots_ = std::move(knots);
    f.validate();
    return f;
  }

  const GraphPtr& graph_ptr() const { return g_; }
  const MetricGraph& graph() const { return *g_; }
  const std::vector<Knot>& knots(int e) const { return knots_.at(e); }
  const Rational& vertex_value(int v) const { return vertex_value_.at(v); }

  std::int64_t slope(int e, std::size_t segment) const {
    const auto& k = knots_.at(e);
    Rational s = (k[segment + 1].value - k[segment].value) / (k[segment + 1].offset - k[segment].offset);
    return to_int64(s.get_num());
  }

  Rational value(const Point& p) const {
    if (p.is_vertex()) return vertex_value_.at(p.vertex());
    const auto& k = knots_.at(p.edge());
    for (std::size_t i = 0; i + 1 < k.size(); ++i) {
      if (p.offset() <= k[i + 1].offset) {
        return k[i].value + (p.offset() - k[i].offset) * (k[i + 1].value - k[i].value) / (k[i + 1].offset - k[i].offset);
      }
    }
    return k.back().value;
  }

  Rational value_at(int e, const Rational& t) const {
    const auto& k = knots_.at(e);
    for (std::size_t i = 0; i + 1 < k.size(); ++i) {
      if (t <= k[i + 1].offset)
        return k[i].value + (t - k[i].offset) * (k[i + 1].value - k[i].value) / (k[i + 1].offset - k[i].offset);
    }
    return k.back().value;
  }

  PLFunction& operator+=(const PLFunction& o) {
    require_same_graph(g_, o.g_);
    for (int v = 0; v < g_->num_vertices(); ++v) vertex_value_[v] += o.vertex_value_[v];
    for (int e = 0; e < g_->num_edges(); ++e) {
      std::vector<Rational> offs;
      for (const auto& k : knots_[e]) offs.push_back(k.offset);
      for (const auto& k : o.knots_[e]) offs.push_back(k.offset);
      std::sort(offs.begin(), offs.end());
      offs.erase(std::unique(offs.begin(), offs.end()), offs.end());
      std::vector<Knot> merged;
      merged.reserve(offs.size());
      for (const auto& t : offs) merged.push_back({t, value_at(e, t) + o.value_at(e, t)});
      knots_[e] = std::move(merged);
    }
    simplify();
    return *this;
  }
  friend PLFunction operator+(PLFunction a, const PLFunction& b) { return a += b; }

  friend PLFunction operator*(std::int64_t c, PLFunction f) {
    for (auto& v : f.vertex_value_) v *= c;
    for (auto& ks : f.knots_)
      for (auto& k : ks) k.value *= c;
    f.simplify();
    return f;
  }
  friend PLFunction operator-(const PLFunction& f) { return -1 * f; }

  /// Drops interior knots where the slope does not change.
  void simplify() {
    for (auto& ks : knots_) {
      if (ks.size() <= 2) continue;
      std::vector<Knot> out;
      out.reserve(ks.size());
      out.push_back(ks[0]);
      for (std::size_t i = 1; i + 1 < ks.size(); ++i) {
        const Knot& a = out.back();
        const Knot& b = ks[i];
        const Knot& c = ks[i + 1];
        if ((b.value - a.value) * (c.offset - b.offset) != (c.value - b.value) * (b.offset - a.offset)) out.push_back(b);
      }
      out.push_back(ks.back());
      ks = std::move(out);
    }
  }

  void validate() const {
    if (static_cast<int>(vertex_value_.size()) != g_->num_vertices() || static_cast<int>(knots_.size()) != g_->num_edges())
      throw InvariantViolation("PL function shape does not match graph");
    for (int e = 0; e < g_->num_edges(); ++e) {
      const Edge& ed = g_->edge(e);
      const auto& k = knots_[e];
      if (k.size() < 2 || k.front().offset != 0 || k.back().offset != ed.length)
        throw InvariantViolation("knots of edge '" + ed.id + "' must span [0, length]");
      if (k.front().value != vertex_value_[ed.u] || k.back().value != vertex_value_[ed.v])
        throw InvariantViolation("PL function discontinuous at an endpoint of '" + ed.id + "'");
      for (std::size_t i = 0; i + 1 < k.size(); ++i) {
        if (k[i + 1].offset <= k[i].offset) throw InvariantViolation("knots of '" + ed.id + "' not increasing");
        Rational s = (k[i + 1].value - k[i].value) / (k[i + 1].offset - k[i].offset);
        if (!is_integer(s)) throw InvariantViolation("non-integer slope on edge '" + ed.id + "'");
      }
    }
  }

 private:
  GraphPtr g_;
  std::vector<Rational> vertex_value_;
  std::vector<std::vector<Knot>> knots_;
};

/// Principal divisor: at each point the sum of the slopes of f along all
/// directions pointing into that point.
inline Divisor div_of(const PLFunction& f) {
  const MetricGraph& g = f.graph();
  Divisor d(f.graph_ptr());
  for (int e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    const auto& k = f.knots(e);
    const std::size_t segs = k.size() - 1;
    // outgoing slope at u is slope(0); incoming contribution is its negation
    d.add(Point::at_vertex(ed.u), -f.slope(e, 0));
    d.add(Point::at_vertex(ed.v), f.slope(e, segs - 1));
    for (std::size_t i = 1; i < segs; ++i)
      d.add(Point::on_edge(g, e, k[i].offset), f.slope(e, i - 1) - f.slope(e, i));
  }
  return d;
}

/// K(p) = val(p) - 2 on the model vertices; valency-2 points contribute 0.
inline Divisor canonical(const GraphPtr& g) {
  Divisor k(g);
  for (int v = 0; v < g->num_vertices(); ++v) k.add(Point::at_vertex(v), g->valency(v) - 2);
  return k;
}

/// The cut function min(eps, dist(x, A)). Throws EpsTooLarge when the eps
/// neighbourhood would reach a vertex outside A or two outgoing chips
/// would overlap.
inline PLFunction firing_function(const GraphPtr& gp, const Subgraph& a, const Rational& eps) {
  const MetricGraph& g = *gp;
  if (eps <= 0) throw InvariantViolation("eps must be positive");
  CoveredSet cs = normalize(g, a);
  std::vector<Rational> vv(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) vv[v] = cs.vertex_in[v] ? Rational(0) : eps;
  std::vector<std::vector<PLFunction::Knot>> knots(g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    const auto& cov = cs.covered[e];
    auto& out = knots[e];
    auto push = [&](const Rational& t, const Rational& val) {
      if (!out.empty() && out.back().offset == t) return;
      out.push_back({t, val});
    };
    if (cov.empty()) {
      push(Rational(0), eps);
      push(ed.length, eps);
      continue;
    }
    // gap before the first covered interval
    const Rational& first = cov.front().first;
    if (first > 0) {
      if (eps > first) throw EpsTooLarge("eps reaches vertex '" + g.vertex_id(ed.u) + "' outside the set");
      push(Rational(0), eps);
      push(first - eps, eps);
    }
    for (std::size_t i = 0; i < cov.size(); ++i) {
      push(cov[i].first, Rational(0));
      push(cov[i].second, Rational(0));
      if (i + 1 < cov.size()) {
        Rational gap = cov[i + 1].first - cov[i].second;
        if (2 * eps > gap) throw EpsTooLarge("outgoing chips collide on edge '" + ed.id + "'");
        push(cov[i].second + eps, eps);
        push(cov[i + 1].first - eps, eps);
      }
    }
    const Rational& last = cov.back().second;
    if (last < ed.length) {
      if (eps > ed.length - last) throw EpsTooLarge("eps reaches vertex '" + g.vertex_id(ed.v) + "' outside the set");
      push(last + eps, eps);
      push(ed.length, eps);
    }
  }
  PLFunction f = PLFunction::from_knots(gp, std::move(vv), std::move(knots));
  f.simplify();
  return f;
}

/// Chip-firing away from A by distance eps.
inline Divisor fire_subset(const GraphPtr& g, const Subgraph& a, const Rational& eps) {
  return div_of(firing_function(g, a, eps));
}

}  // namespace tropdiv
