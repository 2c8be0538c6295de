#include "tropdiv/fixtures.hpp"
#include "tropdiv/random.hpp"

#include <gtest/gtest.h>

using namespace tropdiv;
namespace fx = tropdiv::fixtures;

namespace {

Point vtx(const MetricGraph& g, const std::string& id) { return Point::at_vertex(g.vertex_index(id)); }

Point at(const MetricGraph& g, const std::string& edge, const Rational& t) { return Point::on_edge(g, g.edge_index(edge), t); }

PLFunction::Knot k(const Rational& t, const Rational& v) { return {t, v}; }

}  // namespace

TEST(Divisor, Degree) {
  auto t = fx::theta();
  EXPECT_EQ(Divisor(t).degree(), 0);
  Divisor d = Divisor::point(t, at(*t, "e1", make_rational(1, 2))) + Divisor::point(t, at(*t, "e2", 1)) - 3 * Divisor::point(t, vtx(*t, "w"));
  EXPECT_EQ(d.degree(), -1);
}

TEST(Divisor, Arithmetic) {
  auto t = fx::theta();
  Divisor p = Divisor::point(t, at(*t, "e1", make_rational(1, 3)));
  Divisor q = Divisor::point(t, at(*t, "e2", make_rational(1, 3)));
  Divisor r = Divisor::point(t, vtx(*t, "w"));
  Divisor zero(t);
  EXPECT_EQ(p + zero, p);
  EXPECT_TRUE((p + negate(p)).is_zero());
  EXPECT_EQ((p - q) + (q - r), p - r);
  EXPECT_EQ(add(p, q), q + p);
  EXPECT_THROW(p + Divisor::point(fx::dumbbell(), Point::at_vertex(0)), GraphMismatch);
}

TEST(Divisor, DivOfSegmentSlope) {
  auto s = fx::segment();
  // slope 1 from u to v
  PLFunction f = PLFunction::from_knots(s, {0, 1}, {{k(0, 0), k(1, 1)}});
  EXPECT_EQ(div_of(f), Divisor::point(s, vtx(*s, "v")) - Divisor::point(s, vtx(*s, "u")));
  EXPECT_TRUE(div_of(PLFunction::constant(s, 5)).is_zero());
}

TEST(Divisor, DivOfPeaceSignFunction) {
  auto g = fx::peace_sign();
  // zero at delta, slope 1 along the spokes, constant on the outer circle
  std::vector<Rational> vv = {1, 1, 0, 1};
  std::vector<std::vector<PLFunction::Knot>> knots(g->num_edges());
  for (int e = 0; e < g->num_edges(); ++e) {
    const Edge& ed = g->edge(e);
    knots[e] = {k(0, vv[ed.u]), k(ed.length, vv[ed.v])};
  }
  Divisor want = Divisor::point(g, vtx(*g, "alpha")) + Divisor::point(g, vtx(*g, "beta")) + Divisor::point(g, vtx(*g, "gamma")) -
                 3 * Divisor::point(g, vtx(*g, "delta"));
  EXPECT_EQ(div_of(PLFunction::from_knots(g, vv, knots)), want);
}

TEST(Divisor, DivOfInteriorKink) {
  auto c = fx::cycle();
  // slope 2 up to 1/4, then -2 down to 3/4, then 2 back: incoming slopes
  // sum to 4 at the peak and -4 at the trough
  PLFunction f = PLFunction::from_knots(c, {0}, {{k(0, 0), k(make_rational(1, 4), make_rational(1, 2)), k(make_rational(3, 4), make_rational(-1, 2)), k(1, 0)}});
  Divisor want = 4 * Divisor::point(c, at(*c, "c", make_rational(1, 4))) - 4 * Divisor::point(c, at(*c, "c", make_rational(3, 4)));
  EXPECT_EQ(div_of(f), want);
}

TEST(Divisor, RejectsInvalidFunctions) {
  auto s = fx::segment();
  // non-integer slope
  EXPECT_THROW(PLFunction::from_knots(s, {0, 1}, {{k(0, 0), k(1, make_rational(1, 2))}}), InvariantViolation);
  // value at the endpoint disagrees with the vertex
  EXPECT_THROW(PLFunction::from_knots(s, {0, 1}, {{k(0, 0), k(1, 2)}}), InvariantViolation);
}

TEST(Divisor, CanonicalExamples) {
  EXPECT_TRUE(canonical(fx::cycle()).is_zero());
  auto ps = fx::peace_sign();
  Divisor want(ps);
  for (const auto& v : {"alpha", "beta", "gamma", "delta"}) want.add(vtx(*ps, v), 1);
  EXPECT_EQ(canonical(ps), want);
  auto t = fx::theta();
  EXPECT_EQ(canonical(t), Divisor::point(t, vtx(*t, "p")) + Divisor::point(t, vtx(*t, "w")));
}

TEST(Divisor, CanonicalDegree) {
  for (const auto& f : fx::all()) EXPECT_EQ(canonical(f.graph).degree(), 2 * betti1(*f.graph) - 2) << f.name;
}

TEST(Divisor, CanonicalIsModelIndependent) {
  Sampler s(5);
  for (const auto& f : fx::all()) {
    std::vector<Point> pts;
    for (int i = 0; i < 3; ++i) pts.push_back(s.interior_point(*f.graph));
    auto sub = subdivide(*f.graph, pts);
    Divisor ks = canonical(share(sub.graph));
    Divisor k0 = canonical(f.graph);
    for (const auto& [p, c] : ks.terms()) {
      ASSERT_TRUE(p.is_vertex());
      ASSERT_LT(p.vertex(), sub.original_vertices) << f.name;
      EXPECT_EQ(c, k0[p]) << f.name;
    }
    EXPECT_EQ(ks.degree(), k0.degree());
  }
}

TEST(Divisor, FireWholeGraph) {
  for (const auto& f : fx::all()) {
    Subgraph all;
    for (int e = 0; e < f.graph->num_edges(); ++e) all.edges.insert(e);
    for (int v = 0; v < f.graph->num_vertices(); ++v) all.vertices.insert(v);
    EXPECT_TRUE(fire_subset(f.graph, all, make_rational(1, 10)).is_zero()) << f.name;
  }
}

TEST(Divisor, FireSinglePoint) {
  auto t = fx::theta();
  Rational x = make_rational(1, 2), eps = make_rational(1, 8);
  Subgraph a;
  a.intervals.push_back({t->edge_index("e2"), x, x});
  Divisor want = Divisor::point(t, at(*t, "e2", x - eps)) + Divisor::point(t, at(*t, "e2", x + eps)) - 2 * Divisor::point(t, at(*t, "e2", x));
  EXPECT_EQ(fire_subset(t, a, eps), want);
}

TEST(Divisor, FireVertexSendsChipsAlongEveryEdge) {
  auto t = fx::theta();
  Subgraph a;
  a.vertices.insert(t->vertex_index("p"));
  Rational eps = make_rational(1, 2);
  Divisor want = -3 * Divisor::point(t, vtx(*t, "p"));
  for (const auto& e : {"e1", "e2", "e3"}) want.add(at(*t, e, eps), 1);
  EXPECT_EQ(fire_subset(t, a, eps), want);
}

TEST(Divisor, FireRejectsLargeEps) {
  auto t = fx::theta();
  Subgraph a;
  a.vertices.insert(t->vertex_index("p"));
  EXPECT_THROW(fire_subset(t, a, make_rational(3, 2)), EpsTooLarge);
  Subgraph two;
  two.intervals.push_back({0, make_rational(1, 4), make_rational(1, 4)});
  two.intervals.push_back({0, make_rational(1, 2), make_rational(1, 2)});
  EXPECT_THROW(fire_subset(t, two, make_rational(1, 5)), EpsTooLarge);
  EXPECT_NO_THROW(fire_subset(t, two, make_rational(1, 8)));
}

TEST(Divisor, PrincipalDivisorsHaveDegreeZero) {
  Sampler s(17);
  for (const auto& f : fx::all()) {
    for (int i = 0; i < 30; ++i) {
      PLFunction a = s.pl_function(f.graph), b = s.pl_function(f.graph);
      a.validate();
      EXPECT_EQ(div_of(a).degree(), 0) << f.name;
      EXPECT_EQ(div_of(a + b), div_of(a) + div_of(b)) << f.name;
      EXPECT_EQ(div_of(3 * a), 3 * div_of(a)) << f.name;
      EXPECT_TRUE(div_of(a + (-a)).is_zero()) << f.name;
    }
  }
}

TEST(Divisor, EffectivityAndSupport) {
  auto d = fx::dumbbell();
  Point x = at(*d, "b", make_rational(1, 2)), y = at(*d, "e", 1);
  Divisor a = 2 * Divisor::point(d, x) - Divisor::point(d, y);
  EXPECT_FALSE(a.is_effective());
  EXPECT_TRUE(a.effective_away_from(y));
  EXPECT_EQ(a.positive_part(), 2 * Divisor::point(d, x));
  EXPECT_EQ(a.support().size(), 2u);
}
