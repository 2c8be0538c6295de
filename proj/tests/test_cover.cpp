#include "tropdiv/cover.hpp"
#include "tropdiv/fixtures.hpp"
#include "tropdiv/random.hpp"
#include "tropdiv/reduce.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <set>

using namespace tropdiv;
namespace fx = tropdiv::fixtures;

namespace {

Point at(const MetricGraph& g, const std::string& edge, const Rational& t) { return Point::on_edge(g, g.edge_index(edge), t); }

/// Component count of the total graph by union-find.
int components(const MetricGraph& g) {
  std::vector<int> parent(g.num_vertices());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int n = g.num_vertices();
  for (const auto& e : g.edges()) {
    int a = root(e.u), b = root(e.v);
    if (a != b) {
      parent[a] = b;
      --n;
    }
  }
  return n;
}

using EndPair = std::pair<std::string, std::string>;

/// Endpoints of the two lifts of a base edge, as vertex ids.
std::set<EndPair> lift_ends(const DoubleCover& c, const std::string& edge) {
  const MetricGraph& t = *c.total;
  std::set<EndPair> out;
  for (const auto& sign : {"+", "-"}) {
    const Edge& e = t.edge(t.edge_index(edge + sign));
    out.insert({t.vertex_id(e.u), t.vertex_id(e.v)});
  }
  return out;
}

int loops(const MetricGraph& g) {
  int n = 0;
  for (const auto& e : g.edges()) n += e.is_loop();
  return n;
}

std::vector<DoubleCover> every_cover() {
  std::vector<DoubleCover> out;
  for (const auto& f : fx::all())
    for (auto& c : enumerate_covers(f.graph, first_spanning_tree(*f.graph))) out.push_back(std::move(c));
  return out;
}

}  // namespace

TEST(Cover, CountsArePowersOfTwo) {
  EXPECT_EQ(enumerate_covers(fx::theta(), {1}).size(), 4u);
  EXPECT_EQ(enumerate_covers(fx::dumbbell(), {0}).size(), 4u);
  EXPECT_EQ(enumerate_covers(fx::tripod(), {0, 1, 2}).size(), 1u);
  auto ch = fx::chain3();
  EXPECT_EQ(enumerate_covers(ch, first_spanning_tree(*ch)).size(), 8u);
  for (const auto& f : fx::all()) {
    auto covers = enumerate_covers(f.graph, first_spanning_tree(*f.graph));
    EXPECT_EQ(covers.size(), std::size_t{1} << betti1(*f.graph)) << f.name;
  }
}

TEST(Cover, OnlyTheAllStraightCoverIsDisconnected) {
  for (const auto& f : fx::all()) {
    const MetricGraph& g = *f.graph;
    for (const auto& s : enumerate_signs(g, first_spanning_tree(g))) {
      bool any = false;
      for (const auto& [e, sw] : s.swapped) any = any || sw;
      auto c = build_cover(f.graph, s);
      EXPECT_EQ(components(*c.total), any ? 1 : 2) << f.name;
      EXPECT_EQ(c.connected(), any) << f.name;
    }
  }
}

TEST(Cover, LiftsFollowTheSigns) {
  for (const auto& f : fx::all()) {
    const MetricGraph& g = *f.graph;
    for (const auto& s : enumerate_signs(g, first_spanning_tree(g))) {
      auto c = build_cover(f.graph, s);
      for (int e = 0; e < g.num_edges(); ++e) {
        const Edge& be = g.edge(e);
        std::string u = g.vertex_id(be.u), v = g.vertex_id(be.v);
        bool sw = s.swapped.count(e) && s.swapped.at(e);
        std::set<EndPair> want = sw ? std::set<EndPair>{{u + "+", v + "-"}, {u + "-", v + "+"}}
                                    : std::set<EndPair>{{u + "+", v + "+"}, {u + "-", v + "-"}};
        EXPECT_EQ(lift_ends(c, be.id), want) << f.name << ' ' << be.id;
        for (const auto& sign : {"+", "-"}) EXPECT_EQ(c.total->edge(c.total->edge_index(be.id + sign)).length, be.length);
      }
    }
  }
}

TEST(Cover, TwoLoopPictures) {
  auto d = fx::dumbbell();
  auto both = build_cover(d, fx::dumbbell_both_swapped(*d));
  // each loop opens into a bigon between the two lifts of its vertex
  EXPECT_EQ(loops(*both.total), 0);
  EXPECT_EQ(lift_ends(both, "e"), (std::set<EndPair>{{"u+", "u-"}, {"u-", "u+"}}));
  EXPECT_EQ(lift_ends(both, "f"), (std::set<EndPair>{{"w+", "w-"}, {"w-", "w+"}}));
  EXPECT_EQ(lift_ends(both, "b"), (std::set<EndPair>{{"u+", "w+"}, {"u-", "w-"}}));

  auto one = build_cover(d, fx::dumbbell_one_swapped(*d));
  // one bigon, and the straight loop lifts to a loop at each copy of w
  EXPECT_EQ(loops(*one.total), 2);
  EXPECT_EQ(lift_ends(one, "e"), (std::set<EndPair>{{"u+", "u-"}, {"u-", "u+"}}));
  EXPECT_EQ(lift_ends(one, "f"), (std::set<EndPair>{{"w+", "w+"}, {"w-", "w-"}}));
}

TEST(Cover, StraightCoverIsTwoCopies) {
  auto t = fx::theta();
  auto c = build_cover(t, fx::signs(*t, {"e2"}, {}));
  EXPECT_FALSE(c.connected());
  EXPECT_EQ(components(*c.total), 2);
  EXPECT_THROW(cover_genus(c), DisconnectedCover);
}

TEST(Cover, GenusExamples) {
  auto d = fx::dumbbell();
  EXPECT_EQ(cover_genus(build_cover(d, fx::dumbbell_both_swapped(*d))), 3);
  EXPECT_EQ(cover_genus(build_cover(d, fx::dumbbell_one_swapped(*d))), 3);
  auto t = fx::theta();
  EXPECT_EQ(cover_genus(build_cover(t, fx::theta_cover(*t))), 3);
  auto c = fx::cycle();
  EXPECT_EQ(cover_genus(build_cover(c, fx::cycle_cover(*c))), 1);
}

TEST(Cover, GenusDoublesMinusOne) {
  for (const auto& f : fx::all()) {
    for (const auto& c : enumerate_covers(f.graph, first_spanning_tree(*f.graph))) {
      if (!c.connected()) continue;
      EXPECT_EQ(cover_genus(c), 2 * betti1(*f.graph) - 1) << f.name;
      // Euler characteristic doubles as well
      EXPECT_EQ(c.total->num_vertices(), 2 * f.graph->num_vertices());
      EXPECT_EQ(c.total->num_edges(), 2 * f.graph->num_edges());
    }
  }
}

TEST(Cover, RejectsBadTrees) {
  auto t = fx::theta();
  EXPECT_THROW(enumerate_covers(t, {0, 1}), NotASpanningTree);
  EXPECT_THROW(build_cover(t, fx::signs(*t, {}, {"e1"})), NotASpanningTree);
}

TEST(Cover, InvolutionIsAFreeAutomorphism) {
  for (const auto& c : every_cover()) {
    EXPECT_NO_THROW(c.validate());
    const MetricGraph& t = *c.total;
    for (int v = 0; v < t.num_vertices(); ++v) {
      EXPECT_NE(c.vertex_swap[v], v);
      EXPECT_EQ(c.vertex_swap[c.vertex_swap[v]], v);
      EXPECT_EQ(c.vertex_map[c.vertex_swap[v]], c.vertex_map[v]);
    }
    for (int e = 0; e < t.num_edges(); ++e) {
      int ie = c.edge_swap[e];
      EXPECT_NE(ie, e);
      EXPECT_EQ(c.edge_swap[ie], e);
      EXPECT_EQ(t.edge(ie).u, c.vertex_swap[t.edge(e).u]);
      EXPECT_EQ(t.edge(ie).v, c.vertex_swap[t.edge(e).v]);
      EXPECT_EQ(t.edge(e).length, c.base->edge(c.edge_map[e]).length);
    }
  }
}

TEST(Cover, ValidateCatchesBrokenMaps) {
  auto d = fx::dumbbell();
  auto good = build_cover(d, fx::dumbbell_both_swapped(*d));

  auto fixed = good;
  std::iota(fixed.vertex_swap.begin(), fixed.vertex_swap.end(), 0);
  EXPECT_THROW(fixed.validate(), InvariantViolation);

  auto wrong = good;
  wrong.edge_map[0] = wrong.edge_map[0] == 0 ? 1 : 0;
  EXPECT_THROW(wrong.validate(), InvariantViolation);
}

TEST(Norm, Examples) {
  Sampler s(2);
  for (const auto& c : every_cover()) {
    Point p = s.point(*c.total);
    Divisor pt = Divisor::point(c.total, p);
    EXPECT_TRUE(norm(c, pt - involute(c, pt)).is_zero());
    EXPECT_NE(c.involution(p), p);
  }
}

TEST(Norm, PullbackDoubles) {
  Sampler s(4);
  for (const auto& c : every_cover()) {
    for (int i = 0; i < 3; ++i) {
      Divisor d = s.divisor(c.base, s.integer(-2, 3), 3);
      EXPECT_EQ(norm(c, pullback(c, d)), 2 * d);
      EXPECT_EQ(involute(c, pullback(c, d)), pullback(c, d));
    }
  }
}

TEST(Norm, InvolutionProperties) {
  Sampler s(6);
  for (const auto& c : every_cover()) {
    for (int i = 0; i < 3; ++i) {
      Divisor d = s.divisor(c.total, s.integer(-2, 3), 3);
      EXPECT_EQ(involute(c, involute(c, d)), d);
      EXPECT_EQ(norm(c, involute(c, d)), norm(c, d));
      EXPECT_EQ(norm(c, d).degree(), d.degree());
    }
  }
}

TEST(Norm, PreservesEquivalence) {
  Sampler s(8);
  for (const auto& f : fx::all()) {
    if (!f.cover) continue;
    auto c = build_cover(f.graph, *f.cover);
    for (int i = 0; i < 6; ++i) {
      Divisor a = s.divisor(c.total, s.integer(0, 2), 2);
      Divisor b = a + div_of(s.pl_function(c.total, 1));
      EXPECT_TRUE(is_equivalent(norm(c, a), norm(c, b))) << f.name;
    }
  }
}

TEST(Norm, ExampleOnTheTwoLoopCover) {
  // x + y - p - q with all four over the bridge: its norm is principal
  auto d = fx::dumbbell();
  auto c = build_cover(d, fx::dumbbell_both_swapped(*d));
  const MetricGraph& t = *c.total;
  Point x = at(t, "b+", make_rational(1, 4)), y = at(t, "b+", make_rational(3, 4)), p = at(t, "b+", make_rational(1, 2));
  Divisor dd = Divisor::point(c.total, x) + Divisor::point(c.total, y) - Divisor::point(c.total, p) -
               Divisor::point(c.total, c.involution(p));
  EXPECT_TRUE(is_equivalent(norm(c, dd), Divisor(c.base)));
}
