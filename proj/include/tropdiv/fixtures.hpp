#pragma once

#include "tropdiv/cover.hpp"

#include <optional>

namespace tropdiv {

struct Fixture {
  std::string name;
  GraphPtr graph;
  std::string note;
  std::optional<SignAssignment> cover;  // a distinguished double cover, if any
};

namespace fixtures {

inline GraphPtr make(std::vector<std::string> vertices, const std::vector<MetricGraph::EdgeSpec>& edges) {
  return share(MetricGraph::from_ids(std::move(vertices), edges));
}

inline Rational q(long n, long d = 1) { return make_rational(n, d); }

inline GraphPtr segment() { return make({"u", "v"}, {{"e", "u", "v", q(1)}}); }

/// Cycle of length 1 as a single loop at o.
inline GraphPtr cycle() { return make({"o"}, {{"c", "o", "o", q(1)}}); }

/// Theta graph: edges e1, e2, e3 oriented away from p.
inline GraphPtr theta(const Rational& l1 = 1, const Rational& l2 = 2, const Rational& l3 = 3) {
  return make({"p", "w"}, {{"e1", "p", "w", l1}, {"e2", "p", "w", l2}, {"e3", "p", "w", l3}});
}

/// Chain of two loops: loop e at u, bridge b from u to w, loop f at w.
inline GraphPtr dumbbell() {
  return make({"u", "w"}, {{"b", "u", "w", q(1)}, {"e", "u", "u", q(2)}, {"f", "w", "w", q(3)}});
}

/// Circle through alpha, beta, gamma with spokes from the centre delta.
inline GraphPtr peace_sign() {
  return make({"alpha", "beta", "delta", "gamma"},
              {{"ab", "alpha", "beta", q(1)},
               {"bg", "beta", "gamma", q(1)},
               {"da", "delta", "alpha", q(1)},
               {"db", "delta", "beta", q(1)},
               {"dg", "delta", "gamma", q(1)},
               {"ga", "gamma", "alpha", q(1)}});
}

inline GraphPtr chain3() {
  return make({"v1", "v2", "v3"}, {{"b1", "v1", "v2", q(1)},
                                    {"b2", "v2", "v3", q(1)},
                                    {"l1", "v1", "v1", q(2)},
                                    {"l2", "v2", "v2", q(3)},
                                    {"l3", "v3", "v3", q(5, 2)}});
}

inline GraphPtr k4() {
  return make({"a", "b", "c", "d"}, {{"ab", "a", "b", q(1)},
                                      {"ac", "a", "c", q(2)},
                                      {"ad", "a", "d", q(3, 2)},
                                      {"bc", "b", "c", q(5, 2)},
                                      {"bd", "b", "d", q(3)},
                                      {"cd", "c", "d", q(7, 3)}});
}

/// Star with three legs meeting at c.
inline GraphPtr tripod() {
  return make({"c", "x", "y", "z"}, {{"cx", "c", "x", q(1)}, {"cy", "c", "y", q(2)}, {"cz", "c", "z", q(3)}});
}

inline SignAssignment signs(const MetricGraph& g, const std::vector<std::string>& tree, const std::vector<std::string>& swapped) {
  SignAssignment s;
  for (const auto& e : tree) s.tree.push_back(g.edge_index(e));
  std::sort(s.tree.begin(), s.tree.end());
  std::vector<bool> in_tree(g.num_edges(), false);
  for (int e : s.tree) in_tree[e] = true;
  for (int e = 0; e < g.num_edges(); ++e)
    if (!in_tree[e]) s.swapped[e] = false;
  for (const auto& e : swapped) s.swapped[g.edge_index(e)] = true;
  return s;
}

/// Dumbbell cover with both loops swapped (connected, the right-hand cover).
inline SignAssignment dumbbell_both_swapped(const MetricGraph& g) { return signs(g, {"b"}, {"e", "f"}); }

/// Dumbbell cover with only the loop e swapped (the left-hand cover).
inline SignAssignment dumbbell_one_swapped(const MetricGraph& g) { return signs(g, {"b"}, {"e"}); }

/// Theta cover in which removing the lifts of e2 disconnects the total graph
/// while removing the lifts of e1 does not: e1 plays alpha, e2 plays beta.
inline SignAssignment theta_cover(const MetricGraph& g) { return signs(g, {"e2"}, {"e1", "e3"}); }

inline SignAssignment cycle_cover(const MetricGraph& g) { return signs(g, {}, {"c"}); }

inline SignAssignment chain3_all_swapped(const MetricGraph& g) { return signs(g, {"b1", "b2"}, {"l1", "l2", "l3"}); }

inline std::vector<Fixture> all() {
  std::vector<Fixture> out;
  out.push_back({"segment", segment(), "line segment, principal divisors of degree 0", std::nullopt});
  auto c = cycle();
  out.push_back({"cycle", c, "cycle of length 1 and its connected self-cover", cycle_cover(*c)});
  auto t = theta();
  out.push_back({"theta", t, "binary graph of genus 2; cover with alpha = e1, beta = e2", theta_cover(*t)});
  auto d = dumbbell();
  out.push_back({"dumbbell", d, "chain of two loops; cover with both loops swapped", dumbbell_both_swapped(*d)});
  out.push_back({"peace_sign", peace_sign(), "peace-sign graph with unit lengths", std::nullopt});
  auto ch = chain3();
  out.push_back({"chain3", ch, "chain of three loops; cover with every loop swapped", chain3_all_swapped(*ch)});
  out.push_back({"k4", k4(), "complete graph on four vertices with mixed lengths", std::nullopt});
  out.push_back({"tripod", tripod(), "tree with three legs", std::nullopt});
  return out;
}

inline std::optional<Fixture> find(const std::string& name) {
  for (auto& f : all())
    if (f.name == name) return f;
  return std::nullopt;
}

}  // namespace fixtures

}  // namespace tropdiv
