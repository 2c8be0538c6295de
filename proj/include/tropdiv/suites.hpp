#pragma once

// Randomized verification suites shared by `tropdiv check-all` and the
// acceptance binary. Every suite is deterministic for a fixed seed.

#include "tropdiv/fixtures.hpp"
#include "tropdiv/jacobian.hpp"
#include "tropdiv/prym.hpp"
#include "tropdiv/random.hpp"
#include "tropdiv/rank.hpp"
#include "tropdiv/reduce.hpp"

#include <cstdio>
#include <queue>
#include <sstream>

namespace tropdiv {

/// FNV-1a over the textual form of the inputs a check consumed.
class Digest {
 public:
  void add(const std::string& s) {
    for (unsigned char ch : s) {
      h_ ^= ch;
      h_ *= 1099511628211ull;
    }
    h_ ^= 0xff;
    h_ *= 1099511628211ull;
  }
  void add(const Divisor& d) { add(describe(d)); }
  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h_));
    return buf;
  }

 private:
  std::uint64_t h_ = 1469598103934665603ull;
};

struct Check {
  std::string suite;
  std::string name;
  std::string inputs;
  bool pass = false;
  std::string values;
};

class Report {
 public:
  void add(std::string suite, std::string name, const Digest& inputs, bool pass, std::string values) {
    checks_.push_back({std::move(suite), std::move(name), inputs.hex(), pass, std::move(values)});
  }
  void merge(const Report& other) { checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end()); }

  const std::vector<Check>& checks() const { return checks_; }
  int failures() const {
    int n = 0;
    for (const auto& c : checks_) n += c.pass ? 0 : 1;
    return n;
  }
  bool ok() const { return failures() == 0; }

  /// One line per check, then a summary line.
  std::string render() const {
    std::ostringstream out;
    for (const auto& c : checks_)
      out << (c.pass ? "PASS" : "FAIL") << ' ' << c.suite << ' ' << c.name << " inputs=" << c.inputs
          << (c.values.empty() ? "" : " ") << c.values << '\n';
    out << "summary checks=" << checks_.size() << " pass=" << checks_.size() - failures() << " fail=" << failures() << '\n';
    return out.str();
  }

 private:
  std::vector<Check> checks_;
};

namespace suites {

struct Named {
  std::string name;
  GraphPtr graph;
};

inline std::vector<Named> rr_fixtures() {
  return {{"theta", fixtures::theta()},
          {"dumbbell", fixtures::dumbbell()},
          {"peace_sign", fixtures::peace_sign()},
          {"chain3", fixtures::chain3()},
          {"k4", fixtures::k4()}};
}

inline std::vector<Named> all_fixtures() {
  std::vector<Named> out;
  for (auto& f : fixtures::all()) out.push_back({f.name, f.graph});
  return out;
}

inline std::string kv(const std::string& k, const std::string& v) { return k + "=" + v; }
inline std::string kv(const std::string& k, std::int64_t v) { return k + "=" + std::to_string(v); }

/// r(D) - r(K - D) = deg D - g + 1 on random divisors of degree in [-2, 2g].
inline Report riemann_roch(std::uint64_t seed, int trials, const std::vector<Named>& graphs = rr_fixtures()) {
  Report rep;
  Sampler s(seed);
  for (const auto& [name, g] : graphs) {
    const int genus = betti1(*g);
    Digest dig;
    int holds = 0;
    std::string first_bad;
    for (int i = 0; i < trials; ++i) {
      Divisor d = s.divisor(g, s.integer(-2, 2 * genus), 3);
      dig.add(d);
      auto r = riemann_roch_residual(d);
      if (r.holds()) {
        ++holds;
      } else if (first_bad.empty()) {
        first_bad = " counterexample=" + describe(d) + " r_d=" + std::to_string(r.r_d) + " r_k_minus_d=" + std::to_string(r.r_k_minus_d);
      }
    }
    rep.add("riemann-roch", name, dig, holds == trials, kv("trials", trials) + " " + kv("holds", holds) + first_bad);
  }
  return rep;
}

inline std::string serialize_lengths(const MetricGraph& g) {
  std::string s;
  for (const auto& e : g.edges()) s += e.id + ":" + to_string(e.length) + ";";
  return s;
}

/// Theta period matrix in the basis e1 - e2, e2 - e3.
inline HomologyBasis theta_standard_basis(const GraphPtr& g) {
  return homology_basis_from_cycles(g, {g->edge_index("e2")}, {{1, -1, 0}, {0, 1, -1}});
}

/// det(period matrix) = sum over spanning trees of the product of the
/// lengths off the tree, under random lengths.
inline Report kirchhoff(std::uint64_t seed, int trials) {
  Report rep;
  Sampler s(seed);
  for (const auto& [name, g] : all_fixtures()) {
    Digest dig;
    int holds = 0;
    std::string last;
    for (int i = 0; i < trials; ++i) {
      GraphPtr h = share(s.relength(*g));
      dig.add(serialize_lengths(*h));
      auto r = kirchhoff_check(h);
      holds += r.holds() ? 1 : 0;
      last = kv("det", to_string(r.det)) + " " + kv("tree_sum", to_string(r.tree_sum));
    }
    rep.add("kirchhoff", name, dig, holds == trials, kv("trials", trials) + " " + kv("holds", holds) + " last: " + last);
  }
  for (int i = 0; i < 5; ++i) {
    Rational l1 = s.length(), l2 = s.length(), l3 = s.length();
    GraphPtr g = fixtures::theta(l1, l2, l3);
    Digest dig;
    dig.add(serialize_lengths(*g));
    PeriodMatrix p = period_matrix(theta_standard_basis(g));
    RatMatrix want = {{l1 + l2, -l2}, {-l2, l2 + l3}};
    rep.add("kirchhoff", "theta-matrix-" + std::to_string(i), dig, p.m == want,
            kv("l", to_string(l1) + "," + to_string(l2) + "," + to_string(l3)) + " " +
                kv("m", "[[" + to_string(p.m[0][0]) + "," + to_string(p.m[0][1]) + "],[" + to_string(p.m[1][0]) + "," +
                            to_string(p.m[1][1]) + "]]"));
  }
  return rep;
}

/// reduce(D) = reduce(D + div f), reduce is idempotent, and the witness
/// reproduces the reduction.
inline Report reduce_uniqueness(std::uint64_t seed, int trials) {
  Report rep;
  Sampler s(seed);
  auto graphs = all_fixtures();
  Digest dig;
  int same = 0, idem = 0, wit = 0;
  std::string first_bad;
  for (int i = 0; i < trials; ++i) {
    const GraphPtr& g = graphs[i % graphs.size()].graph;
    Divisor d = s.divisor(g, s.integer(-2, 4), 3);
    PLFunction f = s.pl_function(g);
    Divisor e = d + div_of(f);
    Point q = s.point(*g);
    dig.add(describe(d) + "|" + describe(e) + "|" + describe(*g, q));
    Reduction rd = reduce_with_witness(d, q);
    Reduction re = reduce_with_witness(e, q);
    bool ok_same = rd.divisor == re.divisor;
    bool ok_idem = reduce(rd.divisor, q) == rd.divisor;
    bool ok_wit = d + div_of(rd.witness) == rd.divisor && e + div_of(re.witness) == re.divisor;
    same += ok_same;
    idem += ok_idem;
    wit += ok_wit;
    if (!(ok_same && ok_idem && ok_wit) && first_bad.empty())
      first_bad = " counterexample=" + graphs[i % graphs.size()].name + ":" + describe(d) + "~" + describe(e);
  }
  rep.add("reduce", "uniqueness", dig, same == trials, kv("pairs", trials) + " " + kv("identical", same) + first_bad);
  rep.add("reduce", "idempotent", dig, idem == trials, kv("pairs", trials) + " " + kv("idempotent", idem));
  rep.add("reduce", "witness", dig, wit == trials, kv("pairs", trials) + " " + kv("reproduced", wit));
  return rep;
}

/// is_equivalent against torus_eq of Abel-Jacobi images, half of the pairs
/// equivalent by construction.
inline Report cross_oracle(std::uint64_t seed, int trials) {
  Report rep;
  Sampler s(seed);
  for (const auto& [name, g] : all_fixtures()) {
    AbelJacobi aj(homology_basis(g, first_spanning_tree(*g)));
    Point base = canonical_base(*g);
    Digest dig;
    int agree = 0, equivalent = 0;
    for (int i = 0; i < trials; ++i) {
      std::int64_t deg = s.integer(-2, 3);
      Divisor a = s.divisor(g, deg, 3);
      Divisor b = i % 2 == 0 ? a + div_of(s.pl_function(g)) : s.divisor(g, deg, 3);
      dig.add(describe(a) + "|" + describe(b));
      bool dhar = is_equivalent(a, b);
      bool lattice = torus_eq(aj(a, base), aj(b, base));
      agree += dhar == lattice;
      equivalent += dhar;
    }
    rep.add("cross-oracle", name, dig, agree == trials, kv("pairs", trials) + " " + kv("agree", agree) + " " + kv("equivalent", equivalent));
  }
  return rep;
}

/// Whether the two lifts of a base vertex are joined in the total graph,
/// found by a search that only looks at total edges.
inline bool lifts_joined(const DoubleCover& c) {
  const MetricGraph& t = *c.total;
  std::vector<std::vector<int>> adj(t.num_vertices());
  for (const auto& e : t.edges()) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<bool> seen(t.num_vertices(), false);
  std::queue<int> q;
  q.push(c.vertex_lifts[0][0]);
  seen[c.vertex_lifts[0][0]] = true;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        q.push(w);
      }
  }
  return seen[c.vertex_lifts[0][1]];
}

/// 2^g covers per tree, genus 2g - 1 for connected ones, and a single
/// disconnected cover which is the all-straight one.
inline Report cover_census() {
  Report rep;
  for (const auto& [name, g] : all_fixtures()) {
    const int genus = betti1(*g);
    auto tree = first_spanning_tree(*g);
    auto signs = enumerate_signs(*g, tree);
    auto covers = enumerate_covers(g, tree);
    Digest dig;
    dig.add(serialize_lengths(*g));
    int disconnected = 0, brute_disconnected = 0, good_genus = 0, straight_disconnected = 0;
    for (std::size_t i = 0; i < covers.size(); ++i) {
      const auto& c = covers[i];
      bool any_swap = false;
      for (const auto& [e, sw] : signs[i].swapped) any_swap = any_swap || sw;
      if (!lifts_joined(c)) ++brute_disconnected;
      if (!c.connected()) {
        ++disconnected;
        straight_disconnected += any_swap ? 0 : 1;
      } else if (betti1(*c.total) == 2 * genus - 1) {
        ++good_genus;
      }
    }
    const std::int64_t expected = std::int64_t{1} << genus;
    bool ok = static_cast<std::int64_t>(covers.size()) == expected && disconnected == brute_disconnected && disconnected == 1 &&
              straight_disconnected == 1 && good_genus == static_cast<int>(covers.size()) - disconnected;
    rep.add("covers", name, dig, ok,
            kv("covers", static_cast<std::int64_t>(covers.size())) + " " + kv("expected", expected) + " " +
                kv("disconnected", disconnected) + " " + kv("brute_disconnected", brute_disconnected) + " " +
                kv("genus_ok", good_genus));
  }
  return rep;
}

/// Random degree-(g-1) divisors with interior support on the total graph.
inline Divisor interior_divisor(Sampler& s, const GraphPtr& g, int degree) {
  Divisor d(g);
  for (int i = 0; i < degree; ++i) d.add(s.interior_point(*g), 1);
  return d;
}

/// Sum of weights over each Abel-Prym fiber equals 2^(g-1), for `trials`
/// generic representatives on every connected cover. Non-generic samples
/// are skipped and counted.
inline Report prym_fibers(std::uint64_t seed, int trials, const std::vector<Named>& graphs = {{"dumbbell", fixtures::dumbbell()},
                                                                                             {"theta", fixtures::theta()},
                                                                                             {"chain3", fixtures::chain3()}}) {
  Report rep;
  Sampler s(seed);
  for (const auto& [name, g] : graphs) {
    const int genus = betti1(*g);
    auto signs = enumerate_signs(*g, first_spanning_tree(*g));
    for (std::size_t k = 0; k < signs.size(); ++k) {
      DoubleCover c = build_cover(g, signs[k]);
      if (!c.connected()) continue;
      PrymSpace space(c);
      Digest dig;
      int generic = 0, holds = 0, skipped = 0, attempts = 0;
      std::string first_bad;
      while (generic < trials && attempts < 200 * trials) {
        ++attempts;
        Divisor e0 = interior_divisor(s, c.total, genus - 1);
        try {
          FiberResult f = abel_prym_fiber(space, e0);
          dig.add(e0);
          ++generic;
          if (f.holds()) {
            ++holds;
          } else if (first_bad.empty()) {
            first_bad = " counterexample=" + describe(e0) + " sum=" + std::to_string(f.weight_sum);
          }
        } catch (const GenericityFailure&) {
          ++skipped;
        }
      }
      rep.add("prym-fiber", name + "/cover" + std::to_string(k), dig, generic == trials && holds == trials,
              kv("generic", generic) + " " + kv("holds", holds) + " " + kv("skipped", skipped) + " " +
                  kv("expected", std::int64_t{1} << (genus - 1)) + first_bad);
    }
  }
  return rep;
}

/// Rank spot values and the proof direction of Clifford's inequality.
inline Report rank_spots(std::uint64_t seed, int trials) {
  Report rep;
  Sampler s(seed);
  {
    GraphPtr g = fixtures::cycle();
    Digest dig;
    int ok = 0;
    for (int i = 0; i < trials; ++i) {
      Divisor d = Divisor::point(g, s.point(*g)) + Divisor::point(g, s.point(*g));
      dig.add(d);
      ok += rank(d) == 1;
    }
    rep.add("rank", "cycle-two-points", dig, ok == trials, kv("trials", trials) + " " + kv("rank_one", ok));
  }
  {
    GraphPtr g = fixtures::tripod();
    Digest dig;
    int ok = 0;
    for (int i = 0; i < trials; ++i) {
      std::int64_t deg = s.integer(0, 4);
      Divisor d = s.divisor(g, deg, 3);
      dig.add(d);
      ok += rank(d) == deg;
    }
    rep.add("rank", "tree-degree", dig, ok == trials, kv("trials", trials) + " " + kv("rank_is_degree", ok));
  }
  for (const auto& [name, g] : all_fixtures()) {
    const int genus = betti1(*g);
    Digest dig;
    int neg = 0;
    for (int i = 0; i < trials; ++i) {
      Divisor d = s.divisor(g, -1, 3);
      dig.add(d);
      neg += rank(d) == -1;
    }
    int rk = rank(canonical(g));
    rep.add("rank", name + "/degree-minus-one", dig, neg == trials, kv("trials", trials) + " " + kv("minus_one", neg));
    Digest kd;
    kd.add(canonical(g));
    rep.add("rank", name + "/canonical", kd, rk == genus - 1, kv("r_K", rk) + " " + kv("g_minus_1", genus - 1));
    if (genus == 0) continue;
    Digest cd;
    int applicable = 0, ok = 0;
    RankSolver solver(g);
    for (int i = 0; i < trials; ++i) {
      std::int64_t deg = s.integer(0, 2 * genus - 2);
      Divisor d = s.effective(g, deg);
      if (!effective_rep(canonical(g) - d)) continue;
      cd.add(d);
      ++applicable;
      ok += 2 * solver.rank(d) <= deg;
    }
    rep.add("rank", name + "/clifford", cd, applicable > 0 && ok == applicable, kv("applicable", applicable) + " " + kv("holds", ok));
  }
  return rep;
}

/// Grid of base points: every vertex and `steps - 1` interior points per edge.
inline std::vector<Point> grid(const MetricGraph& g, long steps) {
  std::vector<Point> out;
  for (int v = 0; v < g.num_vertices(); ++v) out.push_back(Point::at_vertex(v));
  for (int e = 0; e < g.num_edges(); ++e)
    for (long j = 1; j < steps; ++j) out.push_back(Point::on_edge(g, e, g.edge(e).length * make_rational(j, steps)));
  return out;
}

/// D has another effective representative iff some q-reduced form differs
/// from D: a different E in |D| has E(q) > D(q) somewhere, and the q-reduced
/// divisor maximizes the coefficient at q.
inline bool rigid_by_search(const Divisor& d, const std::vector<Point>& qs) {
  for (const auto& q : qs)
    if (reduce(d, q) != d) return false;
  return true;
}

/// is_rigid against the exhaustive reduce-based search on effective divisors
/// of degree at most 3 with interior support.
inline Report rigidity(std::uint64_t seed, int trials) {
  Report rep;
  Sampler s(seed);
  for (const auto& [name, g] : std::vector<Named>{{"theta", fixtures::theta()}, {"dumbbell", fixtures::dumbbell()}}) {
    auto qs = grid(*g, 16);
    Digest dig;
    int agree = 0, rigid = 0;
    std::string first_bad;
    for (int i = 0; i < trials; ++i) {
      int deg = static_cast<int>(s.integer(1, 3));
      Divisor d(g);
      for (int k = 0; k < deg; ++k) {
        if (k > 0 && s.integer(0, 5) == 0) {
          d.add(d.support().front(), 1);
          continue;
        }
        int e = static_cast<int>(s.integer(0, g->num_edges() - 1));
        d.add(Point::on_edge(*g, e, s.inside(g->edge(e).length, 4)), 1);
      }
      dig.add(d);
      bool claim = is_rigid(d);
      bool truth = rigid_by_search(d, qs);
      agree += claim == truth;
      rigid += truth;
      if (claim != truth && first_bad.empty()) first_bad = " counterexample=" + describe(d);
    }
    rep.add("rigidity", name, dig, agree == trials && rigid > 0 && rigid < trials, kv("trials", trials) + " " + kv("agree", agree) + " " + kv("rigid", rigid) + first_bad);
  }
  return rep;
}

/// On the theta cover with alpha = e1, beta = e2: a point on a lift of alpha
/// gives a finite cell containing it, a point on a lift of beta gives a
/// positive-dimensional family.
inline Report finiteness() {
  Report rep;
  GraphPtr g = fixtures::theta();
  DoubleCover c = build_cover(g, fixtures::theta_cover(*g));
  PrymSpace space(c);
  const MetricGraph& t = *c.total;
  int alpha = t.edge_index("e1+"), beta = t.edge_index("e2+");
  Rational ta = make_rational(1, 3), tb = make_rational(3, 4);
  Divisor ea = Divisor::point(c.total, Point::on_edge(t, alpha, ta));
  Divisor eb = Divisor::point(c.total, Point::on_edge(t, beta, tb));
  {
    auto cell = space.solve_cell({alpha}, space.abel_prym(ea).point);
    bool found = false;
    for (const auto& sol : cell.solutions) found = found || sol[0] == ta;
    FiberResult f = abel_prym_fiber(space, ea);
    Digest dig;
    dig.add(ea);
    rep.add("finiteness", "alpha-cell", dig, cell.finite && found && !cell.family_meets_interior && f.holds(),
            kv("finite", cell.finite) + " " + kv("solutions", static_cast<std::int64_t>(cell.solutions.size())) + " " +
                kv("weight", weight(c, ea)) + " " + kv("fiber_sum", f.weight_sum));
  }
  {
    auto cell = space.solve_cell({beta}, space.abel_prym(eb).point);
    bool rejected = false;
    try {
      abel_prym_fiber(space, eb);
    } catch (const GenericityFailure&) {
      rejected = true;
    }
    Digest dig;
    dig.add(eb);
    rep.add("finiteness", "beta-cell", dig, !cell.finite && cell.family_meets_interior && weight(c, eb) == 0 && rejected,
            kv("finite", cell.finite) + " " + kv("family", cell.family_meets_interior) + " " + kv("weight", weight(c, eb)));
  }
  return rep;
}

/// Parity equals deg E mod 2 and survives random equivalence moves; the
/// cycle self-cover has exactly two Prym classes.
inline Report parity_classes(std::uint64_t seed, int trials) {
  Report rep;
  Sampler s(seed);
  struct Case {
    std::string name;
    GraphPtr g;
    SignAssignment sign;
  };
  GraphPtr cyc = fixtures::cycle(), db = fixtures::dumbbell(), th = fixtures::theta(), ch = fixtures::chain3();
  std::vector<Case> cases = {{"cycle", cyc, fixtures::cycle_cover(*cyc)},
                             {"dumbbell", db, fixtures::dumbbell_both_swapped(*db)},
                             {"theta", th, fixtures::theta_cover(*th)},
                             {"chain3", ch, fixtures::chain3_all_swapped(*ch)}};
  for (const auto& cs : cases) {
    DoubleCover c = build_cover(cs.g, cs.sign);
    // equivalence on the total graph goes through the lattice route, which
    // the cross-oracle suite checks against Dhar reduction
    AbelJacobi aj(homology_basis(c.total, first_spanning_tree(*c.total)));
    const Point o = Point::at_vertex(0);
    for (int deg : {2, 1}) {
      Divisor e = interior_divisor(s, c.total, deg);
      Divisor anti = e - involute(c, e);
      Parity want = deg % 2 == 0 ? Parity::even : Parity::odd;
      Digest dig;
      dig.add(anti);
      int kept = 0;
      bool direct = parity(c, anti) == want;
      for (int i = 0; i < trials; ++i) {
        Divisor moved = anti + div_of(s.pl_function(c.total, 1));
        dig.add(moved);
        Antisymmetrized a = antisymmetrize(c, moved);
        kept += is_prym(c, moved) && parity(c, a.divisor) == want && torus_eq(aj(a.divisor, o), aj(moved, o));
      }
      rep.add("parity", cs.name + "/" + to_string(want), dig, direct && kept == trials,
              kv("direct", direct) + " " + kv("perturbations", trials) + " " + kv("preserved", kept));
    }
  }
  {
    DoubleCover c = build_cover(cyc, fixtures::cycle_cover(*cyc));
    std::vector<std::pair<Divisor, Parity>> classes;
    Digest dig;
    for (int i = 0; i < 4 * trials; ++i) {
      Divisor e = interior_divisor(s, c.total, static_cast<int>(s.integer(0, 3)));
      Divisor anti = e - involute(c, e);
      dig.add(anti);
      bool known = false;
      for (const auto& [rep_div, par] : classes) known = known || is_equivalent(rep_div, anti);
      if (!known) classes.push_back({anti, parity(c, anti)});
    }
    bool distinct = classes.size() == 2 && classes[0].second != classes[1].second;
    rep.add("parity", "cycle/classes", dig, distinct, kv("classes", static_cast<std::int64_t>(classes.size())));
  }
  return rep;
}

/// Every suite, with `trials` samples where a suite is randomized.
inline Report check_all(std::uint64_t seed, int trials) {
  Report rep;
  rep.merge(riemann_roch(seed, trials));
  rep.merge(kirchhoff(seed + 1, trials));
  rep.merge(reduce_uniqueness(seed + 2, trials));
  rep.merge(cross_oracle(seed + 3, trials));
  rep.merge(cover_census());
  rep.merge(prym_fibers(seed + 5, trials));
  rep.merge(rank_spots(seed + 6, trials));
  rep.merge(rigidity(seed + 7, trials));
  rep.merge(finiteness());
  rep.merge(parity_classes(seed + 9, trials));
  return rep;
}

}  // namespace suites

}  // namespace tropdiv
