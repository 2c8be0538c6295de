#pragma once

#include "tropdiv/cover.hpp"
#include "tropdiv/jacobian.hpp"
#include "tropdiv/reduce.hpp"

#include <functional>

namespace tropdiv {

enum class Parity { even, odd };

inline const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

inline bool is_prym(const DoubleCover& c, const Divisor& d) {
  if (d.degree() != 0) throw DegreeNonZero("Prym membership is defined for degree 0");
  return reduce(norm(c, d), canonical_base(*c.base)).is_zero();
}

inline bool is_anti_symmetric(const DoubleCover& c, const Divisor& d) { return involute(c, d) == -d; }

/// The effective E with d = E - iE, for an anti-symmetric d.
inline Divisor positive_half(const DoubleCover& c, const Divisor& d) {
  if (!is_anti_symmetric(c, d)) throw NotAntiSymmetric("divisor " + describe(d) + " is not of the form E - iE");
  return d.positive_part();
}

struct Antisymmetrized {
  Divisor divisor;
  PLFunction witness;  // on the total graph: input + div(witness) = divisor
};

/// Lifts f from the base so that f~ + f~ o i = f: half the value at every
/// vertex, and on each linear piece of slope s one lift climbs with slope s
/// over the first half while the other climbs over the second half.
inline PLFunction lift_half(const DoubleCover& c, const PLFunction& f) {
  const MetricGraph& b = *c.base;
  const MetricGraph& t = *c.total;
  std::vector<Rational> vv(t.num_vertices());
  for (int v = 0; v < t.num_vertices(); ++v) vv[v] = f.vertex_value(c.vertex_map[v]) / 2;
  std::vector<std::vector<PLFunction::Knot>> knots(t.num_edges());
  for (int e = 0; e < b.num_edges(); ++e) {
    const auto& k = f.knots(e);
    auto& first = knots[c.edge_lifts[e][0]];
    auto& second = knots[c.edge_lifts[e][1]];
    first.push_back({k[0].offset, k[0].value / 2});
    second.push_back({k[0].offset, k[0].value / 2});
    for (std::size_t i = 0; i + 1 < k.size(); ++i) {
      Rational mid = (k[i].offset + k[i + 1].offset) / 2;
      Rational lo = k[i].value / 2, hi = k[i + 1].value / 2;
      Rational rise = k[i + 1].value - k[i].value;
      first.push_back({mid, lo + rise / 2});
      first.push_back({k[i + 1].offset, hi});
      second.push_back({mid, lo});
      second.push_back({k[i + 1].offset, hi});
    }
  }
  PLFunction out = PLFunction::from_knots(c.total, std::move(vv), std::move(knots));
  out.simplify();
  return out;
}

inline Antisymmetrized antisymmetrize(const DoubleCover& c, const Divisor& d) {
  if (d.degree() != 0) throw NotPrym("divisor has nonzero degree");
  Reduction red = reduce_with_witness(norm(c, d), canonical_base(*c.base));
  if (!red.divisor.is_zero()) throw NotPrym("norm of " + describe(d) + " is not principal");
  PLFunction lifted = lift_half(c, red.witness);
  Divisor out = d + div_of(lifted);
  if (!is_anti_symmetric(c, out)) throw InternalError("lifted witness did not produce an anti-symmetric divisor");
  return {std::move(out), std::move(lifted)};
}

inline Parity parity(const DoubleCover& c, const Divisor& anti) {
  return positive_half(c, anti).degree() % 2 == 0 ? Parity::even : Parity::odd;
}

inline Parity prym_parity(const DoubleCover& c, const Divisor& d) { return parity(c, antisymmetrize(c, d).divisor); }

/// Base removal lifted to the total graph: both preimages of each point and
/// of each open edge.
inline Removal lift_removal(const DoubleCover& c, const Removal& r) {
  Removal out;
  for (const auto& p : r.points)
    for (const auto& l : c.lifts(p)) out.points.push_back(l);
  for (int e : r.open_edges)
    for (int l : c.edge_lifts.at(e)) out.open_edges.push_back(l);
  return out;
}

/// Whether the preimage of every component of the base complement is connected.
inline bool is_relatively_connected(const DoubleCover& c, const Removal& removed) {
  CutGraph base(*c.base, removed);
  CutGraph total(*c.total, lift_removal(c, removed));
  std::vector<int> seen(base.num_components(), -1);
  auto visit = [&](int base_comp, int total_comp) {
    if (base_comp < 0) throw InternalError("surviving point projects into the removed set");
    if (seen[base_comp] < 0) seen[base_comp] = total_comp;
    return seen[base_comp] == total_comp;
  };
  for (int v = 0; v < c.total->num_vertices(); ++v) {
    if (!total.vertex_alive(v)) continue;
    if (!visit(base.component_of(c.project(Point::at_vertex(v))), total.vertex_component(v))) return false;
  }
  const auto& pieces = total.pieces();
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    Rational mid = (pieces[i].lo + pieces[i].hi) / 2;
    Point p = Point::on_edge(*c.total, pieces[i].edge, mid);
    if (!visit(base.component_of(c.project(p)), total.piece_component(static_cast<int>(i)))) return false;
  }
  return true;
}

/// Genus of each component of the base with the given edges deleted.
inline std::vector<int> component_genera_without(const MetricGraph& g, const std::vector<int>& removed) {
  std::vector<bool> gone(g.num_edges(), false);
  for (int e : removed) gone.at(e) = true;
  detail::UnionFind uf(g.num_vertices());
  for (int e = 0; e < g.num_edges(); ++e)
    if (!gone[e]) uf.unite(g.edge(e).u, g.edge(e).v);
  std::map<std::size_t, int> id;
  for (int v = 0; v < g.num_vertices(); ++v) id.emplace(uf.find(v), static_cast<int>(id.size()));
  std::vector<int> edges(id.size(), 0), verts(id.size(), 0);
  for (int v = 0; v < g.num_vertices(); ++v) ++verts[id[uf.find(v)]];
  for (int e = 0; e < g.num_edges(); ++e)
    if (!gone[e]) ++edges[id[uf.find(g.edge(e).u)]];
  std::vector<int> out;
  for (std::size_t i = 0; i < id.size(); ++i) out.push_back(edges[i] - verts[i] + 1);
  return out;
}

namespace detail {

inline void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> chosen;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(chosen.size()) == k) {
      fn(chosen);
      return;
    }
    for (int i = start; i < n; ++i) {
      chosen.push_back(i);
      self(self, i + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace detail

/// Sets of d distinct base edges whose open removal leaves a relatively
/// connected complement.
inline std::vector<std::vector<int>> relatively_connected_removals(const DoubleCover& c, int d) {
  std::vector<std::vector<int>> out;
  detail::for_each_subset(c.base->num_edges(), d, [&](const std::vector<int>& s) {
    Removal r;
    r.open_edges = s;
    if (is_relatively_connected(c, r)) out.push_back(s);
  });
  return out;
}

/// Relative spanning trees, each given by the g - 1 removed base edges.
inline std::vector<std::vector<int>> relative_spanning_trees(const DoubleCover& c) {
  if (!c.connected()) throw DisconnectedCover("relative spanning trees need a connected cover");
  const int g = betti1(*c.base);
  std::vector<std::vector<int>> out;
  for (auto& s : relatively_connected_removals(c, g - 1)) {
    bool genus_one = true;
    for (int x : component_genera_without(*c.base, s)) genus_one = genus_one && x == 1;
    if (genus_one) out.push_back(std::move(s));
  }
  if (!relatively_connected_removals(c, g).empty())
    throw InternalError("found g removed edges with a relatively connected complement");
  return out;
}

/// Components of the base minus the support of the norm of E, or 0 when E
/// has a repeated point or that complement is not relatively connected.
inline int complement_count(const DoubleCover& c, const Divisor& e) {
  const int g = betti1(*c.base);
  if (e.degree() != g - 1) throw WrongDegree("weight needs an effective divisor of degree g - 1");
  if (!e.is_effective()) throw InvariantViolation("weight needs an effective divisor");
  Removal r;
  std::set<Point> images;
  for (const auto& [p, k] : e.terms()) {
    if (p.is_vertex()) throw UnsupportedSupport("weight needs support in edge interiors");
    if (k > 1) return 0;
    images.insert(c.project(p));
  }
  r.points.assign(images.begin(), images.end());
  if (!is_relatively_connected(c, r)) return 0;
  return CutGraph(*c.base, r).num_components();
}

/// 2^(k-1) for k complement components, 0 in the degenerate cases. With k
/// itself as the weight the fiber sums fall short of 2^(g-1) once k >= 3;
/// the two agree for k <= 2.
inline std::int64_t weight(const DoubleCover& c, const Divisor& e) {
  int k = complement_count(c, e);
  return k == 0 ? 0 : std::int64_t{1} << (k - 1);
}

struct PrymClass {
  TorusPoint point;
  Parity parity;
};

/// Abel-Jacobi coordinates on the total graph, reused for every Prym
/// computation on one cover.
class PrymSpace {
 public:
  explicit PrymSpace(const DoubleCover& c)
      : cover_(c), aj_(homology_basis(c.total, first_spanning_tree(*c.total))), genus_(betti1(*c.base)) {
    if (!c.connected()) throw DisconnectedCover("Prym computations need a connected cover");
  }

  const DoubleCover& cover() const { return cover_; }
  const AbelJacobi& abel_jacobi() const { return aj_; }
  int base_genus() const { return genus_; }

  PrymClass abel_prym(const Divisor& e) const {
    Divisor d = e - involute(cover_, e);
    std::int64_t deg = e.degree();
    return {aj_(d, Point::at_vertex(0)), deg % 2 == 0 ? Parity::even : Parity::odd};
  }

  bool same_class(const PrymClass& a, const PrymClass& b) const { return a.parity == b.parity && torus_eq(a.point, b.point); }

  struct CellResult {
    std::vector<int> edges;               // total edge per chip, nondecreasing
    bool finite = false;                  // the affine map has full rank on the cell
    std::vector<RatVector> solutions;     // offsets strictly inside the cell
    std::vector<RatVector> boundary;      // isolated solutions on the cell boundary
    bool family_meets_interior = false;   // a positive-dimensional family crosses the open cell
  };

  /// All offsets t in the cell with abel_prym(sum of points) equal to target.
  /// The coordinates of E - iE are affine in t; in lattice coordinates the
  /// condition is B t + c integral, so integer vectors are enumerated over the
  /// bounding box of the image of the closed cell and each one is solved exactly.
  CellResult solve_cell(const std::vector<int>& edges, const TorusPoint& target) const {
    const MetricGraph& t = *cover_.total;
    const std::size_t d = edges.size();
    const std::size_t n = aj_.basis().cycles.size();
    CellResult res;
    res.edges = edges;
    RatMatrix a(n, RatVector(d, 0));
    RatVector b(n, 0);
    for (std::size_t k = 0; k < d; ++k) {
      int e = edges[k];
      int ie = cover_.edge_swap[e];
      RatVector dir = aj_.edge_direction(e), idir = aj_.edge_direction(ie);
      RatVector pu = aj_.point_coords(Point::at_vertex(t.edge(e).u));
      RatVector ipu = aj_.point_coords(Point::at_vertex(t.edge(ie).u));
      for (std::size_t i = 0; i < n; ++i) {
        a[i][k] = dir[i] - idir[i];
        b[i] += pu[i] - ipu[i];
      }
    }
    RatMatrix minv = inverse(aj_.lattice()->m);
    RatVector rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = b[i] - target.coords[i];
    RatMatrix bm(n, RatVector(d, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t j = 0; j < n; ++j) bm[i][k] += minv[i][j] * a[j][k];
    RatVector cv = mat_vec(minv, rhs);

    std::vector<Rational> len(d);
    for (std::size_t k = 0; k < d; ++k) len[k] = t.edge(edges[k]).length;

    if (d == 0) {
      bool integral = true;
      for (const auto& x : cv) integral = integral && is_integer(x);
      res.finite = true;
      if (integral) res.solutions.push_back({});
      return res;
    }

    // Independent rows of B determine everything else.
    std::vector<std::size_t> pivot_rows;
    {
      RatMatrix bt(d, RatVector(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < d; ++k) bt[k][i] = bm[i][k];
      pivot_rows = rref(bt);
    }
    const std::size_t r = pivot_rows.size();
    res.finite = r == d;
    if (r == 0) {
      bool integral = true;
      for (const auto& x : cv) integral = integral && is_integer(x);
      if (integral) res.family_meets_interior = true;
      return res;
    }

    std::vector<BigInt> lo(r), hi(r);
    for (std::size_t j = 0; j < r; ++j) {
      const std::size_t i = pivot_rows[j];
      Rational mn = cv[i], mx = cv[i];
      for (std::size_t k = 0; k < d; ++k) {
        Rational span = bm[i][k] * len[k];
        if (span < 0) mn += span;
        else mx += span;
      }
      lo[j] = ceil_int(mn);
      hi[j] = floor_int(mx);
      if (lo[j] > hi[j]) return res;
    }

    RatMatrix sub(r, RatVector(d));
    for (std::size_t j = 0; j < r; ++j) sub[j] = bm[pivot_rows[j]];
    std::vector<BigInt> lam(lo);
    for (;;) {
      RatVector target_rows(r);
      for (std::size_t j = 0; j < r; ++j) target_rows[j] = Rational(lam[j]) - cv[pivot_rows[j]];
      if (auto sol = solve_affine(sub, target_rows, d)) {
        if (sol->null_basis.empty()) {
          const RatVector& tv = sol->particular;
          if (rows_integral(bm, cv, tv)) {
            bool inside = true, closed = true;
            for (std::size_t k = 0; k < d; ++k) {
              inside = inside && tv[k] > 0 && tv[k] < len[k];
              closed = closed && tv[k] >= 0 && tv[k] <= len[k];
            }
            if (inside) res.solutions.push_back(tv);
            else if (closed) res.boundary.push_back(tv);
          }
        } else if (!res.family_meets_interior && family_consistent(bm, cv, pivot_rows, lam) &&
                   family_meets_box(*sol, len)) {
          res.family_meets_interior = true;
        }
      }
      std::size_t j = 0;
      while (j < r && lam[j] == hi[j]) {
        lam[j] = lo[j];
        ++j;
      }
      if (j == r) break;
      ++lam[j];
    }
    return res;
  }

  /// Nondecreasing multisets of d total edges, i.e. the cells of Sym^d.
  std::vector<std::vector<int>> cells(int d) const {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    const int m = cover_.total->num_edges();
    auto rec = [&](auto&& self, int start) -> void {
      if (static_cast<int>(cur.size()) == d) {
        out.push_back(cur);
        return;
      }
      for (int e = start; e < m; ++e) {
        cur.push_back(e);
        self(self, e);
        cur.pop_back();
      }
    };
    rec(rec, 0);
    return out;
  }

  Divisor divisor_at(const std::vector<int>& edges, const RatVector& offsets) const {
    Divisor f(cover_.total);
    for (std::size_t k = 0; k < edges.size(); ++k) f.add(Point::on_edge(*cover_.total, edges[k], offsets[k]), 1);
    return f;
  }

 private:
  static bool rows_integral(const RatMatrix& bm, const RatVector& cv, const RatVector& tv) {
    for (std::size_t i = 0; i < bm.size(); ++i) {
      Rational x = cv[i];
      for (std::size_t k = 0; k < tv.size(); ++k) x += bm[i][k] * tv[k];
      if (!is_integer(x)) return false;
    }
    return true;
  }

  /// Non-pivot rows are combinations of pivot rows, so their values on the
  /// family are constant; they must be integers too.
  static bool family_consistent(const RatMatrix& bm, const RatVector& cv, const std::vector<std::size_t>& pivots,
                                const std::vector<BigInt>& lam) {
    const std::size_t d = bm.empty() ? 0 : bm[0].size();
    RatMatrix sub(pivots.size(), RatVector(d));
    RatVector rhs(pivots.size());
    for (std::size_t j = 0; j < pivots.size(); ++j) {
      sub[j] = bm[pivots[j]];
      rhs[j] = Rational(lam[j]) - cv[pivots[j]];
    }
    auto sol = solve_affine(sub, rhs, d);
    return sol && rows_integral(bm, cv, sol->particular);
  }

  /// Whether {x0 + N s} meets the open box prod (0, len_k), by Fourier-Motzkin
  /// elimination on strict inequalities.
  static bool family_meets_box(const AffineSolution& sol, const std::vector<Rational>& len) {
    const std::size_t vars = sol.null_basis.size();
    struct Ineq {
      RatVector a;  // a . s < b
      Rational b;
    };
    std::vector<Ineq> sys;
    for (std::size_t k = 0; k < len.size(); ++k) {
      RatVector a(vars);
      for (std::size_t v = 0; v < vars; ++v) a[v] = sol.null_basis[v][k];
      // 0 < x0_k + a.s  and  x0_k + a.s < len_k
      RatVector neg(vars);
      for (std::size_t v = 0; v < vars; ++v) neg[v] = -a[v];
      sys.push_back({neg, sol.particular[k]});
      sys.push_back({a, len[k] - sol.particular[k]});
    }
    for (std::size_t v = vars; v-- > 0;) {
      std::vector<Ineq> pos, neg, keep;
      for (auto& q : sys) {
        if (q.a[v] > 0) pos.push_back(q);
        else if (q.a[v] < 0) neg.push_back(q);
        else keep.push_back(q);
      }
      for (const auto& p : pos)
        for (const auto& n : neg) {
          Rational fp = -n.a[v], fn = p.a[v];
          Ineq c{RatVector(vars), fp * p.b + fn * n.b};
          for (std::size_t w = 0; w < vars; ++w) c.a[w] = fp * p.a[w] + fn * n.a[w];
          c.a[v] = 0;
          keep.push_back(std::move(c));
        }
      sys = std::move(keep);
    }
    for (const auto& q : sys)
      if (!(0 < q.b)) return false;
    return true;
  }

  const DoubleCover& cover_;
  AbelJacobi aj_;
  int genus_;
};

struct WeightedRep {
  Divisor e;
  std::int64_t weight;
};

struct FiberResult {
  std::vector<WeightedRep> reps;
  std::int64_t weight_sum = 0;
  std::int64_t expected = 0;  // 2^(g-1)
  int cells_searched = 0;
  int degenerate_cells = 0;   // cells where the map drops rank

  bool holds() const { return weight_sum == expected; }
};

inline void require_generic(const DoubleCover& c, const Divisor& e0) {
  const int g = betti1(*c.base);
  if (e0.degree() != g - 1) throw WrongDegree("fiber representative must have degree g - 1");
  for (const auto& [p, k] : e0.terms()) {
    if (k < 0) throw InvariantViolation("fiber representative must be effective");
    if (p.is_vertex()) throw GenericityFailure("representative touches vertex '" + c.total->vertex_id(p.vertex()) + "'");
    if (k > 1) throw GenericityFailure("representative has a repeated point");
  }
  if (weight(c, e0) == 0) throw GenericityFailure("complement of the representative's norm is not relatively connected");
}

/// Every effective degree-(g-1) divisor with interior support in the Abel-Prym
/// fiber through a generic representative E0, with weights. Throws
/// GenericityFailure when the fiber meets a cell boundary or a family of
/// positive dimension, since then the class is not generic.
inline FiberResult abel_prym_fiber(const PrymSpace& space, const Divisor& e0) {
  const DoubleCover& c = space.cover();
  require_generic(c, e0);
  const int g = space.base_genus();
  PrymClass target = space.abel_prym(e0);
  FiberResult out;
  out.expected = std::int64_t{1} << (g - 1);
  std::set<Divisor::Terms> seen;
  for (const auto& cell : space.cells(g - 1)) {
    ++out.cells_searched;
    auto res = space.solve_cell(cell, target.point);
    if (!res.finite) ++out.degenerate_cells;
    if (res.family_meets_interior) throw GenericityFailure("fiber contains a positive-dimensional family");
    if (!res.boundary.empty()) throw GenericityFailure("fiber meets the boundary of a cell");
    for (const auto& tv : res.solutions) {
      Divisor f = space.divisor_at(cell, tv);
      if (!seen.insert(f.terms()).second) continue;
      std::int64_t w = weight(c, f);
      out.reps.push_back({f, w});
      if (w > 0) out.weight_sum += w;
    }
  }
  return out;
}

inline FiberResult abel_prym_fiber(const DoubleCover& c, const Divisor& e0) { return abel_prym_fiber(PrymSpace(c), e0); }

/// Determinant of half the intersection form on the kernel of the pushforward
/// H1(total, Z) -> H1(base, Z).
inline Rational prym_lattice_det(const DoubleCover& c) {
  HomologyBasis hb = homology_basis(c.total, first_spanning_tree(*c.total));
  const MetricGraph& t = *c.total;
  const std::size_t n = hb.cycles.size();
  IntMatrix push(c.base->num_edges(), IntVector(n, 0));
  for (std::size_t j = 0; j < n; ++j)
    for (int e = 0; e < t.num_edges(); ++e) push[c.edge_map[e]][j] += hb.cycles[j][e];
  auto kernel = integer_kernel(push, n);
  std::vector<std::vector<BigInt>> z;
  for (const auto& k : kernel) {
    std::vector<BigInt> cyc(t.num_edges(), 0);
    for (std::size_t j = 0; j < n; ++j)
      for (int e = 0; e < t.num_edges(); ++e) cyc[e] += k[j] * hb.cycles[j][e];
    z.push_back(std::move(cyc));
  }
  RatMatrix gram(z.size(), RatVector(z.size(), 0));
  for (std::size_t a = 0; a < z.size(); ++a)
    for (std::size_t b = 0; b < z.size(); ++b)
      for (int e = 0; e < t.num_edges(); ++e) gram[a][b] += Rational(z[a][e] * z[b][e]) * t.edge(e).length / 2;
  return determinant(gram);
}

}  // namespace tropdiv
