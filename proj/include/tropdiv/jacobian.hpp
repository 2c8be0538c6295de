#pragma once

#include "tropdiv/lattice.hpp"
#include "tropdiv/reduce.hpp"

#include <memory>

namespace tropdiv {

/// A spanning tree together with g oriented cycles spanning H1(G, Z).
/// Cycles are integer coefficient vectors over the edges, measured against
/// each edge's stored orientation.
struct HomologyBasis {
  GraphPtr graph;
  std::vector<int> tree;
  std::vector<int> non_tree;
  std::vector<std::vector<int>> cycles;

  int genus() const { return static_cast<int>(cycles.size()); }
};

namespace detail {

/// For each vertex, the signed edge chain of the tree path from the root
/// (vertex 0 of each component) to it.
inline std::vector<std::vector<int>> tree_paths(const MetricGraph& g, const std::vector<int>& tree) {
  std::vector<std::vector<std::pair<int, int>>> adj(g.num_vertices());
  for (int e : tree) {
    adj[g.edge(e).u].push_back({e, +1});
    adj[g.edge(e).v].push_back({e, -1});
  }
  std::vector<std::vector<int>> path(g.num_vertices());
  std::vector<bool> seen(g.num_vertices(), false);
  for (int root = 0; root < g.num_vertices(); ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    path[root].assign(g.num_edges(), 0);
    std::vector<int> stack{root};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (auto [e, dir] : adj[x]) {
        int y = g.edge(e).other(x);
        if (seen[y]) continue;
        seen[y] = true;
        path[y] = path[x];
        path[y][e] += dir;
        stack.push_back(y);
      }
    }
  }
  return path;
}

inline void require_tree(const MetricGraph& g, const std::vector<int>& tree) {
  if (!is_spanning_tree(g, tree)) throw NotASpanningTree("edge set is not a spanning tree");
}

}  // namespace detail

/// One cycle per non-tree edge: the edge traversed along its stored
/// orientation, closed up by the tree path back to its start.
inline HomologyBasis homology_basis(const GraphPtr& gp, std::vector<int> tree) {
  const MetricGraph& g = *gp;
  detail::require_tree(g, tree);
  std::sort(tree.begin(), tree.end());
  HomologyBasis b{gp, tree, {}, {}};
  auto paths = detail::tree_paths(g, tree);
  std::vector<bool> in_tree(g.num_edges(), false);
  for (int e : tree) in_tree[e] = true;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (in_tree[e]) continue;
    const Edge& ed = g.edge(e);
    std::vector<int> c(g.num_edges(), 0);
    c[e] = 1;
    for (int k = 0; k < g.num_edges(); ++k) c[k] += paths[ed.u][k] - paths[ed.v][k];
    b.non_tree.push_back(e);
    b.cycles.push_back(std::move(c));
  }
  return b;
}

/// A basis given by explicit cycles. Each must be closed, and together they
/// must be a Z-basis of H1, i.e. unimodular on the non-tree coordinates.
inline HomologyBasis homology_basis_from_cycles(const GraphPtr& gp, std::vector<int> tree, std::vector<std::vector<int>> cycles) {
  HomologyBasis ref = homology_basis(gp, std::move(tree));
  const MetricGraph& g = *gp;
  if (cycles.size() != ref.cycles.size()) throw InvariantViolation("wrong number of cycles for the genus");
  for (const auto& c : cycles) {
    if (static_cast<int>(c.size()) != g.num_edges()) throw InvariantViolation("cycle has wrong length");
    std::vector<int> boundary(g.num_vertices(), 0);
    for (int e = 0; e < g.num_edges(); ++e) {
      boundary[g.edge(e).v] += c[e];
      boundary[g.edge(e).u] -= c[e];
    }
    for (int x : boundary)
      if (x != 0) throw InvariantViolation("chain is not a cycle");
  }
  RatMatrix m(cycles.size(), RatVector(cycles.size()));
  for (std::size_t i = 0; i < cycles.size(); ++i)
    for (std::size_t j = 0; j < cycles.size(); ++j) m[i][j] = cycles[i][ref.non_tree[j]];
  Rational det = determinant(m);
  if (det != 1 && det != -1) throw InvariantViolation("cycles do not form a basis of H1");
  ref.cycles = std::move(cycles);
  return ref;
}

/// Symmetric matrix of oriented intersection lengths.
struct PeriodMatrix {
  RatMatrix m;

  std::size_t size() const { return m.size(); }
  friend bool operator==(const PeriodMatrix& a, const PeriodMatrix& b) { return a.m == b.m; }
};

inline PeriodMatrix period_matrix(const HomologyBasis& b) {
  const MetricGraph& g = *b.graph;
  const std::size_t n = b.cycles.size();
  PeriodMatrix p{RatMatrix(n, RatVector(n, 0))};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (int e = 0; e < g.num_edges(); ++e)
        if (b.cycles[i][e] && b.cycles[j][e]) p.m[i][j] += b.cycles[i][e] * b.cycles[j][e] * g.edge(e).length;
  return p;
}

/// A point of R^g modulo the row lattice of a period matrix.
struct TorusPoint {
  RatVector coords;
  std::shared_ptr<const PeriodMatrix> lattice;
};

inline bool torus_eq(const TorusPoint& x, const TorusPoint& y) {
  if (!x.lattice || !y.lattice || !(*x.lattice == *y.lattice)) throw LatticeMismatch("torus points use different lattices");
  RatVector d(x.coords.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = x.coords[i] - y.coords[i];
  return in_row_lattice(x.lattice->m, d);
}

/// Representative in the half-open fundamental parallelepiped, for display.
inline RatVector reduce_coords(const TorusPoint& x) {
  const RatMatrix& m = x.lattice->m;
  RatMatrix mt(m.size(), RatVector(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) mt[i][j] = m[j][i];
  RatVector lam = mat_vec(inverse(mt), x.coords);
  RatVector out = x.coords;
  for (std::size_t i = 0; i < lam.size(); ++i) {
    Rational k(floor_int(lam[i]));
    for (std::size_t j = 0; j < out.size(); ++j) out[j] -= k * m[i][j];
  }
  return out;
}

/// Abel-Jacobi coordinates, with paths always running through the basis's tree.
class AbelJacobi {
 public:
  explicit AbelJacobi(HomologyBasis b)
      : b_(std::move(b)), lattice_(std::make_shared<const PeriodMatrix>(period_matrix(b_))) {
    paths_ = detail::tree_paths(*b_.graph, b_.tree);
  }

  const HomologyBasis& basis() const { return b_; }
  const std::shared_ptr<const PeriodMatrix>& lattice() const { return lattice_; }

  /// Coordinates of the tree path from the root to p.
  RatVector point_coords(const Point& p) const {
    const MetricGraph& g = *b_.graph;
    const std::size_t n = b_.cycles.size();
    RatVector out(n, 0);
    int v = p.is_vertex() ? p.vertex() : g.edge(p.edge()).u;
    for (std::size_t i = 0; i < n; ++i)
      for (int e = 0; e < g.num_edges(); ++e)
        if (paths_[v][e] && b_.cycles[i][e]) out[i] += paths_[v][e] * b_.cycles[i][e] * g.edge(e).length;
    if (!p.is_vertex())
      for (std::size_t i = 0; i < n; ++i) out[i] += b_.cycles[i][p.edge()] * p.offset();
    return out;
  }

  /// Derivative of point_coords along an edge.
  RatVector edge_direction(int e) const {
    RatVector out(b_.cycles.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = b_.cycles[i][e];
    return out;
  }

  TorusPoint operator()(const Divisor& d, const Point& base) const {
    require_same_graph(b_.graph, d.graph_ptr());
    RatVector out(b_.cycles.size(), 0);
    RatVector from = point_coords(base);
    for (const auto& [p, c] : d.terms()) {
      RatVector to = point_coords(p);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * (to[i] - from[i]);
    }
    return {std::move(out), lattice_};
  }

 private:
  HomologyBasis b_;
  std::shared_ptr<const PeriodMatrix> lattice_;
  std::vector<std::vector<int>> paths_;
};

inline TorusPoint abel_jacobi(const Divisor& d, const Point& base, const HomologyBasis& b) { return AbelJacobi(b)(d, base); }

struct KirchhoffResult {
  Rational det;
  Rational tree_sum;
  bool holds() const { return det == tree_sum; }
};

inline KirchhoffResult kirchhoff_check(const GraphPtr& gp) {
  const MetricGraph& g = *gp;
  require_connected(g, "kirchhoff_check");
  auto trees = spanning_trees(g);
  KirchhoffResult r;
  r.det = determinant(period_matrix(homology_basis(gp, trees.front())).m);
  r.tree_sum = 0;
  for (const auto& t : trees) {
    std::vector<bool> in_tree(g.num_edges(), false);
    for (int e : t) in_tree[e] = true;
    Rational prod = 1;
    for (int e = 0; e < g.num_edges(); ++e)
      if (!in_tree[e]) prod *= g.edge(e).length;
    r.tree_sum += prod;
  }
  return r;
}

/// Whether D is the only effective divisor in its class. A chip of
/// multiplicity two or more can always split, so those never count as rigid;
/// otherwise D is rigid exactly when removing its support leaves the graph connected.
inline bool is_rigid(const Divisor& d) {
  if (!d.is_effective()) throw InvariantViolation("is_rigid expects an effective divisor");
  Removal rem;
  for (const auto& [p, c] : d.terms()) {
    if (p.is_vertex()) throw UnsupportedSupport("support touches vertex '" + d.graph().vertex_id(p.vertex()) + "'");
    if (c > 1) return false;
    rem.points.push_back(p);
  }
  return CutGraph(d.graph(), rem).num_components() == 1;
}

}  // namespace tropdiv
