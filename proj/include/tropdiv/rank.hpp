#pragma once

#include "tropdiv/reduce.hpp"

#include <map>
#include <tuple>

namespace tropdiv {

/// Points E ranges over when testing rank: the vertices of the model plus
/// the midpoint of every loop, which together form a loopless model. Vertex
/// sets of loopless models are rank-determining.
inline std::vector<Point> rank_determining_set(const MetricGraph& g) {
  std::vector<Point> s;
  for (int v = 0; v < g.num_vertices(); ++v) s.push_back(Point::at_vertex(v));
  for (int e = 0; e < g.num_edges(); ++e)
    if (g.edge(e).is_loop()) s.push_back(Point::on_edge(g, e, g.edge(e).length / 2));
  return s;
}

class RankSolver {
 public:
  explicit RankSolver(GraphPtr g) : g_(std::move(g)), base_(canonical_base(*g_)), s_(rank_determining_set(*g_)) {
    require_connected(*g_, "rank");
  }

  /// Whether |D - E| is nonempty for every effective E of degree k on the
  /// rank-determining set.
  bool at_least(const Divisor& d, int k) {
    if (k < 0) return true;
    if (d.degree() < k) return false;
    Divisor r = reduce(d, base_);
    auto key = std::make_pair(r.terms(), k);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool ok;
    if (k == 0) {
      ok = r.is_effective();
    } else {
      ok = at_least(r, 0);
      for (std::size_t i = 0; ok && i < s_.size(); ++i) ok = at_least(r - Divisor::point(g_, s_[i]), k - 1);
    }
    memo_.emplace(std::move(key), ok);
    return ok;
  }

  int rank(const Divisor& d) {
    require_same_graph(g_, d.graph_ptr());
    if (!at_least(d, 0)) return -1;
    const int genus = betti1(*g_);
    const std::int64_t deg = d.degree();
    if (deg > 2 * genus - 2) {
      // Riemann-Roch shortcut, taken only once K - D is confirmed non-effective.
      if (at_least(canonical(g_) - d, 0)) throw InternalError("K - D effective in degree above 2g - 2");
      return static_cast<int>(deg - genus);
    }
    int r = 0;
    while (at_least(d, r + 1)) ++r;
    return r;
  }

 private:
  GraphPtr g_;
  Point base_;
  std::vector<Point> s_;
  std::map<std::pair<Divisor::Terms, int>, bool> memo_;
};

inline int rank(const Divisor& d) { return RankSolver(d.graph_ptr()).rank(d); }

struct RiemannRochResidual {
  int r_d;
  int r_k_minus_d;
  std::int64_t d_minus_g_plus_1;

  bool holds() const { return r_d - r_k_minus_d == d_minus_g_plus_1; }
};

/// Both ranks computed from scratch, without the degree shortcut.
inline RiemannRochResidual riemann_roch_residual(const Divisor& d) {
  const GraphPtr& g = d.graph_ptr();
  require_connected(*g, "riemann_roch_residual");
  RankSolver solver(g);
  auto full_rank = [&](const Divisor& x) {
    if (!solver.at_least(x, 0)) return -1;
    int r = 0;
    while (solver.at_least(x, r + 1)) ++r;
    return r;
  };
  const int genus = betti1(*g);
  return {full_rank(d), full_rank(canonical(g) - d), d.degree() - genus + 1};
}

}  // namespace tropdiv
