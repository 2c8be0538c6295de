// tropdiv: command-line front end for divisors on metric graphs.
//
// Exit codes: 0 success or all checks passed, 1 some check failed,
// 2 usage or input error.

#include "tropdiv/io.hpp"
#include "tropdiv/suites.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace tropdiv;

struct Source {
  std::string graph_file;
  std::string fixture;
  std::string cover_file;

  GraphPtr graph() const {
    if (!graph_file.empty() && !fixture.empty()) throw ParseError("give either --graph or --fixture, not both");
    if (!graph_file.empty()) return share(load_graph(graph_file));
    if (!fixture.empty()) return fixture_entry().graph;
    throw ParseError("a graph is required: pass --graph FILE or --fixture NAME");
  }

  Fixture fixture_entry() const {
    auto f = fixtures::find(fixture);
    if (!f) throw ParseError("unknown fixture '" + fixture + "' (see `tropdiv fixtures list`)");
    return *f;
  }

  /// The cover from --cover, else the fixture's distinguished cover.
  DoubleCover cover(const GraphPtr& g) const {
    if (!cover_file.empty()) return load_cover(cover_file, g);
    if (!fixture.empty()) {
      auto f = fixture_entry();
      if (f.cover) return build_cover(g, *f.cover);
    }
    throw ParseError("a cover is required: pass --cover FILE");
  }
};

void graph_options(CLI::App* cmd, Source& src) {
  cmd->add_option("--graph", src.graph_file, "graph JSON file");
  cmd->add_option("--fixture", src.fixture, "built-in fixture name");
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string vec(const RatVector& v) {
  std::vector<std::string> parts;
  for (const auto& x : v) parts.push_back(to_string(x));
  return "(" + join(parts, ", ") + ")";
}

std::vector<int> parse_tree(const MetricGraph& g, const std::string& spec) {
  if (spec.empty()) return first_spanning_tree(g);
  std::vector<int> tree;
  std::size_t start = 0;
  while (start <= spec.size()) {
    auto comma = spec.find(',', start);
    std::string id = spec.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    auto e = g.find_edge(id);
    if (!e) throw ParseError("unknown edge '" + id + "' in --tree");
    tree.push_back(*e);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return tree;
}

Point base_point(const MetricGraph& g, const std::string& spec) {
  return spec.empty() ? canonical_base(g) : parse_point_spec(g, spec);
}

void print_witness(const PLFunction& f) {
  const MetricGraph& g = f.graph();
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& ks = f.knots(e);
    std::vector<std::string> pieces;
    for (std::size_t i = 0; i + 1 < ks.size(); ++i)
      pieces.push_back(std::to_string(f.slope(e, i)) + " on [" + to_string(ks[i].offset) + ", " + to_string(ks[i + 1].offset) + "]");
    std::cout << "  " << g.edge(e).id << ": " << join(pieces, ", ") << '\n';
  }
}

int finish(const std::string& echo, const Report& rep) {
  std::cout << "command " << echo << '\n' << rep.render();
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Divisors, Jacobians and Prym varieties on metric graphs with exact arithmetic"};
  app.require_subcommand(1);

  std::string echo = "tropdiv";
  for (int i = 1; i < argc; ++i) echo += std::string(" ") + argv[i];

  Source src;
  std::string divisor_file, other_file, rep_file, base_spec, tree_spec, out_file;
  std::uint64_t seed = 1;
  int trials = 20;
  int emit = -1;
  std::function<int()> action;

  auto* reduce_cmd = app.add_subcommand("reduce", "base-reduced divisor and the witness function's slopes");
  graph_options(reduce_cmd, src);
  reduce_cmd->add_option("--divisor", divisor_file, "divisor JSON file")->required();
  reduce_cmd->add_option("--base", base_spec, "base point: vertex id or edge@offset");
  reduce_cmd->callback([&] {
    action = [&] {
      GraphPtr g = src.graph();
      Divisor d = load_divisor(divisor_file, g);
      Point q = base_point(*g, base_spec);
      Reduction r = reduce_with_witness(d, q);
      std::cout << "base " << describe(*g, q) << '\n' << "reduced " << describe(r.divisor) << '\n' << serialize(r.divisor) << "witness slopes\n";
      print_witness(r.witness);
      return 0;
    };
  });

  auto* rank_cmd = app.add_subcommand("rank", "Baker-Norine rank of a divisor");
  graph_options(rank_cmd, src);
  rank_cmd->add_option("--divisor", divisor_file, "divisor JSON file")->required();
  rank_cmd->callback([&] {
    action = [&] {
      GraphPtr g = src.graph();
      Divisor d = load_divisor(divisor_file, g);
      std::cout << "degree " << d.degree() << "\nrank " << rank(d) << '\n';
      return 0;
    };
  });

  auto* equiv_cmd = app.add_subcommand("equiv", "linear equivalence of two divisors");
  graph_options(equiv_cmd, src);
  equiv_cmd->add_option("--divisor", divisor_file, "first divisor JSON file")->required();
  equiv_cmd->add_option("--other", other_file, "second divisor JSON file")->required();
  equiv_cmd->callback([&] {
    action = [&] {
      GraphPtr g = src.graph();
      Divisor a = load_divisor(divisor_file, g), b = load_divisor(other_file, g);
      std::cout << "equivalent " << (is_equivalent(a, b) ? "yes" : "no") << '\n';
      return 0;
    };
  });

  auto* rr_cmd = app.add_subcommand("rr-check", "Riemann-Roch identity on random divisors");
  graph_options(rr_cmd, src);
  rr_cmd->add_option("--trials", trials, "number of random divisors");
  rr_cmd->add_option("--seed", seed, "random seed");
  rr_cmd->callback([&] {
    action = [&] {
      GraphPtr g = src.graph();
      return finish(echo, suites::riemann_roch(seed, trials, {{src.fixture.empty() ? src.graph_file : src.fixture, g}}));
    };
  });

  auto* jac_cmd = app.add_subcommand("jacobian", "period matrix for a spanning tree's cycle basis");
  graph_options(jac_cmd, src);
  jac_cmd->add_option("--tree", tree_spec, "comma-separated tree edges");
  jac_cmd->callback([&] {
    action = [&] {
      GraphPtr g = src.graph();
      HomologyBasis b = homology_basis(g, parse_tree(*g, tree_spec));
      std::vector<std::string> tree;
      for (int e : b.tree) tree.push_back(g->edge(e).id);
      std::cout << "tree " << join(tree, ",") << "\ngenus " << b.genus() << '\n';
      for (std::size_t i = 0; i < b.cycles.size(); ++i) {
        std::vector<std::string> terms;
        for (int e = 0; e < g->num_edges(); ++e)
          if (b.cycles[i][e]) terms.push_back(std::to_string(b.cycles[i][e]) + "*" + g->edge(e).id);
        std::cout << "cycle " << i << ' ' << join(terms, " + ") << '\n';
      }
      for (const auto& row : period_matrix(b).m) std::cout << "row " << vec(row) << '\n';
      return 0;
    };
  });

  auto* kir_cmd = app.add_subcommand("kirchhoff", "determinant of the period matrix against the spanning-tree sum");
  graph_options(kir_cmd, src);
  kir_cmd->callback([&] {
    action = [&] {
      GraphPtr g = src.graph();
      KirchhoffResult r = kirchhoff_check(g);
      Report rep;
      Digest dig;
      dig.add(serialize(*g));
      rep.add("kirchhoff", src.fixture.empty() ? src.graph_file : src.fixture, dig, r.holds(),
              "det=" + to_string(r.det) + " tree_sum=" + to_string(r.tree_sum));
      return finish(echo, rep);
    };
  });

  auto* aj_cmd = app.add_subcommand("aj", "Abel-Jacobi image of a divisor");
  graph_options(aj_cmd, src);
  aj_cmd->add_option("--divisor", divisor_file, "divisor JSON file")->required();
  aj_cmd->add_option("--base", base_spec, "base point: vertex id or edge@offset");
  aj_cmd->add_option("--tree", tree_spec, "comma-separated tree edges");
  aj_cmd->callback([&] {
    action = [&] {
      GraphPtr g = src.graph();
      Divisor d = load_divisor(divisor_file, g);
      AbelJacobi aj(homology_basis(g, parse_tree(*g, tree_spec)));
      TorusPoint x = aj(d, base_point(*g, base_spec));
      std::cout << "coords " << vec(x.coords) << "\nreduced " << vec(reduce_coords(x)) << '\n';
      return 0;
    };
  });

  auto* covers_cmd = app.add_subcommand("covers", "the 2^g free double covers for a spanning tree");
  graph_options(covers_cmd, src);
  covers_cmd->add_option("--tree", tree_spec, "comma-separated tree edges");
  covers_cmd->add_option("--emit", emit, "write the cover with this index as a cover file");
  covers_cmd->add_option("--out", out_file, "output path for --emit (default: stdout)");
  covers_cmd->callback([&] {
    action = [&] {
      GraphPtr g = src.graph();
      auto signs = enumerate_signs(*g, parse_tree(*g, tree_spec));
      if (emit >= 0) {
        if (emit >= static_cast<int>(signs.size())) throw ParseError("--emit index out of range");
        std::string text = serialize(build_cover(g, signs[emit]));
        if (out_file.empty()) {
          std::cout << text;
        } else {
          std::ofstream out(out_file, std::ios::binary);
          if (!out) throw ParseError(out_file + ": cannot write");
          out << text;
        }
        return 0;
      }
      for (std::size_t k = 0; k < signs.size(); ++k) {
        DoubleCover c = build_cover(g, signs[k]);
        std::vector<std::string> swapped;
        for (const auto& [e, sw] : signs[k].swapped)
          if (sw) swapped.push_back(g->edge(e).id);
        std::cout << "cover " << k << " swapped={" << join(swapped, ",") << "} connected=" << (c.connected() ? "yes" : "no");
        if (c.connected()) std::cout << " genus=" << cover_genus(c);
        std::cout << '\n';
      }
      return 0;
    };
  });

  auto* prym_cmd = app.add_subcommand("prym", "Prym varieties and Abel-Prym fibers");
  prym_cmd->require_subcommand(1);
  auto* fiber_cmd = prym_cmd->add_subcommand("fiber", "weighted representatives in an Abel-Prym fiber");
  graph_options(fiber_cmd, src);
  fiber_cmd->add_option("--cover", src.cover_file, "cover JSON file");
  fiber_cmd->add_option("--rep", rep_file, "representative divisor on the total graph")->required();
  fiber_cmd->callback([&] {
    action = [&] {
      GraphPtr g = src.graph();
      DoubleCover c = src.cover(g);
      Divisor e0 = load_divisor(rep_file, c.total);
      FiberResult f = abel_prym_fiber(c, e0);
      for (const auto& r : f.reps) std::cout << "rep " << describe(r.e) << " weight=" << r.weight << '\n';
      std::cout << "weight_sum " << f.weight_sum << "\nexpected " << f.expected << '\n'
                << (f.holds() ? "PASS" : "FAIL") << " prym-fiber cells=" << f.cells_searched << " degenerate=" << f.degenerate_cells << '\n';
      return f.holds() ? 0 : 1;
    };
  });
  auto* rst_cmd = prym_cmd->add_subcommand("rst", "relative spanning trees of a cover");
  graph_options(rst_cmd, src);
  rst_cmd->add_option("--cover", src.cover_file, "cover JSON file");
  rst_cmd->callback([&] {
    action = [&] {
      GraphPtr g = src.graph();
      DoubleCover c = src.cover(g);
      auto trees = relative_spanning_trees(c);
      for (const auto& t : trees) {
        std::vector<std::string> ids;
        for (int e : t) ids.push_back(g->edge(e).id);
        std::cout << "removed {" << join(ids, ",") << "}\n";
      }
      std::cout << "count " << trees.size() << '\n';
      return 0;
    };
  });
  auto* pcheck_cmd = prym_cmd->add_subcommand("check", "randomized fiber-sum suite on every connected cover");
  graph_options(pcheck_cmd, src);
  pcheck_cmd->add_option("--trials", trials, "generic representatives per cover");
  pcheck_cmd->add_option("--seed", seed, "random seed");
  pcheck_cmd->callback([&] {
    action = [&] {
      GraphPtr g = src.graph();
      return finish(echo, suites::prym_fibers(seed, trials, {{src.fixture.empty() ? src.graph_file : src.fixture, g}}));
    };
  });

  auto* fix_cmd = app.add_subcommand("fixtures", "built-in graphs");
  fix_cmd->require_subcommand(1);
  fix_cmd->add_subcommand("list", "names of the built-in graphs")->callback([&] {
    action = [&] {
      for (const auto& f : fixtures::all()) std::cout << f.name << " genus=" << betti1(*f.graph) << " " << f.note << '\n';
      return 0;
    };
  });
  auto* show_cmd = fix_cmd->add_subcommand("show", "a built-in graph in the graph file format");
  show_cmd->add_option("--fixture", src.fixture, "fixture name")->required();
  show_cmd->callback([&] {
    action = [&] {
      std::cout << serialize(*src.graph());
      return 0;
    };
  });

  auto* all_cmd = app.add_subcommand("check-all", "every verification suite");
  all_cmd->add_option("--trials", trials, "samples per randomized suite");
  all_cmd->add_option("--seed", seed, "random seed");
  all_cmd->callback([&] { action = [&] { return finish(echo, suites::check_all(seed, trials)); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    return action();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
