#pragma once

#include "tropdiv/cover.hpp"
#include "tropdiv/divisor.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace tropdiv {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json parse_json(const std::string& text, const std::string& where) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(where + ": byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

inline const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

inline std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where + ": expected a string");
  return j.get<std::string>();
}

inline Rational as_rational(const Json& j, const std::string& where) {
  std::string s = as_string(j, where);
  try {
    return parse_rational(s);
  } catch (const std::invalid_argument& e) {
    throw ParseError(where + ": " + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace detail

inline Json graph_to_json(const MetricGraph& g) {
  Json j;
  j["vertices"] = Json::array();
  for (const auto& v : g.vertex_ids()) j["vertices"].push_back(v);
  j["edges"] = Json::array();
  for (const auto& e : g.edges()) {
    Json je;
    je["id"] = e.id;
    je["ends"] = Json::array({g.vertex_id(e.u), g.vertex_id(e.v)});
    je["length"] = to_string(e.length);
    j["edges"].push_back(std::move(je));
  }
  return j;
}

inline MetricGraph graph_from_json(const Json& j, const std::string& where = "graph") {
  const Json& vs = detail::field(j, "vertices", where);
  const Json& es = detail::field(j, "edges", where);
  if (!vs.is_array() || !es.is_array()) throw ParseError(where + ": 'vertices' and 'edges' must be arrays");
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < vs.size(); ++i) ids.push_back(detail::as_string(vs[i], where + ".vertices[" + std::to_string(i) + "]"));
  std::vector<MetricGraph::EdgeSpec> specs;
  for (std::size_t i = 0; i < es.size(); ++i) {
    std::string at = where + ".edges[" + std::to_string(i) + "]";
    const Json& ends = detail::field(es[i], "ends", at);
    if (!ends.is_array() || ends.size() != 2) throw ParseError(at + ": 'ends' must list two vertices");
    specs.push_back({detail::as_string(detail::field(es[i], "id", at), at + ".id"), detail::as_string(ends[0], at + ".ends[0]"),
                     detail::as_string(ends[1], at + ".ends[1]"), detail::as_rational(detail::field(es[i], "length", at), at + ".length")});
  }
  return MetricGraph::from_ids(std::move(ids), specs);
}

inline Json point_to_json(const MetricGraph& g, const Point& p) {
  Json j;
  if (p.is_vertex()) {
    j["vertex"] = g.vertex_id(p.vertex());
  } else {
    j["edge"] = g.edge(p.edge()).id;
    j["offset"] = to_string(p.offset());
  }
  return j;
}

inline Point point_from_json(const MetricGraph& g, const Json& j, const std::string& where = "point") {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  if (j.contains("vertex")) return Point::at_vertex(g.vertex_index(detail::as_string(j["vertex"], where + ".vertex")));
  int e = g.edge_index(detail::as_string(detail::field(j, "edge", where), where + ".edge"));
  return Point::on_edge(g, e, detail::as_rational(detail::field(j, "offset", where), where + ".offset"));
}

inline Json divisor_to_json(const Divisor& d) {
  Json j = Json::array();
  for (const auto& [p, c] : d.terms()) {
    Json t;
    t["point"] = point_to_json(d.graph(), p);
    t["coeff"] = c;
    j.push_back(std::move(t));
  }
  return j;
}

inline Divisor divisor_from_json(const GraphPtr& g, const Json& j, const std::string& where = "divisor") {
  if (!j.is_array()) throw ParseError(where + ": expected an array");
  Divisor d(g);
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string at = where + "[" + std::to_string(i) + "]";
    const Json& c = detail::field(j[i], "coeff", at);
    if (!c.is_number_integer()) throw ParseError(at + ".coeff: expected an integer");
    d.add(point_from_json(*g, detail::field(j[i], "point", at), at + ".point"), c.get<std::int64_t>());
  }
  return d;
}

/// Cover file: the total graph plus projection and involution tables keyed
/// by total ids.
inline Json cover_to_json(const DoubleCover& c) {
  const MetricGraph& t = *c.total;
  Json j;
  j["total"] = graph_to_json(t);
  Json vm = Json::object(), em = Json::object(), inv = Json::object();
  for (int v = 0; v < t.num_vertices(); ++v) vm[t.vertex_id(v)] = c.base->vertex_id(c.vertex_map[v]);
  for (int e = 0; e < t.num_edges(); ++e) em[t.edge(e).id] = c.base->edge(c.edge_map[e]).id;
  for (int v = 0; v < t.num_vertices(); ++v) inv[t.vertex_id(v)] = t.vertex_id(c.vertex_swap[v]);
  for (int e = 0; e < t.num_edges(); ++e) inv[t.edge(e).id] = t.edge(c.edge_swap[e]).id;
  j["vertex_map"] = std::move(vm);
  j["edge_map"] = std::move(em);
  j["involution"] = std::move(inv);
  return j;
}

inline DoubleCover cover_from_json(const GraphPtr& base, const Json& j, const std::string& where = "cover") {
  DoubleCover c;
  c.base = base;
  c.total = share(graph_from_json(detail::field(j, "total", where), where + ".total"));
  const MetricGraph& t = *c.total;
  const Json& vm = detail::field(j, "vertex_map", where);
  const Json& em = detail::field(j, "edge_map", where);
  const Json& inv = detail::field(j, "involution", where);
  auto lookup = [&](const Json& table, const std::string& key, const std::string& name) {
    if (!table.is_object() || !table.contains(key)) throw ParseError(where + "." + name + ": missing entry for '" + key + "'");
    return detail::as_string(table[key], where + "." + name + "." + key);
  };
  for (int v = 0; v < t.num_vertices(); ++v) {
    const std::string& id = t.vertex_id(v);
    c.vertex_map.push_back(base->vertex_index(lookup(vm, id, "vertex_map")));
    std::string img = lookup(inv, id, "involution");
    auto w = t.find_vertex(img);
    if (!w) throw InvariantViolation("involution sends vertex '" + id + "' outside the vertex set");
    c.vertex_swap.push_back(*w);
  }
  for (int e = 0; e < t.num_edges(); ++e) {
    const std::string& id = t.edge(e).id;
    c.edge_map.push_back(base->edge_index(lookup(em, id, "edge_map")));
    std::string img = lookup(inv, id, "involution");
    auto f = t.find_edge(img);
    if (!f) throw InvariantViolation("involution sends edge '" + id + "' outside the edge set");
    c.edge_swap.push_back(*f);
  }
  c.validate();
  c.index_lifts();
  return c;
}

/// Command-line point syntax: a vertex id, or "edge@offset".
inline Point parse_point_spec(const MetricGraph& g, const std::string& spec) {
  auto at = spec.find('@');
  if (at == std::string::npos) {
    auto v = g.find_vertex(spec);
    if (!v) throw ParseError("unknown vertex '" + spec + "'");
    return Point::at_vertex(*v);
  }
  auto e = g.find_edge(spec.substr(0, at));
  if (!e) throw ParseError("unknown edge '" + spec.substr(0, at) + "'");
  try {
    return Point::on_edge(g, *e, parse_rational(spec.substr(at + 1)));
  } catch (const std::invalid_argument& x) {
    throw ParseError("point '" + spec + "': " + x.what());
  }
}

inline std::string serialize(const MetricGraph& g) { return detail::dump(graph_to_json(g)); }
inline std::string serialize(const Divisor& d) { return detail::dump(divisor_to_json(d)); }
inline std::string serialize(const DoubleCover& c) { return detail::dump(cover_to_json(c)); }

inline MetricGraph parse_graph(const std::string& text, const std::string& where = "graph") {
  return graph_from_json(detail::parse_json(text, where), where);
}
inline Divisor parse_divisor(const std::string& text, const GraphPtr& g, const std::string& where = "divisor") {
  return divisor_from_json(g, detail::parse_json(text, where), where);
}
inline DoubleCover parse_cover(const std::string& text, const GraphPtr& g, const std::string& where = "cover") {
  return cover_from_json(g, detail::parse_json(text, where), where);
}

inline MetricGraph load_graph(const std::string& path) { return parse_graph(detail::read_file(path), path); }
inline Divisor load_divisor(const std::string& path, const GraphPtr& g) { return parse_divisor(detail::read_file(path), g, path); }
inline DoubleCover load_cover(const std::string& path, const GraphPtr& g) { return parse_cover(detail::read_file(path), g, path); }

}  // namespace tropdiv
