#include "qg/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "qg/error.hpp"

namespace qg::io {

namespace {

std::string format_double(double x) {
  if (!std::isfinite(x)) throw Error(ErrorKind::Io, "cannot serialize a non-finite number");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

bool scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

void dump(const Json& j, std::ostringstream& os, int indent) {
  const std::string pad(indent + 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << Json(it.key()).dump() << ": ";
        dump(it.value(), os, indent + 2);
      }
      os << "\n" << std::string(indent, ' ') << "}";
      return;
    }
    case Json::value_t::array: {
      bool flat = true;
      for (const auto& x : j) flat = flat && (scalar(x) || (x.is_array() && x.size() <= 2 &&
                                                             std::all_of(x.begin(), x.end(), scalar)));
      if (flat) {
        os << "[";
        for (size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          dump(j[i], os, indent);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        dump(j[i], os, indent + 2);
      }
      os << "\n" << std::string(indent, ' ') << "]";
      return;
    }
    case Json::value_t::number_float:
      os << format_double(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

int get_int(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer())
    throw Error(ErrorKind::Io, std::string("missing integer field '") + key + "'");
  return j.at(key).get<int>();
}

int parse_index(const std::string& s) {
  size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty()) throw Error(ErrorKind::Io, "bad index key '" + s + "'");
  return v;
}

}  // namespace

std::string canonical_dump(const Json& j) {
  std::ostringstream os;
  dump(j, os, 0);
  os << "\n";
  return os.str();
}

Json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Io, path.string() + ": " + e.what());
  }
}

void write_json(const fs::path& path, const Json& j) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << canonical_dump(j);
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error(ErrorKind::Io, "complex numbers are written as [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const Json& j, int cols) {
  if (!j.is_array()) throw Error(ErrorKind::Io, "matrix must be an array of rows");
  if (j.empty()) return CMatrix(0, std::max(cols, 0));
  const int c = static_cast<int>(j[0].size());
  CMatrix m(j.size(), c);
  for (size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != c)
      throw Error(ErrorKind::ShapeMismatch, "ragged matrix rows");
    for (int k = 0; k < c; ++k) m(r, k) = complex_from_json(j[r][k]);
  }
  if (cols >= 0 && c != cols) throw Error(ErrorKind::ShapeMismatch, "matrix has wrong width");
  return m;
}

Json group_to_json(const FiniteGroup& g) {
  return Json{{"order", g.order()},
              {"identity", g.identity()},
              {"names", g.names()},
              {"table", g.table()}};
}

GroupPtr group_from_json(const Json& j) {
  const int n = get_int(j, "order");
  auto table = j.at("table").get<std::vector<std::vector<Element>>>();
  if (static_cast<int>(table.size()) != n)
    throw Error(ErrorKind::InvalidGroup, "table size does not match order");
  std::vector<std::string> names;
  if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
  return std::make_shared<const FiniteGroup>(std::move(table), get_int(j, "identity"),
                                             std::move(names));
}

Json rep_to_json(const Representation& rep, const Json& group_ref) {
  Json mats = Json::object();
  for (Element g : rep.domain().elements()) mats[std::to_string(g)] = matrix_to_json(rep(g));
  return Json{{"group", group_ref}, {"dim", rep.dim()}, {"matrices", mats}};
}

Representation rep_from_json(const Json& j, const GroupPtr& group) {
  const int dim = get_int(j, "dim");
  std::vector<Element> elems;
  std::vector<CMatrix> mats(group->order());
  for (auto it = j.at("matrices").begin(); it != j.at("matrices").end(); ++it) {
    const Element g = parse_index(it.key());
    if (!group->valid(g)) throw Error(ErrorKind::InvalidElement, "element " + it.key());
    elems.push_back(g);
    mats[g] = matrix_from_json(it.value(), dim);
  }
  return Representation(Subgroup(group, elems), dim, std::move(mats));
}

Json graph_to_json(const QuantumGraph& g) {
  Json vs = Json::array(), es = Json::array();
  for (const auto& v : g.vertices())
    vs.push_back(Json{{"id", v.id},
                      {"edge_order", v.edge_order},
                      {"A", matrix_to_json(v.condition.a)},
                      {"B", matrix_to_json(v.condition.b)}});
  for (const auto& e : g.edges())
    es.push_back(Json{{"id", e.id}, {"source", e.source}, {"target", e.target}, {"length", e.length}});
  return Json{{"vertices", vs}, {"edges", es}};
}

QuantumGraph graph_from_json(const Json& j) {
  std::vector<EdgeRecord> edges;
  for (const auto& e : j.at("edges")) {
    EdgeRecord r{get_int(e, "id"), get_int(e, "source"), get_int(e, "target"),
                 e.at("length").get<double>()};
    edges.push_back(r);
  }
  std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  std::vector<VertexRecord> vertices;
  for (const auto& v : j.at("vertices")) {
    VertexRecord r;
    r.id = get_int(v, "id");
    if (v.contains("edge_order")) {
      r.edge_order = v.at("edge_order").get<std::vector<EdgeId>>();
    } else {
      for (const auto& e : edges)
        if (e.source == r.id || e.target == r.id) r.edge_order.push_back(e.id);
    }
    const int d = static_cast<int>(r.edge_order.size());
    if (v.contains("condition")) {
      const std::string name = v.at("condition").get<std::string>();
      if (name == "neumann") r.condition = standard_condition(StandardCondition::Neumann, d);
      else if (name == "dirichlet") r.condition = standard_condition(StandardCondition::Dirichlet, d);
      else throw Error(ErrorKind::InvalidGraph, "unknown condition '" + name + "'");
    } else {
      r.condition.a = matrix_from_json(v.at("A"), d);
      r.condition.b = matrix_from_json(v.at("B"), d);
    }
    vertices.push_back(std::move(r));
  }
  std::sort(vertices.begin(), vertices.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return QuantumGraph(std::move(vertices), std::move(edges));
}

Json action_to_json(const GraphAction& a, const Json& group_ref, const Json& graph_ref) {
  Json elems = Json::object();
  for (Element g : a.acting().elements()) {
    Json vs = Json::object(), es = Json::object();
    for (VertexId v = 0; v < a.graph().vertex_count(); ++v)
      vs[std::to_string(v)] = a.vertex_image(g, v);
    for (EdgeId e = 0; e < a.graph().edge_count(); ++e)
      es[std::to_string(e)] = Json{{"to", a.edge_image(g, e)}, {"flip", a.flips(g, e)}};
    elems[std::to_string(g)] = Json{{"vertices", vs}, {"edges", es}};
  }
  return Json{{"group", group_ref}, {"graph", graph_ref}, {"elements", elems}};
}

GraphAction action_from_json(const Json& j, const GroupPtr& group, QuantumGraph graph) {
  std::vector<ElementMap> maps(group->order());
  std::vector<Element> acting;
  for (auto it = j.at("elements").begin(); it != j.at("elements").end(); ++it) {
    const Element g = parse_index(it.key());
    if (!group->valid(g)) throw Error(ErrorKind::InvalidElement, "element " + it.key());
    acting.push_back(g);
    ElementMap& m = maps[g];
    m.vertices.assign(graph.vertex_count(), -1);
    m.edges.assign(graph.edge_count(), -1);
    m.flips.assign(graph.edge_count(), 0);
    for (auto v = it->at("vertices").begin(); v != it->at("vertices").end(); ++v) {
      const int id = parse_index(v.key());
      if (id < 0 || id >= graph.vertex_count()) throw Error(ErrorKind::InvalidAction, "vertex " + v.key());
      m.vertices[id] = v.value().get<int>();
    }
    for (auto e = it->at("edges").begin(); e != it->at("edges").end(); ++e) {
      const int id = parse_index(e.key());
      if (id < 0 || id >= graph.edge_count()) throw Error(ErrorKind::InvalidAction, "edge " + e.key());
      m.edges[id] = e.value().at("to").get<int>();
      m.flips[id] = e.value().value("flip", false) ? 1 : 0;
    }
  }
  return GraphAction(Subgroup(group, acting), std::move(graph), std::move(maps));
}

Json spectrum_to_json(const Spectrum& s) {
  Json entries = Json::array(), misses = Json::array();
  for (const auto& e : s.entries) entries.push_back(Json{{"k", e.k}, {"multiplicity", e.multiplicity}});
  for (const auto& m : s.near_misses) misses.push_back(Json{{"k", m.k}, {"ratio", m.ratio}});
  const auto& st = s.settings;
  return Json{{"k_max", s.k_max},
              {"zero_mode_multiplicity", s.zero_mode_multiplicity},
              {"entries", entries},
              {"near_misses", misses},
              {"warnings", s.warnings},
              {"settings", Json{{"k_floor", st.k_floor},
                                {"scan_step", st.scan_step},
                                {"oversample", st.oversample},
                                {"accept_tol", st.accept_tol},
                                {"refine_tol", st.refine_tol},
                                {"probe", st.probe},
                                {"parallel", st.parallel}}}};
}

Spectrum spectrum_from_json(const Json& j) {
  Spectrum s;
  s.k_max = j.at("k_max").get<double>();
  s.zero_mode_multiplicity = get_int(j, "zero_mode_multiplicity");
  for (const auto& e : j.at("entries"))
    s.entries.push_back({e.at("k").get<double>(), get_int(e, "multiplicity")});
  for (const auto& m : j.value("near_misses", Json::array()))
    s.near_misses.push_back({m.at("k").get<double>(), m.at("ratio").get<double>()});
  s.warnings = j.value("warnings", std::vector<std::string>{});
  const Json& st = j.at("settings");
  s.settings.k_floor = st.at("k_floor").get<double>();
  s.settings.scan_step = st.at("scan_step").get<double>();
  s.settings.oversample = st.value("oversample", s.settings.oversample);
  s.settings.accept_tol = st.at("accept_tol").get<double>();
  s.settings.refine_tol = st.at("refine_tol").get<double>();
  s.settings.probe = st.at("probe").get<bool>();
  s.settings.parallel = st.at("parallel").get<bool>();
  return s;
}

std::string spectrum_csv(const Spectrum& s) {
  std::ostringstream os;
  os << "k,lambda,multiplicity\n";
  if (s.has_zero_mode()) os << "0.0,0.0," << s.zero_mode_multiplicity << "\n";
  for (const auto& e : s.entries)
    os << format_double(e.k) << "," << format_double(e.k * e.k) << "," << e.multiplicity << "\n";
  return os.str();
}

Json report_to_json(const SpectrumReport& r) {
  Json pairs = Json::array(), ua = Json::array(), ub = Json::array();
  for (const auto& p : r.matched)
    pairs.push_back(Json{{"k_a", p.k_a},
                         {"k_b", p.k_b},
                         {"multiplicity_a", p.multiplicity_a},
                         {"multiplicity_b", p.multiplicity_b},
                         {"deviation", p.deviation}});
  for (const auto& e : r.unmatched_a) ua.push_back(Json{{"k", e.k}, {"multiplicity", e.multiplicity}});
  for (const auto& e : r.unmatched_b) ub.push_back(Json{{"k", e.k}, {"multiplicity", e.multiplicity}});
  return Json{{"matched", pairs},
              {"unmatched_a", ua},
              {"unmatched_b", ub},
              {"max_deviation", r.max_deviation},
              {"tolerance", r.tolerance},
              {"k_max", r.k_max},
              {"zero_mode_mismatch", r.zero_mode_mismatch},
              {"pass", r.pass}};
}

Json provenance_to_json(const QuotientResult& q, const Classification& c) {
  Json edges = Json::array(), vertices = Json::array();
  for (const auto& e : q.edges)
    edges.push_back(Json{{"id", e.id},
                         {"orbit", e.orbit},
                         {"copy", e.copy},
                         {"representative", e.representative},
                         {"length", e.length}});
  for (const auto& v : q.vertices) {
    Json rank;
    for (const auto& vc : c.vertices)
      if (vc.id == v.id) rank = vc.rank;
    vertices.push_back(Json{{"id", v.id},
                            {"orbit", v.orbit},
                            {"representative", v.representative},
                            {"witnesses", v.local.witnesses},
                            {"nu", v.local.nu},
                            {"mu", v.local.mu},
                            {"fixed_dims", v.local.fixed_dims},
                            {"split_from", v.split_from},
                            {"rank", rank},
                            {"A_pre", matrix_to_json(v.pre_reduction.a)},
                            {"B_pre", matrix_to_json(v.pre_reduction.b)}});
  }
  return Json{{"edges", edges},
              {"vertices", vertices},
              {"dropped_vertex_orbits", q.dropped_vertex_orbits},
              {"classification", to_string(c.kind)}};
}

GroupPtr Loader::intern(const Json& group_json) {
  const std::string key = canonical_dump(group_json);
  auto it = groups_.find(key);
  if (it != groups_.end()) return it->second;
  GroupPtr g = group_from_json(group_json);
  groups_.emplace(key, g);
  return g;
}

GroupPtr Loader::resolve_group(const Json& ref, const fs::path& base) {
  if (ref.is_string()) return group(base / ref.get<std::string>());
  if (ref.is_object()) return intern(ref);
  throw Error(ErrorKind::Io, "group reference must be a path or an object");
}

QuantumGraph Loader::resolve_graph(const Json& ref, const fs::path& base) {
  if (ref.is_string()) return graph(base / ref.get<std::string>());
  if (ref.is_object()) return graph_from_json(ref);
  throw Error(ErrorKind::Io, "graph reference must be a path or an object");
}

GroupPtr Loader::group(const fs::path& path) { return intern(read_json(path)); }

Representation Loader::rep(const fs::path& path) {
  const Json j = read_json(path);
  return rep_from_json(j, resolve_group(j.at("group"), path.parent_path()));
}

QuantumGraph Loader::graph(const fs::path& path) { return graph_from_json(read_json(path)); }

GraphAction Loader::action(const fs::path& path) {
  const Json j = read_json(path);
  const fs::path base = path.parent_path();
  return action_from_json(j, resolve_group(j.at("group"), base), resolve_graph(j.at("graph"), base));
}

}  // namespace qg::io
