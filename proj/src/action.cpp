#include "qg/action.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qg/error.hpp"

namespace qg {

namespace {

void check_shapes(const Subgroup& acting, const QuantumGraph& graph,
                  const std::vector<ElementMap>& maps) {
  const int n = acting.parent()->order();
  if (static_cast<int>(maps.size()) != n)
    throw Error(ErrorKind::InvalidAction, "action needs one map per group element");
  for (Element g : acting.elements()) {
    const ElementMap& m = maps[g];
    if (static_cast<int>(m.vertices.size()) != graph.vertex_count() ||
        static_cast<int>(m.edges.size()) != graph.edge_count() ||
        static_cast<int>(m.flips.size()) != graph.edge_count())
      throw Error(ErrorKind::InvalidAction,
                  "map of element " + std::to_string(g) + " does not cover the graph");
    for (VertexId v : m.vertices)
      if (v < 0 || v >= graph.vertex_count())
        throw Error(ErrorKind::InvalidAction, "vertex image out of range");
    for (EdgeId e : m.edges)
      if (e < 0 || e >= graph.edge_count())
        throw Error(ErrorKind::InvalidAction, "edge image out of range");
  }
}

bool is_permutation(const std::vector<int>& p) {
  std::vector<char> seen(p.size(), 0);
  for (int x : p) {
    if (x < 0 || x >= static_cast<int>(p.size()) || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

}  // namespace

GraphAction::GraphAction(GroupPtr group, QuantumGraph graph, std::vector<ElementMap> maps)
    : GraphAction(Subgroup::whole(std::move(group)), std::move(graph), std::move(maps)) {}

GraphAction::GraphAction(Subgroup acting, QuantumGraph graph, std::vector<ElementMap> maps)
    : acting_(std::move(acting)), graph_(std::move(graph)), maps_(std::move(maps)) {
  check_shapes(acting_, graph_, maps_);
}

GraphAction GraphAction::restricted(const Subgroup& h) const {
  if (!h.is_subset_of(acting_))
    throw Error(ErrorKind::InvalidSubgroup, "restriction to a non-subgroup of the acting group");
  return GraphAction(h, graph_, maps_);
}

ActionValidation validate_action(const GraphAction& action, double tol) {
  ActionValidation out;
  const QuantumGraph& gr = action.graph();
  const FiniteGroup& grp = *action.group();
  const auto& elems = action.acting().elements();
  auto fail = [&](std::string check, Element g, int item, std::string detail) {
    out.ok = false;
    out.issues.push_back({std::move(check), g, item, std::move(detail)});
  };

  const Element e = grp.identity();
  for (VertexId v = 0; v < gr.vertex_count(); ++v)
    if (action.vertex_image(e, v) != v) fail("identity", e, v, "identity moves a vertex");
  for (EdgeId x = 0; x < gr.edge_count(); ++x)
    if (action.edge_image(e, x) != x || action.flips(e, x))
      fail("identity", e, x, "identity moves or flips an edge");

  for (Element g : elems) {
    const ElementMap& m = action.maps()[g];
    if (!is_permutation(m.vertices)) fail("permutation", g, -1, "vertex map is not a bijection");
    if (!is_permutation(m.edges)) fail("permutation", g, -1, "edge map is not a bijection");
  }
  if (!out.ok) return out;

  for (Element g : elems)
    for (Element h : elems) {
      const Element hg = grp.mul(h, g);
      for (VertexId v = 0; v < gr.vertex_count(); ++v)
        if (action.vertex_image(hg, v) != action.vertex_image(h, action.vertex_image(g, v)))
          fail("composition", hg, v, "vertex map of h*g differs from h after g");
      for (EdgeId x = 0; x < gr.edge_count(); ++x) {
        const EdgeId gx = action.edge_image(g, x);
        if (action.edge_image(hg, x) != action.edge_image(h, gx) ||
            action.flips(hg, x) != (action.flips(g, x) != action.flips(h, gx)))
          fail("composition", hg, x, "edge map of h*g differs from h after g");
      }
    }

  for (Element g : elems)
    for (EdgeId x = 0; x < gr.edge_count(); ++x) {
      const EdgeRecord& src = gr.edge(x);
      const EdgeRecord& img = gr.edge(action.edge_image(g, x));
      VertexId s = action.vertex_image(g, src.source), t = action.vertex_image(g, src.target);
      if (action.flips(g, x)) std::swap(s, t);
      if (img.source != s || img.target != t)
        fail("incidence", g, x, "edge endpoints are not mapped consistently");
      if (std::abs(img.length - src.length) > tol * std::max(1.0, src.length))
        fail("length", g, x, "edge length not preserved");
    }

  for (VertexId v = 0; v < gr.vertex_count(); ++v) {
    const VertexRecord& rec = gr.vertex(v);
    const int d = static_cast<int>(rec.edge_order.size());
    if (d == 0) continue;
    const CMatrix kv = null_space(hcat(rec.condition.a, rec.condition.b), tol);
    for (Element g : elems) {
      const VertexId gv = action.vertex_image(g, v);
      const VertexRecord& img = gr.vertex(gv);
      if (static_cast<int>(img.edge_order.size()) != d) {
        fail("condition", g, v, "degree not preserved");
        continue;
      }
      CMatrix p = CMatrix::Zero(d, d);
      bool incident_ok = true;
      for (int j = 0; j < d; ++j) {
        const int s = gr.slot(gv, action.edge_image(g, rec.edge_order[j]));
        if (s < 0) {
          incident_ok = false;
          break;
        }
        p(s, j) = 1.0;
      }
      if (!incident_ok) {
        fail("condition", g, v, "incident edges not mapped to incident edges");
        continue;
      }
      CMatrix mapped(2 * d, kv.cols());
      if (kv.cols() > 0) {
        mapped.topRows(d) = p * kv.topRows(d);
        mapped.bottomRows(d) = p * kv.bottomRows(d);
      }
      const CMatrix kgv = null_space(hcat(img.condition.a, img.condition.b), tol);
      if (!same_column_space(mapped, kgv, 1e-8))
        fail("condition", g, v, "vertex condition not preserved");
    }
  }
  return out;
}

const OrbitMember& OrbitData::edge_member(EdgeId e) const {
  for (const auto& m : edge_orbits[edge_orbit_of.at(e)].members)
    if (m.id == e) return m;
  throw Error(ErrorKind::Inconsistency, "edge missing from its orbit");
}

const OrbitMember& OrbitData::vertex_member(VertexId v) const {
  for (const auto& m : vertex_orbits[vertex_orbit_of.at(v)].members)
    if (m.id == v) return m;
  throw Error(ErrorKind::Inconsistency, "vertex missing from its orbit");
}

namespace {

Orbit edge_orbit_at(const GraphAction& a, EdgeId rep) {
  std::vector<Element> stab;
  std::vector<OrbitMember> members;
  std::set<EdgeId> seen;
  for (Element g : a.acting().elements()) {
    const EdgeId img = a.edge_image(g, rep);
    if (img == rep) stab.push_back(g);
    if (seen.insert(img).second) members.push_back({img, g, a.flips(g, rep)});
  }
  std::sort(members.begin(), members.end(),
            [](const OrbitMember& x, const OrbitMember& y) { return x.id < y.id; });
  return Orbit{rep, std::move(members), Subgroup(a.group(), std::move(stab))};
}

Orbit vertex_orbit_at(const GraphAction& a, VertexId rep) {
  std::vector<Element> stab;
  std::vector<OrbitMember> members;
  std::set<VertexId> seen;
  for (Element g : a.acting().elements()) {
    const VertexId img = a.vertex_image(g, rep);
    if (img == rep) stab.push_back(g);
    if (seen.insert(img).second) members.push_back({img, g, false});
  }
  std::sort(members.begin(), members.end(),
            [](const OrbitMember& x, const OrbitMember& y) { return x.id < y.id; });
  return Orbit{rep, std::move(members), Subgroup(a.group(), std::move(stab))};
}

}  // namespace

OrbitData orbits(const GraphAction& action) {
  OrbitData d;
  const QuantumGraph& g = action.graph();
  d.edge_orbit_of.assign(g.edge_count(), -1);
  d.vertex_orbit_of.assign(g.vertex_count(), -1);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (d.edge_orbit_of[e] >= 0) continue;
    Orbit o = edge_orbit_at(action, e);
    for (const auto& m : o.members) d.edge_orbit_of[m.id] = static_cast<int>(d.edge_orbits.size());
    d.edge_orbits.push_back(std::move(o));
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (d.vertex_orbit_of[v] >= 0) continue;
    Orbit o = vertex_orbit_at(action, v);
    for (const auto& m : o.members)
      d.vertex_orbit_of[m.id] = static_cast<int>(d.vertex_orbits.size());
    d.vertex_orbits.push_back(std::move(o));
  }
  return d;
}

OrbitData choose_representatives(const GraphAction& action, const OrbitData& data,
                                 const RepresentativeOverrides& overrides) {
  OrbitData out = data;
  for (const auto& [idx, id] : overrides.edges) {
    if (idx < 0 || idx >= static_cast<int>(data.edge_orbits.size()))
      throw Error(ErrorKind::InvalidArgument, "edge orbit index out of range");
    if (id < 0 || id >= static_cast<int>(data.edge_orbit_of.size()) || data.edge_orbit_of[id] != idx)
      throw Error(ErrorKind::InvalidArgument,
                  "edge " + std::to_string(id) + " is not in edge orbit " + std::to_string(idx));
    out.edge_orbits[idx] = edge_orbit_at(action, id);
  }
  for (const auto& [idx, id] : overrides.vertices) {
    if (idx < 0 || idx >= static_cast<int>(data.vertex_orbits.size()))
      throw Error(ErrorKind::InvalidArgument, "vertex orbit index out of range");
    if (id < 0 || id >= static_cast<int>(data.vertex_orbit_of.size()) ||
        data.vertex_orbit_of[id] != idx)
      throw Error(ErrorKind::InvalidArgument,
                  "vertex " + std::to_string(id) + " is not in vertex orbit " + std::to_string(idx));
    out.vertex_orbits[idx] = vertex_orbit_at(action, id);
  }
  return out;
}

GraphAction subdivide_orbits(const GraphAction& action, const std::vector<EdgeId>& edges) {
  const QuantumGraph& g = action.graph();
  std::set<EdgeId> closed;
  for (EdgeId e : edges) {
    if (e < 0 || e >= g.edge_count()) throw Error(ErrorKind::InvalidArgument, "edge out of range");
    for (Element x : action.acting().elements()) closed.insert(action.edge_image(x, e));
  }
  const int nv = g.vertex_count(), ne = g.edge_count();
  std::vector<int> index(ne, -1);  // position among subdivided edges
  int k = 0;
  for (EdgeId e : closed) index[e] = k++;

  std::vector<VertexRecord> vs = g.vertices();
  std::vector<EdgeRecord> es = g.edges();
  for (EdgeId e : closed) {
    const EdgeRecord old = g.edge(e);
    const VertexId mid = nv + index[e];
    const EdgeId second = ne + index[e];
    es[e] = EdgeRecord{e, old.source, mid, old.length / 2};
    es.push_back(EdgeRecord{second, mid, old.target, old.length / 2});
    for (auto& id : vs[old.target].edge_order)
      if (id == e) id = second;
  }
  for (EdgeId e : closed) {
    const VertexId mid = nv + index[e];
    vs.push_back(VertexRecord{mid, {e, ne + index[e]}, standard_condition(StandardCondition::Neumann, 2)});
  }
  // Fresh records were appended in id order; sort to be safe.
  std::sort(es.begin(), es.end(), [](const EdgeRecord& a, const EdgeRecord& b) { return a.id < b.id; });
  std::sort(vs.begin(), vs.end(), [](const VertexRecord& a, const VertexRecord& b) { return a.id < b.id; });
  QuantumGraph out_graph(std::move(vs), std::move(es));

  std::vector<ElementMap> maps(action.maps().size());
  for (Element x : action.acting().elements()) {
    const ElementMap& m = action.maps()[x];
    ElementMap n;
    n.vertices = m.vertices;
    n.edges = m.edges;
    n.flips = m.flips;
    n.vertices.resize(nv + k);
    n.edges.resize(ne + k);
    n.flips.resize(ne + k);
    for (EdgeId e : closed) {
      const EdgeId img = m.edges[e];
      const bool flip = m.flips[e] != 0;
      n.vertices[nv + index[e]] = nv + index[img];
      const EdgeId first = e, second = ne + index[e];
      const EdgeId img_first = img, img_second = ne + index[img];
      if (!flip) {
        n.edges[first] = img_first;
        n.edges[second] = img_second;
        n.flips[first] = n.flips[second] = 0;
      } else {
        n.edges[first] = img_second;
        n.edges[second] = img_first;
        n.flips[first] = n.flips[second] = 1;
      }
    }
    maps[x] = std::move(n);
  }
  return GraphAction(action.acting(), std::move(out_graph), std::move(maps));
}

namespace {

std::set<EdgeId> offending_edges(const GraphAction& action) {
  const QuantumGraph& g = action.graph();
  std::set<EdgeId> bad;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const EdgeRecord& r = g.edge(e);
    for (Element x : action.acting().elements()) {
      const VertexId s = action.vertex_image(x, r.source);
      const VertexId t = action.vertex_image(x, r.target);
      // x moves an endpoint onto the other end of e: the endpoints are
      // neighbours mapped onto each other.
      if (s == r.target || t == r.source) bad.insert(e);
      if (action.edge_image(x, e) == e && action.flips(x, e)) bad.insert(e);
    }
  }
  // A vertex mapped onto a neighbour joined by a different edge.
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    for (Element x : action.acting().elements()) {
      const VertexId w = action.vertex_image(x, v);
      if (w == v) continue;
      for (EdgeId e : g.vertex(v).edge_order)
        if (g.other_end(e, v) == w) bad.insert(e);
    }
  std::map<std::pair<int, int>, std::vector<EdgeId>> classes;
  for (const auto& r : g.edges()) classes[std::minmax(r.source, r.target)].push_back(r.id);
  for (const auto& [key, ids] : classes)
    if (ids.size() > 1) bad.insert(ids.begin(), ids.end());
  return bad;
}

}  // namespace

bool dummies_needed(const GraphAction& action) { return !offending_edges(action).empty(); }

GraphAction insert_dummies(const GraphAction& action) {
  GraphAction current = action;
  for (int round = 0; round < 16; ++round) {
    const std::set<EdgeId> bad = offending_edges(current);
    if (bad.empty()) return current;
    current = subdivide_orbits(current, std::vector<EdgeId>(bad.begin(), bad.end()));
  }
  throw Error(ErrorKind::Construction, "dummy insertion did not converge");
}

}  // namespace qg
