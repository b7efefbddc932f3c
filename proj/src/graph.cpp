#include "qg/graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qg/error.hpp"

namespace qg {

VertexCondition standard_condition(StandardCondition kind, int degree) {
  if (degree < 1) throw Error(ErrorKind::InvalidArgument, "degree must be >= 1");
  VertexCondition c{CMatrix::Zero(degree, degree), CMatrix::Zero(degree, degree)};
  if (kind == StandardCondition::Dirichlet) {
    c.a.setIdentity();
    return c;
  }
  for (int i = 0; i + 1 < degree; ++i) {
    c.a(i, i) = 1.0;
    c.a(i, i + 1) = -1.0;
  }
  c.b.row(degree - 1).setOnes();
  return c;
}

QuantumGraph::QuantumGraph(std::vector<VertexRecord> vertices, std::vector<EdgeRecord> edges,
                           bool allow_parallel)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  const int nv = vertex_count(), ne = edge_count();
  for (int i = 0; i < nv; ++i)
    if (vertices_[i].id != i)
      throw Error(ErrorKind::InvalidGraph, "vertex ids must be 0..n-1 in order");
  std::vector<std::multiset<EdgeId>> incident(nv);
  for (int e = 0; e < ne; ++e) {
    const EdgeRecord& r = edges_[e];
    if (r.id != e) throw Error(ErrorKind::InvalidGraph, "edge ids must be 0..n-1 in order");
    if (!(r.length > 0.0) || !std::isfinite(r.length))
      throw Error(ErrorKind::InvalidGraph, "edge " + std::to_string(e) + " has non-positive length");
    if (r.source < 0 || r.source >= nv || r.target < 0 || r.target >= nv)
      throw Error(ErrorKind::InvalidGraph, "edge " + std::to_string(e) + " has unknown endpoint");
    if (r.source == r.target)
      throw Error(ErrorKind::InvalidGraph, "edge " + std::to_string(e) + " is a loop");
    incident[r.source].insert(e);
    incident[r.target].insert(e);
  }
  for (int v = 0; v < nv; ++v) {
    const VertexRecord& r = vertices_[v];
    std::multiset<EdgeId> order(r.edge_order.begin(), r.edge_order.end());
    if (order != incident[v])
      throw Error(ErrorKind::InvalidGraph,
                  "edge_order of vertex " + std::to_string(v) + " does not list its incident edges");
    const int d = static_cast<int>(r.edge_order.size());
    if (r.condition.a.rows() != r.condition.b.rows() || r.condition.a.cols() != d ||
        r.condition.b.cols() != d)
      throw Error(ErrorKind::InvalidGraph,
                  "condition matrices of vertex " + std::to_string(v) + " have wrong shape");
  }
  if (!allow_parallel && has_parallel_edges())
    throw Error(ErrorKind::InvalidGraph, "graph has parallel edges");
}

double QuantumGraph::total_length() const {
  double s = 0.0;
  for (const auto& e : edges_) s += e.length;
  return s;
}

int QuantumGraph::slot(VertexId v, EdgeId e) const {
  const auto& order = vertices_.at(v).edge_order;
  auto it = std::find(order.begin(), order.end(), e);
  return it == order.end() ? -1 : static_cast<int>(it - order.begin());
}

std::vector<EdgeId> QuantumGraph::incident_edges(VertexId v) const {
  std::vector<EdgeId> out = vertices_.at(v).edge_order;
  std::sort(out.begin(), out.end());
  return out;
}

VertexId QuantumGraph::other_end(EdgeId e, VertexId v) const {
  const EdgeRecord& r = edges_.at(e);
  if (r.source == v) return r.target;
  if (r.target == v) return r.source;
  throw Error(ErrorKind::InvalidArgument, "edge is not incident to vertex");
}

bool QuantumGraph::has_parallel_edges() const {
  std::set<std::pair<int, int>> seen;
  for (const auto& e : edges_) {
    auto key = std::minmax(e.source, e.target);
    if (!seen.insert(key).second) return true;
  }
  return false;
}

QuantumGraph make_standard_graph(int vertex_count, const std::vector<EdgeRecord>& edges,
                                 const std::vector<VertexId>& dirichlet) {
  std::vector<VertexRecord> vs(vertex_count);
  for (int v = 0; v < vertex_count; ++v) vs[v].id = v;
  for (const auto& e : edges) {
    if (e.source < 0 || e.source >= vertex_count || e.target < 0 || e.target >= vertex_count)
      throw Error(ErrorKind::InvalidGraph, "edge endpoint out of range");
    vs[e.source].edge_order.push_back(e.id);
    vs[e.target].edge_order.push_back(e.id);
  }
  for (auto& v : vs) {
    std::sort(v.edge_order.begin(), v.edge_order.end());
    const bool dir = std::find(dirichlet.begin(), dirichlet.end(), v.id) != dirichlet.end();
    const int d = static_cast<int>(v.edge_order.size());
    if (d == 0) throw Error(ErrorKind::InvalidGraph, "isolated vertex " + std::to_string(v.id));
    v.condition = standard_condition(dir ? StandardCondition::Dirichlet : StandardCondition::Neumann, d);
  }
  return QuantumGraph(std::move(vs), edges);
}

ExactnessReport is_exact(const QuantumGraph& g, double tol) {
  ExactnessReport rep;
  for (const auto& v : g.vertices()) {
    const int d = static_cast<int>(v.edge_order.size());
    const int rows = static_cast<int>(v.condition.a.rows());
    const int rank = rows == 0 ? 0 : numerical_rank(hcat(v.condition.a, v.condition.b), tol);
    const bool ok = rows == d && rank == d;
    rep.vertices.push_back({v.id, ok, rank, d, rows});
    rep.exact = rep.exact && ok;
  }
  return rep;
}

bool vertex_self_adjoint(const VertexCondition& c, double tol) {
  const CMatrix ab = c.a * c.b.adjoint();
  const CMatrix diff = ab - ab.adjoint();
  return spectral_norm(diff) <= tol * (1.0 + spectral_norm(ab));
}

bool is_self_adjoint(const QuantumGraph& g, double tol) {
  if (!is_exact(g, tol).exact) return false;
  return std::all_of(g.vertices().begin(), g.vertices().end(),
                     [&](const VertexRecord& v) { return vertex_self_adjoint(v.condition, tol); });
}

QuantumGraph subdivide_edge(const QuantumGraph& g, EdgeId e, double x) {
  const EdgeRecord old = g.edge(e);
  if (!(x > 0.0 && x < old.length))
    throw Error(ErrorKind::InvalidArgument, "subdivision point must lie strictly inside the edge");
  std::vector<VertexRecord> vs = g.vertices();
  std::vector<EdgeRecord> es = g.edges();
  const VertexId mid = g.vertex_count();
  const EdgeId second = g.edge_count();
  es[e] = EdgeRecord{e, old.source, mid, x};
  es.push_back(EdgeRecord{second, mid, old.target, old.length - x});
  for (auto& id : vs[old.target].edge_order)
    if (id == e) id = second;
  vs.push_back(VertexRecord{mid, {e, second}, standard_condition(StandardCondition::Neumann, 2)});
  return QuantumGraph(std::move(vs), std::move(es));
}

QuantumGraph normalize_conditions(const QuantumGraph& g, double tol) {
  std::vector<VertexRecord> vs = g.vertices();
  for (auto& v : vs) {
    CMatrix ab = hcat(v.condition.a, v.condition.b);
    const int d = static_cast<int>(v.condition.a.cols());
    for (Eigen::Index r = 0; r < ab.rows(); ++r) {
      for (Eigen::Index c = 0; c < ab.cols(); ++c)
        if (std::abs(ab(r, c)) > tol) {
          ab.row(r) /= ab(r, c);
          break;
        }
    }
    v.condition.a = ab.leftCols(d);
    v.condition.b = ab.rightCols(d);
  }
  return QuantumGraph(std::move(vs), g.edges());
}

}  // namespace qg
