#include "qg/quotient.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qg/error.hpp"

namespace qg {

CMatrix build_theta(const VertexLocal& local) {
  const int n = local.n, d = local.d, m = static_cast<int>(local.mu.size());
  if (static_cast<int>(local.nu.size()) != n || static_cast<int>(local.fixed_dims.size()) != m)
    throw Error(ErrorKind::Construction, "inconsistent vertex-local data");
  std::vector<int> offset(m + 1, 0);
  for (int j = 0; j < m; ++j) {
    if (local.fixed_dims[j] < 0 || local.fixed_dims[j] > d)
      throw Error(ErrorKind::Construction, "fixed dimension out of range");
    offset[j + 1] = offset[j] + local.fixed_dims[j];
  }
  CMatrix theta = CMatrix::Zero(n * d, offset[m]);
  for (int i = 0; i < n; ++i) {
    auto it = std::find(local.mu.begin(), local.mu.end(), local.nu[i]);
    if (it == local.mu.end()) throw Error(ErrorKind::Construction, "nu entry missing from mu");
    const int j = static_cast<int>(it - local.mu.begin());
    for (int c = 0; c < local.fixed_dims[j]; ++c) theta(i * d + c, offset[j] + c) = 1.0;
  }
  return theta;
}

CMatrix build_gothic(const VertexLocal& local, const Representation& rep, const CMatrix& basis,
                     const std::vector<AdaptedBasis>& edge_bases) {
  const int n = local.n, d = local.d;
  if (rep.dim() != d || static_cast<int>(local.witnesses.size()) != n)
    throw Error(ErrorKind::Construction, "inconsistent vertex-local data");
  const FiniteGroup& g = *rep.group();
  CMatrix out = CMatrix::Zero(n * d, n * d);
  for (int i = 0; i < n; ++i) {
    const int orbit = local.nu[i];
    if (orbit < 0 || orbit >= static_cast<int>(edge_bases.size()))
      throw Error(ErrorKind::Construction, "edge orbit index out of range");
    const CMatrix block =
        matrix_in_bases(rep, g.inv(local.witnesses[i]), basis, edge_bases[orbit].basis);
    out.block(i * d, i * d, d, d) = block.transpose();
  }
  return out;
}

VertexCondition build_vertex_condition(const VertexLocal& local, const VertexCondition& cond,
                                       const Representation& rep, const CMatrix& basis,
                                       const std::vector<AdaptedBasis>& edge_bases) {
  if (cond.a.cols() != local.n || cond.b.cols() != local.n || cond.a.rows() != cond.b.rows())
    throw Error(ErrorKind::ShapeMismatch, "vertex condition does not match the vertex degree");
  const CMatrix id = CMatrix::Identity(local.d, local.d);
  const CMatrix right = build_gothic(local, rep, basis, edge_bases) * build_theta(local);
  return {kron(cond.a, id) * right, kron(cond.b, id) * right};
}

VertexCondition reduce_rows(const VertexCondition& cond, double tol) {
  if (cond.a.rows() != cond.b.rows() || cond.a.cols() != cond.b.cols())
    throw Error(ErrorKind::ShapeMismatch, "A and B must have the same shape");
  const Eigen::Index d = cond.a.cols();
  const CMatrix r = reduced_row_echelon(hcat(cond.a, cond.b), tol);
  return {r.leftCols(d), r.rightCols(d)};
}

QuotientRecipe make_recipe(const GraphAction& action, const Representation& rep,
                           const QuotientOptions& options) {
  if (rep.group().get() != action.group().get())
    throw Error(ErrorKind::GroupMismatch, "representation and action use different groups");
  if (!rep.domain().is_subset_of(action.acting()))
    throw Error(ErrorKind::InvalidSubgroup, "representation lives outside the acting group");
  const GraphAction acting = insert_dummies(action.restricted(rep.domain()));
  const int d = rep.dim();
  const CMatrix basis = options.basis.value_or(CMatrix::Identity(d, d));
  if (basis.rows() != d || basis.cols() != d || numerical_rank(basis, 1e-12) < d)
    throw Error(ErrorKind::InvalidArgument, "global basis must be an invertible dim x dim matrix");
  OrbitData data = choose_representatives(acting, orbits(acting), options.overrides);
  std::vector<AdaptedBasis> bases;
  bases.reserve(data.edge_orbits.size());
  for (const Orbit& o : data.edge_orbits)
    bases.push_back(adapted_basis(rep, o.stabilizer, options.basis_tol, basis));
  return QuotientRecipe{acting, rep, std::move(data), basis, std::move(bases), options.reduce_tol};
}

namespace {

VertexLocal local_data(const QuotientRecipe& r, VertexId v) {
  const QuantumGraph& g = r.action.graph();
  VertexLocal local;
  local.d = r.rep.dim();
  local.n = g.degree(v);
  for (EdgeId e : g.vertex(v).edge_order) {
    const int orbit = r.orbits.edge_orbit_of[e];
    local.nu.push_back(orbit);
    local.witnesses.push_back(r.orbits.edge_member(e).witness);
    if (std::find(local.mu.begin(), local.mu.end(), orbit) == local.mu.end()) {
      local.mu.push_back(orbit);
      local.fixed_dims.push_back(r.edge_bases[orbit].fixed_dim);
    }
  }
  return local;
}

}  // namespace

QuotientResult build_quotient(const QuotientRecipe& recipe) {
  const QuantumGraph& g = recipe.action.graph();
  const OrbitData& od = recipe.orbits;
  if (recipe.edge_bases.size() != od.edge_orbits.size())
    throw Error(ErrorKind::Construction, "one adapted basis per edge orbit is required");

  // Quotient edges e^i_j, numbered orbit by orbit.
  std::vector<std::vector<EdgeId>> copies(od.edge_orbits.size());
  std::vector<QuotientEdgeInfo> edge_info;
  for (size_t i = 0; i < od.edge_orbits.size(); ++i) {
    const EdgeId rep = od.edge_orbits[i].representative;
    for (int j = 0; j < recipe.edge_bases[i].fixed_dim; ++j) {
      const EdgeId id = static_cast<EdgeId>(edge_info.size());
      copies[i].push_back(id);
      edge_info.push_back({id, static_cast<int>(i), j, rep, g.edge(rep).length});
    }
  }

  std::vector<QuotientVertexInfo> vertex_info;
  std::vector<VertexRecord> vertices;
  std::vector<int> qvertex(od.vertex_orbits.size(), -1);
  std::vector<int> dropped;
  for (size_t k = 0; k < od.vertex_orbits.size(); ++k) {
    const VertexId rep = od.vertex_orbits[k].representative;
    VertexLocal local = local_data(recipe, rep);
    std::vector<EdgeId> order;
    for (int orbit : local.mu)
      for (EdgeId e : copies[orbit]) order.push_back(e);
    if (order.empty()) {
      dropped.push_back(static_cast<int>(k));
      continue;
    }
    const VertexCondition pre = build_vertex_condition(local, g.vertex(rep).condition, recipe.rep,
                                                       recipe.basis, recipe.edge_bases);
    const VertexId id = static_cast<VertexId>(vertices.size());
    qvertex[k] = id;
    vertices.push_back({id, std::move(order), reduce_rows(pre, recipe.reduce_tol)});
    vertex_info.push_back({id, static_cast<int>(k), rep, std::move(local), pre, -1});
  }

  std::vector<EdgeRecord> edges;
  for (const auto& info : edge_info) {
    const EdgeRecord& orig = g.edge(info.representative);
    const int s = qvertex[od.vertex_orbit_of[orig.source]];
    const int t = qvertex[od.vertex_orbit_of[orig.target]];
    if (s < 0 || t < 0) throw Error(ErrorKind::Inconsistency, "live edge at a dropped vertex");
    edges.push_back({info.id, s, t, info.length});
  }
  return QuotientResult{QuantumGraph(std::move(vertices), std::move(edges)), std::move(edge_info),
                        std::move(vertex_info), std::move(dropped)};
}

const char* to_string(QuotientClass c) {
  switch (c) {
    case QuotientClass::Generalized: return "generalized";
    case QuotientClass::Proper: return "proper";
    case QuotientClass::ProperExact: return "proper-and-exact";
  }
  return "unknown";
}

Classification classify(const QuotientResult& result, double tol) {
  Classification out;
  bool proper = true, exact = true;
  for (const auto& v : result.graph.vertices()) {
    const int deg = static_cast<int>(v.edge_order.size());
    const CMatrix ab = hcat(v.condition.a, v.condition.b);
    const int rank = ab.rows() == 0 ? 0 : numerical_rank(ab, tol);
    out.vertices.push_back({v.id, rank, deg});
    if (rank > deg) proper = false;
    if (rank != deg) exact = false;
  }
  out.kind = !proper ? QuotientClass::Generalized
                     : (exact ? QuotientClass::ProperExact : QuotientClass::Proper);
  return out;
}

int predicted_degree(const GraphAction& action, const Representation& rep, VertexId v,
                     double tol) {
  const QuantumGraph& g = action.graph();
  const Character chi = character(rep);
  Complex sum(0.0);
  int order = 0;
  for (Element x : rep.domain().elements()) {
    if (!action.acting().contains(x))
      throw Error(ErrorKind::InvalidSubgroup, "representation lives outside the acting group");
    if (action.vertex_image(x, v) != v) continue;
    ++order;
    int fixed = 0;
    for (EdgeId e : g.incident_edges(v))
      if (action.edge_image(x, e) == e) ++fixed;
    sum += static_cast<double>(fixed) * chi(x);
  }
  sum /= static_cast<double>(order);
  const double r = std::round(sum.real());
  if (std::abs(sum - Complex(r, 0.0)) > tol)
    throw Error(ErrorKind::Inconsistency, "non-integral degree prediction");
  return static_cast<int>(r);
}

QuotientResult split_vertices(const QuotientResult& result, double tol) {
  const QuantumGraph& g = result.graph;
  std::vector<VertexRecord> vertices = g.vertices();
  std::vector<EdgeRecord> edges = g.edges();
  std::vector<QuotientVertexInfo> info = result.vertices;

  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const VertexRecord rec = g.vertex(v);
    const int d = static_cast<int>(rec.edge_order.size());
    const CMatrix ab = hcat(rec.condition.a, rec.condition.b);
    const double cut = tol * std::max(1.0, ab.size() ? ab.cwiseAbs().maxCoeff() : 0.0);

    std::vector<int> parent(d);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::vector<int> row_slot(ab.rows(), -1);
    for (Eigen::Index r = 0; r < ab.rows(); ++r)
      for (int j = 0; j < d; ++j)
        if (std::abs(ab(r, j)) > cut || std::abs(ab(r, d + j)) > cut) {
          if (row_slot[r] < 0) row_slot[r] = j;
          else parent[find(j)] = find(row_slot[r]);
        }

    std::vector<int> roots;
    for (int j = 0; j < d; ++j)
      if (std::find(roots.begin(), roots.end(), find(j)) == roots.end()) roots.push_back(find(j));
    if (roots.size() < 2) continue;

    for (size_t c = 0; c < roots.size(); ++c) {
      std::vector<int> slots;
      for (int j = 0; j < d; ++j)
        if (find(j) == roots[c]) slots.push_back(j);
      std::vector<Eigen::Index> rows;
      for (Eigen::Index r = 0; r < ab.rows(); ++r)
        if (row_slot[r] >= 0 && find(row_slot[r]) == roots[c]) rows.push_back(r);

      VertexRecord part;
      part.id = c == 0 ? v : static_cast<VertexId>(vertices.size());
      part.condition.a = CMatrix::Zero(rows.size(), slots.size());
      part.condition.b = CMatrix::Zero(rows.size(), slots.size());
      for (size_t s = 0; s < slots.size(); ++s) {
        part.edge_order.push_back(rec.edge_order[slots[s]]);
        for (size_t r = 0; r < rows.size(); ++r) {
          part.condition.a(r, s) = ab(rows[r], slots[s]);
          part.condition.b(r, s) = ab(rows[r], d + slots[s]);
        }
      }
      for (EdgeId e : part.edge_order) {
        EdgeRecord& er = edges[e];
        if (er.source == v) er.source = part.id;
        else er.target = part.id;
      }
      if (c == 0) {
        vertices[v] = part;
      } else {
        QuotientVertexInfo copy = info[v];
        copy.id = part.id;
        copy.split_from = v;
        info.push_back(std::move(copy));
        vertices.push_back(std::move(part));
      }
    }
  }
  return QuotientResult{QuantumGraph(std::move(vertices), std::move(edges)), result.edges,
                        std::move(info), result.dropped_vertex_orbits};
}

}  // namespace qg
