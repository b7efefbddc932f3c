#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qg/linalg.hpp"

namespace qg {

using VertexId = int;
using EdgeId = int;

/// Homogeneous vertex condition A·f|_v + B·f'|_v = 0. Column j refers to the
/// j-th edge of the owning vertex's edge_order; f' are outgoing derivatives.
struct VertexCondition {
  CMatrix a;
  CMatrix b;
};

enum class StandardCondition { Neumann, Dirichlet };

/// The standard Neumann (Kirchhoff) or Dirichlet matrices for a vertex of the
/// given degree.
VertexCondition standard_condition(StandardCondition kind, int degree);

struct VertexRecord {
  VertexId id = 0;
  std::vector<EdgeId> edge_order;
  VertexCondition condition;
};

struct EdgeRecord {
  EdgeId id = 0;
  VertexId source = 0;
  VertexId target = 0;
  double length = 1.0;
};

/// Metric graph with per-vertex conditions. Vertex and edge ids equal their
/// positions (0..n-1). Validated on construction; immutable afterwards.
class QuantumGraph {
 public:
  QuantumGraph(std::vector<VertexRecord> vertices, std::vector<EdgeRecord> edges,
               bool allow_parallel = true);

  const std::vector<VertexRecord>& vertices() const { return vertices_; }
  const std::vector<EdgeRecord>& edges() const { return edges_; }
  const VertexRecord& vertex(VertexId v) const { return vertices_.at(v); }
  const EdgeRecord& edge(EdgeId e) const { return edges_.at(e); }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int degree(VertexId v) const { return static_cast<int>(vertices_.at(v).edge_order.size()); }
  double total_length() const;

  /// Position of edge e within vertex v's edge_order, or -1.
  int slot(VertexId v, EdgeId e) const;
  /// Incident edge ids in ascending order.
  std::vector<EdgeId> incident_edges(VertexId v) const;
  /// The endpoint of e that is not v.
  VertexId other_end(EdgeId e, VertexId v) const;
  bool has_parallel_edges() const;

 private:
  std::vector<VertexRecord> vertices_;
  std::vector<EdgeRecord> edges_;
};

/// Builds a graph where every vertex carries a named standard condition with
/// edge_order = incident edges ascending. Dirichlet is used for vertices in
/// `dirichlet`, Neumann elsewhere.
QuantumGraph make_standard_graph(int vertex_count, const std::vector<EdgeRecord>& edges,
                                 const std::vector<VertexId>& dirichlet = {});

struct VertexVerdict {
  VertexId id;
  bool exact;
  int rank;
  int degree;
  int rows;
};

struct ExactnessReport {
  bool exact = true;
  std::vector<VertexVerdict> vertices;
};

ExactnessReport is_exact(const QuantumGraph& g, double tol = 1e-10);
bool is_self_adjoint(const QuantumGraph& g, double tol = 1e-10);
bool vertex_self_adjoint(const VertexCondition& c, double tol = 1e-10);

/// Splits edge e at distance x from its source. The first piece keeps id e,
/// the second piece gets id edge_count(); the new Neumann degree-2 vertex gets
/// id vertex_count().
QuantumGraph subdivide_edge(const QuantumGraph& g, EdgeId e, double x);

/// Rescales each condition row so its leading nonzero entry of (A|B) is 1.
QuantumGraph normalize_conditions(const QuantumGraph& g, double tol = 1e-12);

}  // namespace qg
