#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qg/graph.hpp"
#include "qg/group.hpp"

namespace qg {

/// Image of the graph under one group element. `flips[e]` is set when the
/// element carries source(e) to target(g·e).
struct ElementMap {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;
  std::vector<char> flips;
};

/// Left action of a group (or of one of its subgroups, `acting()`) on a
/// quantum graph, stored per element. Maps for elements outside the acting
/// subgroup are ignored. Induced action on functions: (g·f)(x) = f(g^{-1}x).
class GraphAction {
 public:
  GraphAction(GroupPtr group, QuantumGraph graph, std::vector<ElementMap> maps);
  GraphAction(Subgroup acting, QuantumGraph graph, std::vector<ElementMap> maps);

  const GroupPtr& group() const { return acting_.parent(); }
  const Subgroup& acting() const { return acting_; }
  const QuantumGraph& graph() const { return graph_; }
  const std::vector<ElementMap>& maps() const { return maps_; }

  VertexId vertex_image(Element g, VertexId v) const { return maps_[g].vertices[v]; }
  EdgeId edge_image(Element g, EdgeId e) const { return maps_[g].edges[e]; }
  bool flips(Element g, EdgeId e) const { return maps_[g].flips[e] != 0; }

  /// Same maps, acting subgroup narrowed to h.
  GraphAction restricted(const Subgroup& h) const;

 private:
  Subgroup acting_;
  QuantumGraph graph_;
  std::vector<ElementMap> maps_;
};

struct ActionIssue {
  std::string check;
  Element g;
  int item;  // vertex or edge id, -1 when not applicable
  std::string detail;
};

struct ActionValidation {
  bool ok = true;
  std::vector<ActionIssue> issues;
};

/// Exhaustive check of the action invariants: identity, composition,
/// incidence, lengths and preservation of vertex conditions (as equality of
/// the kernels of (A|B) after permuting columns).
ActionValidation validate_action(const GraphAction& action, double tol = 1e-9);

struct OrbitMember {
  int id;
  Element witness;  // witness · representative == id
  bool flip;        // for edges: orientation reversed by the witness
};

struct Orbit {
  int representative;
  std::vector<OrbitMember> members;
  Subgroup stabilizer;
};

struct OrbitData {
  std::vector<Orbit> edge_orbits;
  std::vector<Orbit> vertex_orbits;
  std::vector<int> edge_orbit_of;
  std::vector<int> vertex_orbit_of;

  const OrbitMember& edge_member(EdgeId e) const;
  const OrbitMember& vertex_member(VertexId v) const;
};

/// Orbits under the acting subgroup, representatives = smallest id, witnesses
/// = smallest element index, setwise stabilizers.
OrbitData orbits(const GraphAction& action);

struct RepresentativeOverrides {
  std::map<int, EdgeId> edges;      // orbit index -> chosen member
  std::map<int, VertexId> vertices;
};

/// Re-roots orbits at the chosen members and recomputes witnesses and
/// stabilizers. Throws InvalidArgument if a choice lies outside its orbit.
OrbitData choose_representatives(const GraphAction& action, const OrbitData& data,
                                 const RepresentativeOverrides& overrides);

/// Subdivides at their midpoints every edge in the closure of `edges` under the
/// acting subgroup, inserting Neumann degree-2 vertices, and extends the
/// action to the new graph. Edge e keeps id e for its source half; the target
/// halves and midpoints get fresh ids in increasing order of e.
GraphAction subdivide_orbits(const GraphAction& action, const std::vector<EdgeId>& edges);

/// Equivariant dummy insertion until no element maps a vertex to a neighbour,
/// no edge is reversed onto itself and no parallel edges remain.
GraphAction insert_dummies(const GraphAction& action);

/// True when the action already satisfies the insert_dummies post-conditions.
bool dummies_needed(const GraphAction& action);

}  // namespace qg
