#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qg/action.hpp"
#include "qg/graph.hpp"
#include "qg/rep.hpp"

namespace qg {

/// Data attached to one representative vertex ṽ of degree n.
///
/// Slot i (0-based) of ṽ's edge_order is the edge witnesses[i] · ẽ^{nu[i]}.
/// `mu` lists the distinct entries of `nu` in order of first appearance and
/// `fixed_dims[j]` is d_{mu[j]}.
struct VertexLocal {
  int n = 0;
  int d = 1;
  std::vector<int> nu;
  std::vector<int> mu;
  std::vector<int> fixed_dims;
  std::vector<Element> witnesses;
};

/// Θ = (Θ' ⊗ I_d) with the columns of dead copies removed. Shape
/// (n·d) × Σ d_{mu_j}.
CMatrix build_theta(const VertexLocal& local);

/// Block diagonal matrix whose i-th d×d block is the transpose of
/// [g_i^{-1}] from `basis` to `edge_bases[nu[i]]` (see matrix_in_bases).
CMatrix build_gothic(const VertexLocal& local, const Representation& rep, const CMatrix& basis,
                     const std::vector<AdaptedBasis>& edge_bases);

/// (A_ṽ ⊗ I_d)·𝔊·Θ and (B_ṽ ⊗ I_d)·𝔊·Θ, before row reduction.
VertexCondition build_vertex_condition(const VertexLocal& local, const VertexCondition& cond,
                                       const Representation& rep, const CMatrix& basis,
                                       const std::vector<AdaptedBasis>& edge_bases);

/// Row echelon form of (A|B) with zero rows dropped, split back into (A', B').
VertexCondition reduce_rows(const VertexCondition& cond, double tol = 1e-10);

struct QuotientOptions {
  /// Global basis B of the representation space (identity when empty).
  std::optional<CMatrix> basis;
  RepresentativeOverrides overrides;
  double basis_tol = 1e-9;
  double reduce_tol = 1e-10;
};

/// Everything build_quotient needs. The action acts through rep.domain() and
/// has already been normalized by insert_dummies.
struct QuotientRecipe {
  GraphAction action;
  Representation rep;
  OrbitData orbits;
  CMatrix basis;
  std::vector<AdaptedBasis> edge_bases;  // one per edge orbit
  double reduce_tol = 1e-10;
};

/// Restricts the action to the rep's domain, inserts dummies, picks orbit
/// representatives and adapted bases.
QuotientRecipe make_recipe(const GraphAction& action, const Representation& rep,
                           const QuotientOptions& options = {});

struct QuotientEdgeInfo {
  EdgeId id;
  int orbit;
  int copy;  // j, 0-based, below d_i
  EdgeId representative;
  double length;
};

struct QuotientVertexInfo {
  VertexId id;
  int orbit;
  VertexId representative;
  VertexLocal local;
  VertexCondition pre_reduction;
  /// Set by split_vertices: id of the vertex this one was carved from.
  int split_from = -1;
};

struct QuotientResult {
  QuantumGraph graph;
  std::vector<QuotientEdgeInfo> edges;
  std::vector<QuotientVertexInfo> vertices;
  /// Vertex orbits with no live incident edge; they carry no vertex.
  std::vector<int> dropped_vertex_orbits;
};

QuotientResult build_quotient(const QuotientRecipe& recipe);

enum class QuotientClass { Generalized, Proper, ProperExact };
const char* to_string(QuotientClass c);

struct VertexClass {
  VertexId id;
  int rank;
  int degree;
};

struct Classification {
  QuotientClass kind = QuotientClass::ProperExact;
  std::vector<VertexClass> vertices;
};

Classification classify(const QuotientResult& result, double tol = 1e-10);

/// ⟨χ_{C[E_ṽ]}, χ_R⟩ over the stabilizer of ṽ inside rep.domain(). Throws
/// Inconsistency when the product is not an integer.
int predicted_degree(const GraphAction& action, const Representation& rep, VertexId v,
                     double tol = 1e-8);

/// Splits each vertex whose reduced condition decouples into blocks of
/// incident edges.
QuotientResult split_vertices(const QuotientResult& result, double tol = 1e-12);

}  // namespace qg
