#pragma once

#include <array>
#include <map>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "qg/action.hpp"
#include "qg/rep.hpp"

namespace qg::builtin {

/// D4 with indices 0 e, 1 σ, 2 σ², 3 σ³, 4 τ, 5 τσ, 6 τσ², 7 τσ³. In the
/// plane σ is the quarter turn and τ the reflection y ↦ −y.
GroupPtr d4();

Subgroup h1(const GroupPtr& d4);  // {e, τ, τσ², σ²}
Subgroup h2(const GroupPtr& d4);  // {e, τσ, τσ³, σ²}
Subgroup h3(const GroupPtr& d4);  // ⟨σ⟩

Representation r1(const GroupPtr& d4);
Representation r2(const GroupPtr& d4);
Representation r3(const GroupPtr& d4);
/// Real orthogonal 2-dim irrep with σ ↦ ((0,1),(−1,0)) and the reflection
/// axes turned by θ.
Representation r2dim(const GroupPtr& d4, double theta);
/// 2-dim irrep with σ ↦ diag(i, −i); ρ(τσ) is not symmetric.
Representation r2dim_unitary(const GroupPtr& d4);
/// The four 1-dim irreps and r2dim(0), in that order. Checked against the
/// orthogonality relations before being returned.
std::vector<std::pair<std::string, Representation>> d4_irreps(const GroupPtr& d4);

/// Counter-clockwise rotation by θ; r2dim(θ) = change_basis(r2dim(0), rotation(θ)).
CMatrix rotation(double theta);

struct ExampleBundle {
  std::string name;
  GroupPtr group;
  GraphAction action;
  std::vector<std::pair<std::string, Representation>> reps;
  std::map<std::string, double> params;

  const Representation& rep(const std::string& key) const;
};

/// Builds the action of a group of plane isometries on a graph embedded in
/// the plane by matching coordinates. `matrices` is indexed by element.
GraphAction geometric_action(const GroupPtr& group, const QuantumGraph& graph,
                             const std::vector<std::array<double, 2>>& positions,
                             const std::vector<std::array<double, 4>>& matrices);

ExampleBundle square_d4(double a = 1.0, double b = 0.62, double c = 0.41,
                        double theta = std::numbers::pi / 3);
ExampleBundle interval_z2(double l = 1.0);
/// Star with a Neumann center, two Dirichlet leaves and one leaf carrying
/// both f = 0 and f' = 0.
ExampleBundle ygraph(const std::array<double, 3>& lengths = {1.0, 1.0, 0.7});

}  // namespace qg::builtin
