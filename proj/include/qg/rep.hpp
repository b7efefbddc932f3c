#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qg/group.hpp"
#include "qg/linalg.hpp"

namespace qg {

/// A complex matrix representation of a subgroup (possibly the whole group).
///
/// Matrices are indexed by parent-group element index; entries for elements
/// outside the domain are empty. Construction only checks shapes; use
/// validate_rep for the homomorphism property.
class Representation {
 public:
  Representation(Subgroup domain, int dim, std::vector<CMatrix> matrices);

  /// Builds from a callback g -> rho(g) over the domain.
  template <class F>
  static Representation from_function(Subgroup domain, int dim, F&& f) {
    std::vector<CMatrix> m(domain.parent()->order());
    for (Element g : domain.elements()) m[g] = f(g);
    return Representation(std::move(domain), dim, std::move(m));
  }

  const Subgroup& domain() const { return domain_; }
  const GroupPtr& group() const { return domain_.parent(); }
  int dim() const { return dim_; }
  /// Matrix of element g (must lie in the domain).
  const CMatrix& operator()(Element g) const;

 private:
  Subgroup domain_;
  int dim_;
  std::vector<CMatrix> matrices_;
};

struct RepValidation {
  bool ok = true;
  double max_deviation = 0.0;
  /// Worst offending pair (g, h); h == -1 marks the identity check.
  Element worst_g = -1;
  Element worst_h = -1;
};

RepValidation validate_rep(const Representation& rep, double tol);

/// Class function on a subgroup, values indexed by parent element index.
struct Character {
  Subgroup domain;
  std::vector<Complex> values;

  Complex operator()(Element g) const { return values[g]; }
};

Character character(const Representation& rep);

/// (1/|H|) Σ conj(a(g)) b(g); throws GroupMismatch when domains differ.
Complex char_inner_product(const Character& a, const Character& b);

/// Same matrices viewed on the subgroup h ⊆ rep.domain().
Representation restrict(const Representation& rep, const Subgroup& h);

/// Induction to `target` (a subgroup containing rep.domain(); usually the
/// whole group). Block (i, j) of Ind(g) is rho(t_i^{-1} g t_j) when that lies in
/// the domain, with t the left transversal of rep.domain() in target.
Representation induce(const Representation& rep, const Subgroup& target);
Representation induce(const Representation& rep);

/// Character equality within tol (isomorphism criterion over C).
bool is_isomorphic(const Representation& a, const Representation& b, double tol);

/// Conjugated representation c^{-1} rho(g) c.
Representation change_basis(const Representation& rep, const CMatrix& c);

// Standard constructions.
Representation trivial_rep(const Subgroup& domain, int dim = 1);
Representation regular_rep(const Subgroup& domain);
/// Permutation representation on the left cosets of h inside domain.
Representation coset_rep(const Subgroup& domain, const Subgroup& h);
Representation direct_sum(const Representation& a, const Representation& b);
Representation tensor_product(const Representation& a, const Representation& b);

/// Basis of R adapted to a subgroup: the first fixed_dim columns span the
/// H-fixed vectors, the rest span the kernel of the averaging projector.
struct AdaptedBasis {
  CMatrix basis;
  int fixed_dim = 0;
  CMatrix projector;
};

/// Averaging projector (1/|H|) Σ_{h∈H} rho(h).
CMatrix averaging_projector(const Representation& rep, const Subgroup& h);

/// Computes an adapted basis. Columns are orthonormal within each block and
/// are obtained by projecting `reference` columns (identity when omitted), so
/// a reference basis that already fits is returned unchanged (up to
/// orthonormalization). Rank is decided by singular values >= tol·σ_max.
/// Throws InvalidRepresentation when the projector is not idempotent.
AdaptedBasis adapted_basis(const Representation& rep, const Subgroup& h, double tol = 1e-9,
                           const std::optional<CMatrix>& reference = std::nullopt);

/// C_to^{-1} · rho(g) · C_from. Throws InvalidArgument on a singular basis.
CMatrix matrix_in_bases(const Representation& rep, Element g, const CMatrix& from,
                        const CMatrix& to);

}  // namespace qg
