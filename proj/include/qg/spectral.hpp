#pragma once

#include <string>
#include <vector>

#include "qg/action.hpp"
#include "qg/graph.hpp"
#include "qg/rep.hpp"

namespace qg {

/// Secular matrix for the ansatz f_e(x) = α_e cos kx + β_e sin kx. Columns
/// (2e, 2e+1) hold (α_e, β_e); rows stack each vertex's condition rows.
CMatrix secular_matrix(const QuantumGraph& g, double k);

/// Same layout for the λ = 0 ansatz f_e(x) = α_e + β_e x.
CMatrix zero_mode_matrix(const QuantumGraph& g);

struct SolverSettings {
  double k_floor = 1e-6;
  double scan_step = 0.0;  // 0 picks π/(4·total length)
  int oversample = 8;      // ratio samples per scan step; narrow dips slip between coarser points
  double accept_tol = 1e-8;
  double refine_tol = 1e-12;
  bool probe = true;       // look for close roots next to every accepted root
  bool parallel = true;
};

struct SpectrumEntry {
  double k;
  int multiplicity;
};

struct NearMiss {
  double k;
  double ratio;
};

struct Spectrum {
  std::vector<SpectrumEntry> entries;
  int zero_mode_multiplicity = 0;
  double k_max = 0.0;
  SolverSettings settings;
  std::vector<NearMiss> near_misses;
  std::vector<std::string> warnings;

  bool has_zero_mode() const { return zero_mode_multiplicity > 0; }
  /// Number of positive eigenvalues counted with multiplicity.
  int count() const;
};

/// Throws Error(Solver) when the secular matrix has fewer rows than columns.
Spectrum find_spectrum(const QuantumGraph& g, double k_max, const SolverSettings& settings = {});

/// Nullity of secular_matrix(k) at relative tolerance tol.
int multiplicity_at(const QuantumGraph& g, double k, double tol = 1e-8);

struct MatchedPair {
  double k_a;
  double k_b;
  int multiplicity_a;
  int multiplicity_b;
  double deviation;
};

struct SpectrumReport {
  std::vector<MatchedPair> matched;
  std::vector<SpectrumEntry> unmatched_a;
  std::vector<SpectrumEntry> unmatched_b;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  double k_max = 0.0;  // common range that was compared
  bool zero_mode_mismatch = false;
  bool pass = false;
};

/// Greedy monotone matching within tol over the common range. Entries within
/// tol of the common bound are not reported as unmatched.
SpectrumReport compare_spectra(const Spectrum& a, const Spectrum& b, double tol);

/// Weighted multiset union; entries closer than tol are merged.
Spectrum spectrum_sum(const std::vector<std::pair<const Spectrum*, int>>& parts, double tol);

/// First n entries, expanded by multiplicity.
std::vector<double> first_eigenvalues(const Spectrum& s, int n);

/// trace of the action of each element (indexed by parent element) on the
/// eigenspace at k. Zero outside the acting subgroup.
std::vector<Complex> eigenspace_character(const QuantumGraph& g, const GraphAction& action,
                                          double k, double tol = 1e-8);

/// ⟨χ_rep, χ_eigenspace⟩ over rep.domain(), rounded.
int rep_multiplicity(const QuantumGraph& g, const GraphAction& action, const Representation& rep,
                     double k, double tol = 1e-8);

}  // namespace qg
