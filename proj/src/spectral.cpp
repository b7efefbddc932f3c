#include "qg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "qg/error.hpp"
#include "qg/scan_kernels.hpp"

namespace qg {

namespace {

int condition_rows(const QuantumGraph& g) {
  int rows = 0;
  for (const auto& v : g.vertices()) rows += static_cast<int>(v.condition.a.rows());
  return rows;
}

// Fills one row block per vertex given per-endpoint value/derivative
// coefficient pairs for (α, β).
template <class Ends>
CMatrix assemble(const QuantumGraph& g, Ends ends) {
  CMatrix s = CMatrix::Zero(condition_rows(g), 2 * g.edge_count());
  int row = 0;
  for (const auto& v : g.vertices()) {
    const CMatrix& a = v.condition.a;
    const CMatrix& b = v.condition.b;
    for (size_t j = 0; j < v.edge_order.size(); ++j) {
      const EdgeId e = v.edge_order[j];
      double val[2], der[2];
      ends(g.edge(e), g.edge(e).source == v.id, val, der);
      for (Eigen::Index r = 0; r < a.rows(); ++r) {
        s(row + r, 2 * e) += a(r, j) * val[0] + b(r, j) * der[0];
        s(row + r, 2 * e + 1) += a(r, j) * val[1] + b(r, j) * der[1];
      }
    }
    row += static_cast<int>(a.rows());
  }
  return s;
}

double golden_min(const std::function<double(double)>& f, double a, double b, double tol) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? c : d;
}

double ratio(const QuantumGraph& g, double k) {
  return kernels::scan_ratio_serial(g, {k})[0];
}

int nullity(const CMatrix& m, double tol) {
  if (m.cols() == 0) return 0;
  const RVector s = singular_values(m);
  if (s.size() == 0 || s(0) == 0.0) return static_cast<int>(m.cols());
  int small = static_cast<int>(m.cols() - s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) < tol * s(0)) ++small;
  return small;
}

struct Root {
  double k;
  double ratio;
};

bool known(const std::vector<Root>& roots, double k) {
  for (const auto& r : roots)
    if (std::abs(r.k - k) <= 1e-9 * std::max(1.0, k)) return true;
  return false;
}

}  // namespace

int Spectrum::count() const {
  int n = 0;
  for (const auto& e : entries) n += e.multiplicity;
  return n;
}

CMatrix secular_matrix(const QuantumGraph& g, double k) {
  if (!(k > 0.0)) throw Error(ErrorKind::InvalidArgument, "secular_matrix needs k > 0");
  return assemble(g, [k](const EdgeRecord& e, bool at_source, double* val, double* der) {
    if (at_source) {
      val[0] = 1.0, val[1] = 0.0;
      der[0] = 0.0, der[1] = k;
    } else {
      const double c = std::cos(k * e.length), s = std::sin(k * e.length);
      val[0] = c, val[1] = s;
      der[0] = k * s, der[1] = -k * c;
    }
  });
}

CMatrix zero_mode_matrix(const QuantumGraph& g) {
  return assemble(g, [](const EdgeRecord& e, bool at_source, double* val, double* der) {
    if (at_source) {
      val[0] = 1.0, val[1] = 0.0;
      der[0] = 0.0, der[1] = 1.0;
    } else {
      val[0] = 1.0, val[1] = e.length;
      der[0] = 0.0, der[1] = -1.0;
    }
  });
}

int multiplicity_at(const QuantumGraph& g, double k, double tol) {
  return nullity(secular_matrix(g, k), tol);
}

Spectrum find_spectrum(const QuantumGraph& g, double k_max, const SolverSettings& settings) {
  if (!(k_max > 0.0)) throw Error(ErrorKind::InvalidArgument, "k_max must be positive");
  Spectrum out;
  out.k_max = k_max;
  out.settings = settings;
  if (g.edge_count() == 0) return out;
  if (condition_rows(g) < 2 * g.edge_count())
    throw Error(ErrorKind::Solver, "under-determined vertex conditions: fewer rows than unknowns");

  const double h = settings.scan_step > 0.0
                       ? settings.scan_step
                       : std::numbers::pi / (4.0 * g.total_length());
  out.settings.scan_step = h;
  const double lo = settings.k_floor;
  if (settings.oversample < 1) throw Error(ErrorKind::InvalidArgument, "oversample must be at least 1");
  const double fine = h / settings.oversample;
  std::vector<double> ks;
  for (long i = 0;; ++i) {
    const double k = lo + static_cast<double>(i) * fine;
    ks.push_back(k);
    if (k > k_max + h) break;
  }
  const auto scan = settings.parallel ? kernels::scan_ratio_omp : kernels::scan_ratio_serial;
  const auto logdet = settings.parallel ? kernels::scan_logdet_omp : kernels::scan_logdet_serial;
  const std::vector<double> r = scan(g, ks);

  long tiny = 0;
  for (double x : r)
    if (x < settings.accept_tol) ++tiny;
  if (tiny * 2 > static_cast<long>(r.size()))
    throw Error(ErrorKind::Solver, "secular matrix is singular for almost every k");

  std::vector<std::pair<double, double>> brackets;
  for (size_t i = 0; i + 1 < r.size(); ++i) {
    const bool left = i == 0 || r[i] <= r[i - 1];
    if (left && r[i] <= r[i + 1])
      brackets.push_back({i == 0 ? ks[0] : ks[i - 1], ks[i + 1]});
  }

  std::vector<Root> found(brackets.size());
  const long nb = static_cast<long>(brackets.size());
#pragma omp parallel for schedule(dynamic) if (settings.parallel)
  for (long i = 0; i < nb; ++i) {
    const double k = golden_min([&](double x) { return ratio(g, x); }, brackets[i].first,
                                brackets[i].second, settings.refine_tol);
    found[i] = {k, ratio(g, k)};
  }

  std::vector<Root> roots;
  for (const auto& f : found) {
    // ratio ~ k near 0 whenever derivative rows matter; a minimum pinned to
    // the floor is that, not an eigenvalue
    if (f.k - lo < 1e3 * settings.refine_tol) continue;
    if (f.ratio < settings.accept_tol) {
      if (!known(roots, f.k)) roots.push_back(f);
    } else if (f.ratio < 1e-4 && f.k <= k_max) {
      out.near_misses.push_back({f.k, f.ratio});
    }
  }

  std::vector<int> mult;
  auto multiplicities = [&] {
    mult.clear();
    for (const auto& rt : roots) mult.push_back(multiplicity_at(g, rt.k, settings.accept_tol));
  };
  multiplicities();

  // Close roots hide inside one grid cell. Divide the singular value product
  // by the known zeros and look for what is left near each root.
  for (int pass = 0; settings.probe && pass < 3; ++pass) {
    const std::vector<Root> base = roots;
    const std::vector<int> base_mult = mult;
    auto deflated = [&](double k, double logd) {
      for (size_t j = 0; j < base.size(); ++j)
        logd -= base_mult[j] * std::log(std::max(std::abs(k - base[j].k), 1e-300));
      return logd;
    };
    const int sub = 16;
    std::vector<double> pts;
    for (const auto& rt : base)
      for (int i = 0; i < 4 * sub; ++i) {
        const double k = rt.k - 2.0 * h + (i + 0.5) * h / sub;
        if (k > lo && k <= k_max + h) pts.push_back(k);
      }
    const std::vector<double> ld = logdet(g, pts);
    std::vector<std::pair<double, double>> cand;
    for (size_t i = 1; i + 1 < pts.size(); ++i) {
      if (pts[i - 1] > pts[i] || pts[i + 1] < pts[i]) continue;  // window seams
      const double f0 = deflated(pts[i - 1], ld[i - 1]);
      const double f1 = deflated(pts[i], ld[i]);
      const double f2 = deflated(pts[i + 1], ld[i + 1]);
      if (f1 <= f0 && f1 <= f2) cand.push_back({pts[i - 1], pts[i + 1]});
    }
    bool added = false;
    for (const auto& [a, b] : cand) {
      const double k = golden_min(
          [&](double x) { return deflated(x, kernels::scan_logdet_serial(g, {x})[0]); }, a, b,
          settings.refine_tol);
      const double rk = ratio(g, k);
      if (rk < settings.accept_tol && !known(roots, k)) {
        roots.push_back({k, rk});
        added = true;
      }
    }
    if (!added) break;
    std::sort(roots.begin(), roots.end(), [](const Root& x, const Root& y) { return x.k < y.k; });
    multiplicities();
  }

  std::vector<std::pair<Root, int>> accepted;
  for (size_t i = 0; i < roots.size(); ++i)
    if (roots[i].k <= k_max) accepted.push_back({roots[i], std::max(1, mult[i])});
  std::sort(accepted.begin(), accepted.end(),
            [](const auto& x, const auto& y) { return x.first.k < y.first.k; });
  for (const auto& [rt, m] : accepted) out.entries.push_back({rt.k, m});

  out.zero_mode_multiplicity = nullity(zero_mode_matrix(g), settings.accept_tol);

  // Weyl counting check, meaningful for self-adjoint conditions only.
  if (is_self_adjoint(g)) {
    const double bound = g.vertex_count() + 2.0;
    const double slope = g.total_length() / std::numbers::pi;
    int n = out.zero_mode_multiplicity;
    double worst = 0.0, where = 0.0;
    auto check = [&](double k, int count) {
      const double dev = std::abs(count - slope * k);
      if (dev > worst) worst = dev, where = k;
    };
    for (const auto& e : out.entries) {
      check(e.k, n);
      n += e.multiplicity;
      check(e.k, n);
    }
    check(k_max, n);
    if (worst > bound)
      out.warnings.push_back("Weyl count deviates by " + std::to_string(worst) + " near k = " +
                             std::to_string(where) + "; consider a finer scan step");
  }
  return out;
}

SpectrumReport compare_spectra(const Spectrum& a, const Spectrum& b, double tol) {
  SpectrumReport rep;
  rep.tolerance = tol;
  rep.k_max = std::min(a.k_max, b.k_max);
  rep.zero_mode_mismatch = a.zero_mode_multiplicity != b.zero_mode_multiplicity;
  auto in_range = [&](const SpectrumEntry& e) { return e.k <= rep.k_max + tol; };
  auto edge_case = [&](const SpectrumEntry& e) { return e.k > rep.k_max - tol; };
  size_t i = 0, j = 0;
  const auto& ea = a.entries;
  const auto& eb = b.entries;
  bool mult_ok = true;
  while (i < ea.size() && in_range(ea[i]) && j < eb.size() && in_range(eb[j])) {
    const double dev = std::abs(ea[i].k - eb[j].k);
    if (dev <= tol) {
      rep.matched.push_back({ea[i].k, eb[j].k, ea[i].multiplicity, eb[j].multiplicity, dev});
      rep.max_deviation = std::max(rep.max_deviation, dev);
      if (ea[i].multiplicity != eb[j].multiplicity) mult_ok = false;
      ++i, ++j;
    } else if (ea[i].k < eb[j].k) {
      rep.unmatched_a.push_back(ea[i++]);
    } else {
      rep.unmatched_b.push_back(eb[j++]);
    }
  }
  for (; i < ea.size() && in_range(ea[i]); ++i) rep.unmatched_a.push_back(ea[i]);
  for (; j < eb.size() && in_range(eb[j]); ++j) rep.unmatched_b.push_back(eb[j]);
  auto drop_edge = [&](std::vector<SpectrumEntry>& v) {
    v.erase(std::remove_if(v.begin(), v.end(), edge_case), v.end());
  };
  drop_edge(rep.unmatched_a);
  drop_edge(rep.unmatched_b);
  rep.pass = mult_ok && rep.unmatched_a.empty() && rep.unmatched_b.empty() &&
             rep.max_deviation <= tol;
  return rep;
}

Spectrum spectrum_sum(const std::vector<std::pair<const Spectrum*, int>>& parts, double tol) {
  Spectrum out;
  if (parts.empty()) return out;
  out.k_max = parts.front().first->k_max;
  out.settings = parts.front().first->settings;
  std::vector<SpectrumEntry> all;
  for (const auto& [s, w] : parts) {
    out.k_max = std::min(out.k_max, s->k_max);
    out.zero_mode_multiplicity += w * s->zero_mode_multiplicity;
    for (const auto& e : s->entries) all.push_back({e.k, w * e.multiplicity});
  }
  std::sort(all.begin(), all.end(),
            [](const SpectrumEntry& x, const SpectrumEntry& y) { return x.k < y.k; });
  for (const auto& e : all) {
    if (e.multiplicity == 0 || e.k > out.k_max) continue;
    if (!out.entries.empty() && e.k - out.entries.back().k <= tol)
      out.entries.back().multiplicity += e.multiplicity;
    else
      out.entries.push_back(e);
  }
  return out;
}

std::vector<double> first_eigenvalues(const Spectrum& s, int n) {
  std::vector<double> out;
  for (const auto& e : s.entries)
    for (int m = 0; m < e.multiplicity && static_cast<int>(out.size()) < n; ++m)
      out.push_back(e.k);
  return out;
}

std::vector<Complex> eigenspace_character(const QuantumGraph& g, const GraphAction& action,
                                          double k, double tol) {
  const CMatrix n = null_space(secular_matrix(g, k), tol);
  const int dim = 2 * g.edge_count();
  std::vector<Complex> chi(action.group()->order(), Complex(0.0));
  if (n.cols() == 0) return chi;
  const CMatrix proj = CMatrix::Identity(dim, dim) - n * n.adjoint();
  for (Element x : action.acting().elements()) {
    CMatrix t = CMatrix::Zero(dim, dim);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const EdgeId img = action.edge_image(x, e);
      if (!action.flips(x, e)) {
        t(2 * img, 2 * e) = 1.0;
        t(2 * img + 1, 2 * e + 1) = 1.0;
      } else {
        const double l = g.edge(e).length;
        const double c = std::cos(k * l), s = std::sin(k * l);
        t(2 * img, 2 * e) = c;
        t(2 * img, 2 * e + 1) = s;
        t(2 * img + 1, 2 * e) = s;
        t(2 * img + 1, 2 * e + 1) = -c;
      }
    }
    const CMatrix tn = t * n;
    const double leak = (proj * tn).norm();
    if (leak > tol * std::max(1.0, tn.norm()))
      throw Error(ErrorKind::Inconsistency,
                  "eigenspace is not invariant under element " + std::to_string(x) +
                      " (leak " + std::to_string(leak) + ")");
    chi[x] = (n.adjoint() * tn).trace();
  }
  return chi;
}

int rep_multiplicity(const QuantumGraph& g, const GraphAction& action, const Representation& rep,
                     double k, double tol) {
  if (!rep.domain().is_subset_of(action.acting()))
    throw Error(ErrorKind::InvalidSubgroup, "representation lives outside the acting group");
  const std::vector<Complex> chi = eigenspace_character(g, action, k, tol);
  const Character cr = character(rep);
  Complex sum(0.0);
  for (Element x : rep.domain().elements()) sum += std::conj(cr(x)) * chi[x];
  sum /= static_cast<double>(rep.domain().order());
  const double r = std::round(sum.real());
  // the null space is only as good as k, so integrality is checked loosely
  if (std::abs(sum - Complex(r, 0.0)) > std::sqrt(tol))
    throw Error(ErrorKind::Inconsistency, "non-integral representation multiplicity");
  return static_cast<int>(r);
}

}  // namespace qg
