#include "qg/scan_kernels.hpp"

#include <cmath>
#include <limits>

#include "qg/spectral.hpp"

namespace qg::kernels {

namespace {

double ratio_at(const QuantumGraph& g, double k) {
  const CMatrix s = secular_matrix(g, k);
  if (s.cols() == 0) return 1.0;
  const RVector sv = singular_values(s);
  if (sv.size() < s.cols()) return 0.0;  // under-determined
  if (sv(0) == 0.0) return 0.0;
  return sv(sv.size() - 1) / sv(0);
}

double logdet_at(const QuantumGraph& g, double k) {
  const RVector sv = singular_values(secular_matrix(g, k));
  double sum = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    sum += std::log(std::max(sv(i), std::numeric_limits<double>::min()));
  return sum;
}

}  // namespace

std::vector<double> scan_ratio_serial(const QuantumGraph& g, const std::vector<double>& ks) {
  std::vector<double> out(ks.size());
  for (size_t i = 0; i < ks.size(); ++i) out[i] = ratio_at(g, ks[i]);
  return out;
}

std::vector<double> scan_ratio_omp(const QuantumGraph& g, const std::vector<double>& ks) {
  std::vector<double> out(ks.size());
  const long n = static_cast<long>(ks.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[i] = ratio_at(g, ks[i]);
  return out;
}

std::vector<double> scan_logdet_serial(const QuantumGraph& g, const std::vector<double>& ks) {
  std::vector<double> out(ks.size());
  for (size_t i = 0; i < ks.size(); ++i) out[i] = logdet_at(g, ks[i]);
  return out;
}

std::vector<double> scan_logdet_omp(const QuantumGraph& g, const std::vector<double>& ks) {
  std::vector<double> out(ks.size());
  const long n = static_cast<long>(ks.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[i] = logdet_at(g, ks[i]);
  return out;
}

}  // namespace qg::kernels
