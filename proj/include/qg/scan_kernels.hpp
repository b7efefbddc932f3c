#pragma once

#include <vector>

#include "qg/graph.hpp"

namespace qg::kernels {

/// σ_min/σ_max of the secular matrix at each k. The serial loop is the
/// reference; the OpenMP loop must return bit-identical values.
std::vector<double> scan_ratio_serial(const QuantumGraph& g, const std::vector<double>& ks);
std::vector<double> scan_ratio_omp(const QuantumGraph& g, const std::vector<double>& ks);

/// Σ log s_j over all singular values of the secular matrix at each k.
std::vector<double> scan_logdet_serial(const QuantumGraph& g, const std::vector<double>& ks);
std::vector<double> scan_logdet_omp(const QuantumGraph& g, const std::vector<double>& ks);

}  // namespace qg::kernels
