// Serial vs OpenMP secular scans on the square-d4 graph.
#include <benchmark/benchmark.h>

#include <numbers>

#include "qg/builtin.hpp"
#include "qg/scan_kernels.hpp"

namespace {

std::vector<double> grid(const qg::QuantumGraph& g, double k_max) {
  const double h = std::numbers::pi / (4.0 * g.total_length());
  std::vector<double> ks;
  for (double k = 1e-6; k <= k_max; k += h) ks.push_back(k);
  return ks;
}

const qg::QuantumGraph& graph() {
  static const qg::QuantumGraph g = qg::builtin::square_d4().action.graph();
  return g;
}

void BM_ScanSerial(benchmark::State& state) {
  const auto ks = grid(graph(), static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qg::kernels::scan_ratio_serial(graph(), ks));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(ks.size()));
}

void BM_ScanOmp(benchmark::State& state) {
  const auto ks = grid(graph(), static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qg::kernels::scan_ratio_omp(graph(), ks));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(ks.size()));
}

}  // namespace

BENCHMARK(BM_ScanSerial)->Arg(4)->Arg(12);
BENCHMARK(BM_ScanOmp)->Arg(4)->Arg(12);
BENCHMARK_MAIN();
