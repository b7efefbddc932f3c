#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "qg/graph.hpp"
#include "qg/linalg.hpp"

namespace testing {

using qg::CMatrix;
using qg::Complex;

// Scale each row so its first entry of (near) maximal modulus is 1.
inline CMatrix normalize_rows(const CMatrix& m) {
  CMatrix out = m;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const double top = m.row(r).cwiseAbs().maxCoeff();
    if (top == 0.0) continue;
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      if (std::abs(m(r, c)) >= top * (1 - 1e-9)) {
        out.row(r) /= m(r, c);
        break;
      }
  }
  return out;
}

// Largest entry deviation after matching rows up to scaling and order;
// infinity when the row counts differ.
inline double rows_deviation(const CMatrix& got, const CMatrix& want) {
  if (got.rows() != want.rows() || got.cols() != want.cols())
    return std::numeric_limits<double>::infinity();
  const CMatrix g = normalize_rows(got), w = normalize_rows(want);
  std::vector<char> used(g.rows(), 0);
  double worst = 0.0;
  for (Eigen::Index r = 0; r < w.rows(); ++r) {
    double best = std::numeric_limits<double>::infinity();
    Eigen::Index pick = -1;
    for (Eigen::Index s = 0; s < g.rows(); ++s) {
      if (used[s]) continue;
      const double dev = (g.row(s) - w.row(r)).cwiseAbs().maxCoeff();
      if (dev < best) best = dev, pick = s;
    }
    if (pick < 0) return std::numeric_limits<double>::infinity();
    used[pick] = 1;
    worst = std::max(worst, best);
  }
  return worst;
}

inline CMatrix rows(std::initializer_list<std::initializer_list<Complex>> r) {
  CMatrix m(r.size(), r.begin()->size());
  int i = 0;
  for (const auto& row : r) {
    int j = 0;
    for (const auto& x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

enum class End { Dirichlet, Neumann };

// Single edge 0 -> 1 of length l.
inline qg::QuantumGraph interval(End left, End right, double l = 1.0) {
  std::vector<qg::VertexId> dirichlet;
  if (left == End::Dirichlet) dirichlet.push_back(0);
  if (right == End::Dirichlet) dirichlet.push_back(1);
  return qg::make_standard_graph(2, {{0, 0, 1, l}}, dirichlet);
}

}  // namespace testing
