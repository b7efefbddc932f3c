#include "qg/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "qg/error.hpp"

namespace qg {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidElement: return "invalid-element";
    case ErrorKind::InvalidGroup: return "invalid-group";
    case ErrorKind::InvalidSubgroup: return "invalid-subgroup";
    case ErrorKind::InvalidRepresentation: return "invalid-representation";
    case ErrorKind::ShapeMismatch: return "shape-mismatch";
    case ErrorKind::GroupMismatch: return "group-mismatch";
    case ErrorKind::InvalidGraph: return "invalid-graph";
    case ErrorKind::InvalidAction: return "invalid-action";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::Construction: return "construction";
    case ErrorKind::Inconsistency: return "inconsistency";
    case ErrorKind::Solver: return "solver";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

RVector singular_values(const CMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return RVector();
  Eigen::BDCSVD<CMatrix> svd(m);
  return svd.singularValues();
}

double spectral_norm(const CMatrix& m) {
  RVector s = singular_values(m);
  return s.size() == 0 ? 0.0 : s(0);
}

int numerical_rank(const CMatrix& m, double rel_tol) {
  RVector s = singular_values(m);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double cut = rel_tol * s(0);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) >= cut) ++r;
  return r;
}

CMatrix null_space(const CMatrix& m, double rel_tol) {
  const Eigen::Index n = m.cols();
  if (m.rows() == 0) return CMatrix::Identity(n, n);
  if (n == 0) return CMatrix(0, 0);
  Eigen::BDCSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  int r = 0;
  if (s.size() > 0 && s(0) > 0.0) {
    const double cut = rel_tol * s(0);
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) >= cut) ++r;
  }
  return svd.matrixV().rightCols(n - r);
}

CMatrix orthonormal_span(const CMatrix& columns, int rank) {
  CMatrix residual = columns;
  CMatrix out(columns.rows(), rank);
  for (int j = 0; j < rank; ++j) {
    Eigen::Index best = 0;
    double best_norm = -1.0;
    for (Eigen::Index c = 0; c < residual.cols(); ++c) {
      double nrm = residual.col(c).norm();
      if (nrm > best_norm + 1e-14 * std::max(1.0, best_norm)) {
        best_norm = nrm;
        best = c;
      }
    }
    if (best_norm <= 0.0)
      throw Error(ErrorKind::Inconsistency, "orthonormal_span: requested rank exceeds span");
    CVector q = residual.col(best) / best_norm;
    out.col(j) = q;
    // two passes of projection keep the basis orthonormal to working precision
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index c = 0; c < residual.cols(); ++c)
        residual.col(c) -= q * q.dot(residual.col(c));
    for (int k = 0; k < j; ++k) {
      for (Eigen::Index c = 0; c < residual.cols(); ++c)
        residual.col(c) -= out.col(k) * out.col(k).dot(residual.col(c));
    }
  }
  return out;
}

CMatrix reduced_row_echelon(const CMatrix& m, double rel_tol) {
  CMatrix a = m;
  const Eigen::Index rows = a.rows(), cols = a.cols();
  if (rows == 0 || cols == 0) return CMatrix(0, cols);
  const double thresh = rel_tol * spectral_norm(m);
  if (thresh == 0.0) return CMatrix(0, cols);
  Eigen::Index pivot_row = 0;
  for (Eigen::Index c = 0; c < cols && pivot_row < rows; ++c) {
    Eigen::Index best = pivot_row;
    double best_abs = 0.0;
    for (Eigen::Index r = pivot_row; r < rows; ++r) {
      if (std::abs(a(r, c)) > best_abs) {
        best_abs = std::abs(a(r, c));
        best = r;
      }
    }
    if (best_abs < thresh) {
      for (Eigen::Index r = pivot_row; r < rows; ++r) a(r, c) = 0.0;
      continue;
    }
    a.row(pivot_row).swap(a.row(best));
    a.row(pivot_row) /= a(pivot_row, c);
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (r == pivot_row) continue;
      const Complex f = a(r, c);
      if (f != Complex(0.0)) a.row(r) -= f * a.row(pivot_row);
      a(r, c) = 0.0;
    }
    ++pivot_row;
  }
  CMatrix out = a.topRows(pivot_row);
  for (Eigen::Index r = 0; r < out.rows(); ++r)
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (std::abs(out(r, c).real()) < thresh * 1e-3) out(r, c).real(0.0);
      if (std::abs(out(r, c).imag()) < thresh * 1e-3) out(r, c).imag(0.0);
    }
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix hcat(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows())
    throw Error(ErrorKind::ShapeMismatch, "hcat: row counts differ");
  CMatrix out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

bool same_column_space(const CMatrix& a, const CMatrix& b, double rel_tol) {
  if (a.rows() != b.rows()) return false;
  const int ra = a.cols() == 0 ? 0 : numerical_rank(a, rel_tol);
  const int rb = b.cols() == 0 ? 0 : numerical_rank(b, rel_tol);
  if (ra != rb) return false;
  if (ra == 0) return true;
  return numerical_rank(hcat(a, b), rel_tol) == ra;
}

}  // namespace qg
