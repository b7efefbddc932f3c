#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qg {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Singular values in decreasing order. Empty matrices give an empty vector.
RVector singular_values(const CMatrix& m);

/// Number of singular values >= rel_tol * sigma_max (0 for a zero matrix).
int numerical_rank(const CMatrix& m, double rel_tol);

/// Orthonormal basis (columns) of the right null space, rank cut at
/// rel_tol * sigma_max. A matrix with zero rows has the full space as kernel.
CMatrix null_space(const CMatrix& m, double rel_tol);

/// Orthonormal basis of the column space spanned by `columns`, chosen greedily
/// by largest residual norm. Exactly `rank` columns are returned.
CMatrix orthonormal_span(const CMatrix& columns, int rank);

/// Reduced row echelon form with partial pivoting. Entries whose magnitude is
/// below rel_tol * sigma_max are treated as zero; zero rows are dropped.
CMatrix reduced_row_echelon(const CMatrix& m, double rel_tol);

/// Kronecker product a ⊗ b.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Horizontal concatenation (a | b). Row counts must agree.
CMatrix hcat(const CMatrix& a, const CMatrix& b);

/// True when the column spaces of a and b coincide at tolerance.
bool same_column_space(const CMatrix& a, const CMatrix& b, double rel_tol);

/// Spectral norm (largest singular value).
double spectral_norm(const CMatrix& m);

}  // namespace qg
