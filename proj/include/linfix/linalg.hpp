#pragma once

#include <vector>

#include "linfix/matrix.hpp"

namespace linfix {

/// Default tolerances. All of them are relative where a natural scale
/// exists; every routine takes them as overridable arguments.
namespace defaults {
inline constexpr double tol_eig = 1e-9;        // eigenvalue accuracy target
inline constexpr double tol_sym = 1e-12;       // symmetry check
inline constexpr double tol_pd = 1e-10;        // positive definiteness
inline constexpr double tol_solve = 1e-10;     // linear solve residual
inline constexpr double cluster_tol = 1e-7;    // eigenvalue clustering
inline constexpr double boundary_tol = 1e-8;   // disk boundary band
inline constexpr double tol_psd = 1e-9;        // LMI feasibility slack
inline constexpr double conv_tol = 1e-8;       // iteration convergence
inline constexpr double rank_tol = 1e-10;      // numerical rank
}  // namespace defaults

/// Eigenvalues of a general real square matrix, with repetition, complex
/// conjugate pairs adjacent. Householder reduction to Hessenberg form
/// followed by the shifted double-step QR iteration.
std::vector<Complex> eigenvalues(const Matrix& a);

/// Eigenvalues of a symmetric matrix (ascending) by the cyclic Jacobi
/// method. The input is symmetrized as (S + S^T)/2 before iterating.
std::vector<double> symmetric_eigenvalues(const Matrix& s);

/// Thin singular value decomposition a = u * diag(sigma) * v^T of a square
/// matrix by the one-sided Jacobi method. Columns of u matching zero
/// singular values are left zero.
struct Svd {
    Matrix u;
    Vector sigma;  // descending
    Matrix v;
};
Svd svd(const Matrix& a);

/// Numerical rank: singular values above tol * sigma_max.
std::size_t rank(const Matrix& a, double tol = defaults::rank_tol);

/// Orthonormal basis (columns) of the numerical null space / range.
Matrix nullspace(const Matrix& a, double tol = defaults::rank_tol);
Matrix range_basis(const Matrix& a, double tol = defaults::rank_tol);

/// 2-norm condition number (sigma_max / sigma_min; inf when singular).
double cond2(const Matrix& a);

/// Largest singular value (the Euclidean operator norm).
double operator_norm2(const Matrix& a);

/// Solves a x = b by LU with partial pivoting. Throws RankDeficiencyError
/// (carrying the numerical rank) when a is singular to working precision.
Vector solve_linear(const Matrix& a, const Vector& b);
Matrix solve_linear(const Matrix& a, const Matrix& b);
Matrix inverse(const Matrix& a);
double determinant(const Matrix& a);

/// True iff p is symmetric within tol_sym (relative to max |p|) and its
/// smallest eigenvalue exceeds tol_pd relative to the largest magnitude.
bool is_positive_definite(const Matrix& p,
                          double tol_sym = defaults::tol_sym,
                          double tol_pd = defaults::tol_pd);

}  // namespace linfix
