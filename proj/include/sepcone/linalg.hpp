#pragma once

#include <complex>

#include <Eigen/Dense>

#include "sepcone/error.hpp"

namespace sepcone {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Relative rank cutoff: singular values below tol * sigma_max count as zero.
inline constexpr double kRankTol = 1e-10;
// Eigenvalues of a nominally PSD matrix may dip this far (relative) below zero.
inline constexpr double kPsdTol = 1e-10;
// Hermitian deviation allowed on inputs, relative to the matrix norm.
inline constexpr double kHermTol = 1e-10;

// Eigenvalues in nondecreasing order, eigenvector columns unitary.
struct HermitianEig {
    RVector eigenvalues;
    CMatrix eigenvectors;
};

// Factorization M = left * diag(sigmas) * right^H with sigmas positive and
// nonincreasing, truncated at the rank cutoff. left is A-unitary and right is
// B-unitary with respect to the metrics the factorization was taken against
// (plain unitary for identity metrics). rank is the number of kept sigmas.
struct GsvdResult {
    CMatrix left;
    RVector sigmas;
    CMatrix right;
    Index rank = 0;
};

bool is_hermitian(const CMatrix& M, double tol = kHermTol);

// Spectral decomposition of a Hermitian matrix. Throws ShapeError on
// non-square or non-Hermitian input.
HermitianEig eig_hermitian(const CMatrix& M);

// Plain SVD, thin factors, sigmas truncated at tol * sigma_max.
GsvdResult svd(const CMatrix& M, double tol = kRankTol);

// SVD with respect to Hermitian positive definite metrics A (rows side) and
// B (cols side): computed as the plain SVD of A^{1/2} M B^{1/2} with the
// factors mapped back through A^{-1/2}, B^{-1/2}. left^H A left = I and
// right^H B right = I on the kept columns. Throws MetricError when a metric
// is not Hermitian positive definite.
GsvdResult gsvd(const CMatrix& M, const CMatrix& A, const CMatrix& B,
                double tol = kRankTol);

// Thin factor F (N x r) with F F^H = M for PSD M; r = rank at tol.
// Eigenvalues below tol * lambda_max are clamped to zero; anything below the
// negative band throws NotPsdError.
CMatrix psd_factor(const CMatrix& M, double tol = kRankTol);

// Extends a full-column-rank N x r matrix F to an invertible N x N matrix
// whose first r columns are F and whose last N - r columns are an orthonormal
// basis of the orthogonal complement of range(F). Returns F itself when
// r = N. Throws ShapeError on rank-deficient input.
CMatrix orthogonal_complementation(const CMatrix& F, double tol = kRankTol);

// Number of singular values above tol * sigma_max; zero matrix has rank 0.
Index rank_tol(const CMatrix& M, double tol = kRankTol);

// Hermitian principal square root / inverse square root. Input must be PSD
// (strictly PD for the inverse).
CMatrix hermitian_sqrt(const CMatrix& A);
CMatrix hermitian_inv_sqrt(const CMatrix& A);

// Kronecker products with the first factor on the slow (leftmost) index.
CMatrix kron(const CMatrix& A, const CMatrix& B);
CVector kron(const CVector& a, const CVector& b);

}  // namespace sepcone
