#include "sepcone/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace sepcone {

namespace {

// Shared scale for relative tolerances; keeps zero matrices from dividing by
// zero without inventing a scale for them.
double norm_scale(const CMatrix& M) { return std::max(M.norm(), 0.0); }

void require_pd_metric(const CMatrix& A, Index n, const char* name) {
    if (A.rows() != n || A.cols() != n)
        throw MetricError(std::string(name) + ": metric has wrong dimensions");
    if (!is_hermitian(A))
        throw MetricError(std::string(name) + ": metric is not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(A, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().cwiseAbs().maxCoeff();
    if (lo <= 1e-12 * hi)
        throw MetricError(std::string(name) + ": metric is not positive definite");
}

}  // namespace

bool is_hermitian(const CMatrix& M, double tol) {
    if (M.rows() != M.cols()) return false;
    return (M - M.adjoint()).norm() <= tol * std::max(norm_scale(M), 1e-300);
}

HermitianEig eig_hermitian(const CMatrix& M) {
    if (M.rows() != M.cols()) throw ShapeError("eig_hermitian: matrix must be square");
    if (!is_hermitian(M)) throw ShapeError("eig_hermitian: matrix must be Hermitian");
    // Symmetrize so roundoff skew in the input cannot leak into the solver.
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (M + M.adjoint()));
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eig_hermitian: eigensolver failed to converge");
    return {es.eigenvalues(), es.eigenvectors()};
}

GsvdResult svd(const CMatrix& M, double tol) {
    Eigen::JacobiSVD<CMatrix> solver(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RVector& sv = solver.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    Index r = 0;
    while (r < sv.size() && sv(r) > tol * smax) ++r;
    GsvdResult out;
    out.left = solver.matrixU().leftCols(r);
    out.sigmas = sv.head(r);
    out.right = solver.matrixV().leftCols(r);
    out.rank = r;
    return out;
}

GsvdResult gsvd(const CMatrix& M, const CMatrix& A, const CMatrix& B, double tol) {
    require_pd_metric(A, M.rows(), "gsvd");
    require_pd_metric(B, M.cols(), "gsvd");
    const CMatrix a_half = hermitian_sqrt(A);
    const CMatrix b_half = hermitian_sqrt(B);
    GsvdResult inner = svd(a_half * M * b_half, tol);
    inner.left = hermitian_inv_sqrt(A) * inner.left;
    inner.right = hermitian_inv_sqrt(B) * inner.right;
    return inner;
}

CMatrix psd_factor(const CMatrix& M, double tol) {
    if (M.rows() != M.cols() || !is_hermitian(M))
        throw NotPsdError("psd_factor: matrix must be Hermitian");
    const HermitianEig eig = eig_hermitian(M);
    const Index n = eig.eigenvalues.size();
    const double scale = eig.eigenvalues.cwiseAbs().maxCoeff();
    if (eig.eigenvalues(0) < -tol * scale)
        throw NotPsdError("psd_factor: matrix is indefinite beyond tolerance");
    const double cutoff = tol * std::max(eig.eigenvalues(n - 1), 0.0);
    Index r = 0;
    for (Index i = 0; i < n; ++i)
        if (eig.eigenvalues(i) > cutoff) ++r;
    CMatrix F(n, r);
    // Columns ordered by decreasing eigenvalue for deterministic downstream use.
    for (Index k = 0; k < r; ++k) {
        const Index i = n - 1 - k;
        F.col(k) = eig.eigenvectors.col(i) * std::sqrt(eig.eigenvalues(i));
    }
    return F;
}

CMatrix orthogonal_complementation(const CMatrix& F, double tol) {
    const Index n = F.rows();
    const Index r = F.cols();
    if (r == 0 || r > n)
        throw ShapeError("orthogonal_complementation: need 1 <= cols <= rows");
    if (rank_tol(F, tol) != r)
        throw ShapeError("orthogonal_complementation: input is rank deficient");
    if (r == n) return F;
    // Householder Q of F: its first r columns span range(F), so the trailing
    // columns are an orthonormal basis of the complement.
    Eigen::HouseholderQR<CMatrix> qr(F);
    const CMatrix Q = qr.householderQ();
    CMatrix out(n, n);
    out.leftCols(r) = F;
    out.rightCols(n - r) = Q.rightCols(n - r);
    return out;
}

Index rank_tol(const CMatrix& M, double tol) {
    Eigen::JacobiSVD<CMatrix> solver(M);
    const RVector& sv = solver.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    Index r = 0;
    while (r < sv.size() && sv(r) > tol * smax) ++r;
    return r;
}

CMatrix hermitian_sqrt(const CMatrix& A) {
    const HermitianEig eig = eig_hermitian(A);
    const RVector roots = eig.eigenvalues.cwiseMax(0.0).cwiseSqrt();
    return eig.eigenvectors * roots.asDiagonal() * eig.eigenvectors.adjoint();
}

CMatrix hermitian_inv_sqrt(const CMatrix& A) {
    const HermitianEig eig = eig_hermitian(A);
    if (eig.eigenvalues(0) <= 0.0)
        throw MetricError("hermitian_inv_sqrt: matrix is not positive definite");
    const RVector roots = eig.eigenvalues.cwiseSqrt().cwiseInverse();
    return eig.eigenvectors * roots.asDiagonal() * eig.eigenvectors.adjoint();
}

CMatrix kron(const CMatrix& A, const CMatrix& B) {
    CMatrix out(A.rows() * B.rows(), A.cols() * B.cols());
    for (Index i = 0; i < A.rows(); ++i)
        for (Index j = 0; j < A.cols(); ++j)
            out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return out;
}

CVector kron(const CVector& a, const CVector& b) {
    CVector out(a.size() * b.size());
    for (Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

}  // namespace sepcone
