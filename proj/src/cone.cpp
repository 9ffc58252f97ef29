#include "sepcone/cone.hpp"

#include <cmath>

namespace sepcone {

namespace {

// Orthonormal basis of the range of a PSD matrix, columns ordered by
// decreasing eigenvalue.
CMatrix range_basis_of(const CMatrix& M, double tol, const char* who) {
    const HermitianEig eig = eig_hermitian(M);
    const Index n = eig.eigenvalues.size();
    const double scale = eig.eigenvalues.cwiseAbs().maxCoeff();
    if (eig.eigenvalues(0) < -kPsdTol * scale)
        throw NotPsdError(std::string(who) + ": state is not positive semidefinite");
    const double cutoff = tol * std::max(eig.eigenvalues(n - 1), 0.0);
    Index r = 0;
    for (Index i = 0; i < n; ++i)
        if (eig.eigenvalues(i) > cutoff) ++r;
    CMatrix basis(n, r);
    for (Index k = 0; k < r; ++k) basis.col(k) = eig.eigenvectors.col(n - 1 - k);
    return basis;
}

}  // namespace

FaceInfo face_of(const MixedState& rho, double tol) {
    FaceInfo info;
    info.range_basis = range_basis_of(rho.matrix, tol, "face_of");
    info.rank = info.range_basis.cols();
    if (rho.dims.n() == 2) {
        const CMatrix m1 = partial_trace(rho, 2);
        const CMatrix m2 = partial_trace(rho, 1);
        const CMatrix b1 = range_basis_of(m1, tol, "face_of");
        const CMatrix b2 = range_basis_of(m2, tol, "face_of");
        if (b1.cols() * b2.cols() == info.rank) info.product = std::make_pair(b1, b2);
    }
    return info;
}

MixedState face_uniform_product(const FaceInfo& face, const DimSpec& dims) {
    if (!face.product) throw FaceError("face_uniform_product: face is not a product");
    const CMatrix& b1 = face.product->first;
    const CMatrix& b2 = face.product->second;
    const double r1 = static_cast<double>(b1.cols());
    const double r2 = static_cast<double>(b2.cols());
    CMatrix c = kron(CMatrix(b1 * b1.adjoint() / r1), CMatrix(b2 * b2.adjoint() / r2));
    return make_mixed(dims, std::move(c));
}

std::pair<double, MixedState> ray_to_boundary(const MixedState& rho, const MixedState& C,
                                              double tol) {
    if (rho.dims.dims != C.dims.dims)
        throw ShapeError("ray_to_boundary: states live on different layouts");
    const CMatrix basis = range_basis_of(C.matrix, tol, "ray_to_boundary");
    const Index r = basis.cols();

    // Same-face test: both states must project onto the other's range with
    // negligible loss. Rank equality plus one-sided containment suffices.
    if (rank_tol(rho.matrix, tol) != r)
        throw FaceError("ray_to_boundary: states have different ranks");
    const CMatrix proj = basis * basis.adjoint();
    if ((rho.matrix - proj * rho.matrix * proj).norm() > 1e-8 * std::max(rho.matrix.norm(), 1e-300))
        throw FaceError("ray_to_boundary: states do not share a common range");

    if ((rho.matrix - C.matrix).norm() < 1e-12)
        throw DegenerateRayError("ray_to_boundary: states coincide, the ray is undefined");

    // Restricted to the common range, C is positive definite; the congruence
    // by its Cholesky factor turns the boundary condition into an eigenvalue
    // bound: (1 - mu) C + mu rho >= 0 iff 1 - mu (1 - lambda_min) >= 0.
    const CMatrix rho_r = basis.adjoint() * rho.matrix * basis;
    const CMatrix c_r = basis.adjoint() * C.matrix * basis;
    Eigen::LLT<CMatrix> llt(0.5 * (c_r + c_r.adjoint()));
    if (llt.info() != Eigen::Success)
        throw FaceError("ray_to_boundary: interior state is singular on its own range");
    const CMatrix L = llt.matrixL();
    CMatrix A = L.triangularView<Eigen::Lower>().solve(rho_r);
    A = L.triangularView<Eigen::Lower>().solve(A.adjoint()).adjoint();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (A + A.adjoint()), Eigen::EigenvaluesOnly);
    const double lam_min = es.eigenvalues().minCoeff();
    if (lam_min >= 1.0 - 1e-12)
        throw DegenerateRayError("ray_to_boundary: states coincide on the common range");

    const double mu_star = 1.0 / (1.0 - lam_min);
    CMatrix e = (1.0 - mu_star) * C.matrix + mu_star * rho.matrix;
    e = 0.5 * (e + e.adjoint());
    e /= e.trace().real();
    return {mu_star, MixedState{rho.dims, std::move(e)}};
}

ConeDecomposition decompose(const MixedState& rho, const MixedState& C, double tol) {
    auto [mu_star, e] = ray_to_boundary(rho, C, tol);
    return ConeDecomposition{C, std::move(e), 1.0 / mu_star, mu_star};
}

std::vector<std::pair<double, PureState>> spectral_ensemble(const MixedState& E, double tol) {
    const HermitianEig eig = eig_hermitian(E.matrix);
    const Index n = eig.eigenvalues.size();
    const double cutoff = tol * std::max(eig.eigenvalues(n - 1), 0.0);
    std::vector<std::pair<double, PureState>> terms;
    double total = 0.0;
    for (Index k = n - 1; k >= 0; --k) {
        const double w = eig.eigenvalues(k);
        if (w <= cutoff) break;
        CVector v = eig.eigenvectors.col(k);
        terms.emplace_back(w, make_pure(E.dims, std::move(v)));
        total += w;
    }
    for (auto& [w, v] : terms) w /= total;
    return terms;
}

}  // namespace sepcone
