#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sepcone/states.hpp"

namespace sepcone {

// The smallest face of the PSD cone containing a state: its rank, an
// orthonormal basis of the range, and, when the range is a tensor product of
// the marginal ranges, those marginal bases.
struct FaceInfo {
    Index rank = 0;
    CMatrix range_basis;
    std::optional<std::pair<CMatrix, CMatrix>> product;
};

// rho = (1 - lambda) C + lambda E with unit-trace C and E, E on the face
// boundary (rank(E) < rank(rho)), lambda = 1 / mu_star.
struct ConeDecomposition {
    MixedState C;
    MixedState E;
    double lambda = 0.0;
    double mu_star = 0.0;
};

// Range basis at tolerance plus product-face detection for bipartite states:
// the face is a product exactly when rank(rho) equals the product of the
// marginal ranks (the range is always contained in the product of the
// marginal ranges, so equal dimension forces equality). Throws NotPsdError.
FaceInfo face_of(const MixedState& rho, double tol = kRankTol);

// The maximally mixed product state P1/r1 (x) P2/r2 on a detected product
// face; the default interior point for decompositions. Throws FaceError when
// the face is not a product.
MixedState face_uniform_product(const FaceInfo& face, const DimSpec& dims);

// Extends the ray from C through rho until it leaves the PSD cone of their
// common face: returns the minimal mu > 1 with (1 - mu) C + mu rho on the
// boundary, together with that boundary state (unit trace). Requires
// range(rho) = range(C) at tolerance and rho != C; throws FaceError or
// DegenerateRayError otherwise.
std::pair<double, MixedState> ray_to_boundary(const MixedState& rho, const MixedState& C,
                                              double tol = kRankTol);

// Full decomposition rho = (1 - lambda) C + lambda E along the ray above.
ConeDecomposition decompose(const MixedState& rho, const MixedState& C,
                            double tol = kRankTol);

// Eigen-ensemble of a unit-trace PSD state with zero eigenvalues dropped at
// tolerance; weights renormalized to unit sum, largest first.
std::vector<std::pair<double, PureState>> spectral_ensemble(const MixedState& E,
                                                            double tol = kRankTol);

}  // namespace sepcone
