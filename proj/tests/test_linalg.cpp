#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "sepcone/error.hpp"
#include "sepcone/linalg.hpp"
#include "sepcone/random.hpp"

using namespace sepcone;

namespace {

CMatrix random_hermitian(Rng& rng, Index n) {
    const CMatrix g = rng.ginibre(n, n);
    return 0.5 * (g + g.adjoint());
}

}  // namespace

TEST_CASE("eig_hermitian on the identity") {
    const HermitianEig eig = eig_hermitian(CMatrix::Identity(4, 4));
    for (Index i = 0; i < 4; ++i) CHECK(eig.eigenvalues(i) == doctest::Approx(1.0));
}

TEST_CASE("eig_hermitian on a diagonal matrix") {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = 0.1;
    m(1, 1) = 0.9;
    const HermitianEig eig = eig_hermitian(m);
    CHECK(eig.eigenvalues(0) == doctest::Approx(0.1));
    CHECK(eig.eigenvalues(1) == doctest::Approx(0.9));
}

TEST_CASE("eig_hermitian reconstructs random input") {
    Rng rng(11);
    const CMatrix m = random_hermitian(rng, 6);
    const HermitianEig eig = eig_hermitian(m);
    const CMatrix recon =
        eig.eigenvectors * eig.eigenvalues.asDiagonal() * eig.eigenvectors.adjoint();
    CHECK((recon - m).norm() <= 1e-10 * m.norm());
    CHECK((eig.eigenvectors.adjoint() * eig.eigenvectors - CMatrix::Identity(6, 6)).norm() <=
          1e-10);
    for (Index i = 1; i < 6; ++i) CHECK(eig.eigenvalues(i) >= eig.eigenvalues(i - 1));
}

TEST_CASE("eig_hermitian rejects bad input") {
    CHECK_THROWS_AS(eig_hermitian(CMatrix::Zero(2, 3)), ShapeError);
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    CHECK_THROWS(eig_hermitian(m));
}

TEST_CASE("svd of a scaled identity") {
    const GsvdResult s = svd(CMatrix::Identity(2, 2) / std::sqrt(2.0));
    REQUIRE(s.rank == 2);
    CHECK(s.sigmas(0) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(s.sigmas(1) == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("svd of a rank-1 outer product") {
    Rng rng(3);
    const CVector a = rng.random_pure(3);
    const CVector b = rng.random_pure(5);
    const GsvdResult s = svd(CMatrix(a * b.adjoint()));
    REQUIRE(s.rank == 1);
    CHECK(s.sigmas(0) == doctest::Approx(1.0));
}

TEST_CASE("svd reconstructs a random rectangular matrix") {
    Rng rng(17);
    const CMatrix m = rng.ginibre(3, 4);
    const GsvdResult s = svd(m);
    CMatrix d = CMatrix::Zero(s.rank, s.rank);
    for (Index i = 0; i < s.rank; ++i) d(i, i) = s.sigmas(i);
    CHECK((s.left * d * s.right.adjoint() - m).norm() <= 1e-10 * m.norm());
    for (Index i = 1; i < s.rank; ++i) CHECK(s.sigmas(i) <= s.sigmas(i - 1));
}

TEST_CASE("gsvd with identity metrics reduces to svd") {
    Rng rng(23);
    const CMatrix m = rng.ginibre(4, 3);
    const GsvdResult plain = svd(m);
    const GsvdResult gen = gsvd(m, CMatrix::Identity(4, 4), CMatrix::Identity(3, 3));
    REQUIRE(gen.rank == plain.rank);
    for (Index i = 0; i < gen.rank; ++i)
        CHECK(gen.sigmas(i) == doctest::Approx(plain.sigmas(i)).epsilon(1e-12));
}

TEST_CASE("gsvd with scaled-identity metrics") {
    const CMatrix m = CMatrix::Identity(2, 2) / std::sqrt(2.0);
    const GsvdResult s = gsvd(m, 2.0 * CMatrix::Identity(2, 2), 2.0 * CMatrix::Identity(2, 2));
    REQUIRE(s.rank == 2);
    CHECK(s.sigmas(0) == doctest::Approx(std::sqrt(2.0)));
    CHECK(s.sigmas(1) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("gsvd factors are metric-unitary and reconstruct") {
    Rng rng(29);
    for (int trial = 0; trial < 5; ++trial) {
        const CMatrix m = rng.ginibre(4, 4);
        const CMatrix a = rng.random_psd(4) + 0.5 * CMatrix::Identity(4, 4);
        const CMatrix b = rng.random_psd(4) + 0.5 * CMatrix::Identity(4, 4);
        const GsvdResult s = gsvd(m, a, b);
        const Index r = s.rank;
        CHECK((s.left.adjoint() * a * s.left - CMatrix::Identity(r, r)).norm() <= 1e-10);
        CHECK((s.right.adjoint() * b * s.right - CMatrix::Identity(r, r)).norm() <= 1e-10);
        CMatrix d = CMatrix::Zero(r, r);
        for (Index i = 0; i < r; ++i) d(i, i) = s.sigmas(i);
        CHECK((s.left * d * s.right.adjoint() - m).norm() <= 1e-10 * (1.0 + m.norm()));
    }
}

TEST_CASE("gsvd rejects indefinite metrics") {
    CMatrix bad = CMatrix::Identity(2, 2);
    bad(1, 1) = -1.0;
    const CMatrix m = CMatrix::Identity(2, 2);
    CHECK_THROWS_AS(gsvd(m, bad, CMatrix::Identity(2, 2)), MetricError);
    CHECK_THROWS_AS(gsvd(m, CMatrix::Identity(2, 2), bad), MetricError);
}

TEST_CASE("psd_factor of a scaled identity") {
    const CMatrix m = CMatrix::Identity(2, 2) / 2.0;
    const CMatrix f = psd_factor(m);
    REQUIRE(f.cols() == 2);
    CHECK((f * f.adjoint() - m).norm() <= 1e-10);
}

TEST_CASE("psd_factor of a rank-1 projector") {
    Rng rng(31);
    const CVector x = rng.random_pure(4);
    const double p = 0.37;
    const CMatrix f = psd_factor(CMatrix(p * x * x.adjoint()));
    REQUIRE(f.cols() == 1);
    CHECK((f * f.adjoint() - p * x * x.adjoint()).norm() <= 1e-10);
    CHECK(f.col(0).norm() == doctest::Approx(std::sqrt(p)));
}

TEST_CASE("psd_factor reconstructs Ginibre covariances") {
    Rng rng(37);
    const CMatrix g = rng.ginibre(5, 5);
    const CMatrix m = g * g.adjoint();
    const CMatrix f = psd_factor(m);
    CHECK((f * f.adjoint() - m).norm() <= 1e-10 * m.norm());
}

TEST_CASE("psd_factor rejects indefinite matrices") {
    CMatrix m = CMatrix::Identity(3, 3);
    m(2, 2) = -0.5;
    CHECK_THROWS_AS(psd_factor(m), NotPsdError);
}

TEST_CASE("orthogonal_complementation keeps a square factor") {
    const CMatrix f = CMatrix::Identity(3, 3);
    CHECK((orthogonal_complementation(f) - f).norm() == doctest::Approx(0.0));
}

TEST_CASE("orthogonal_complementation of one basis column") {
    CMatrix f = CMatrix::Zero(3, 1);
    f(0, 0) = 1.0;
    const CMatrix fbar = orthogonal_complementation(f);
    REQUIRE(fbar.cols() == 3);
    CHECK((fbar.col(0) - f.col(0)).norm() <= 1e-12);
    // appended columns are an orthonormal basis of the complement
    CHECK((fbar.rightCols(2).adjoint() * fbar.rightCols(2) - CMatrix::Identity(2, 2)).norm() <=
          1e-10);
    CHECK((fbar.rightCols(2).adjoint() * f).norm() <= 1e-10);
}

TEST_CASE("orthogonal_complementation satisfies the padded-identity factorization") {
    Rng rng(41);
    const CMatrix m = rng.random_psd_rank(4, 2);
    const CMatrix f = psd_factor(m);
    REQUIRE(f.cols() == 2);
    const CMatrix fbar = orthogonal_complementation(f);
    CMatrix pad = CMatrix::Zero(4, 4);
    pad.topLeftCorner(2, 2) = CMatrix::Identity(2, 2);
    CHECK((fbar * pad * fbar.adjoint() - m).norm() <= 1e-10);
    CHECK(rank_tol(fbar) == 4);
}

TEST_CASE("orthogonal_complementation rejects rank-deficient factors") {
    CMatrix f = CMatrix::Zero(3, 2);
    f(0, 0) = 1.0;
    f(0, 1) = 1.0;
    CHECK_THROWS_AS(orthogonal_complementation(f), ShapeError);
}

TEST_CASE("rank_tol basic values") {
    CHECK(rank_tol(CMatrix::Zero(3, 3)) == 0);
    CVector bell = CVector::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    CHECK(rank_tol(CMatrix(bell * bell.adjoint())) == 1);
    const double lam = 0.2;
    const CMatrix iso =
        (1.0 - lam) * CMatrix::Identity(4, 4) / 4.0 + lam * (bell * bell.adjoint());
    CHECK(rank_tol(iso) == 4);
}

TEST_CASE("rank_tol is unitary invariant") {
    Rng rng(43);
    const CMatrix m = rng.random_psd_rank(5, 3);
    const CMatrix u = rng.random_unitary(5);
    const CMatrix v = rng.random_unitary(5);
    CHECK(rank_tol(m) == 3);
    CHECK(rank_tol(CMatrix(u * m * v)) == 3);
}

TEST_CASE("factor and complementation round-trip on random PSD matrices") {
    Rng rng(47);
    for (int trial = 0; trial < 200; ++trial) {
        const Index n = 2 + static_cast<Index>(rng.uniform() * 7.0);
        const Index r = 1 + static_cast<Index>(rng.uniform() * static_cast<double>(n));
        const CMatrix m = rng.random_psd_rank(n, std::min(r, n));
        const CMatrix f = psd_factor(m);
        const CMatrix fbar = orthogonal_complementation(f);
        CMatrix pad = CMatrix::Zero(n, n);
        pad.topLeftCorner(f.cols(), f.cols()) =
            CMatrix::Identity(f.cols(), f.cols());
        CHECK((fbar * pad * fbar.adjoint() - m).norm() <= 1e-9);
    }
}

TEST_CASE("hermitian square roots invert each other") {
    Rng rng(53);
    const CMatrix a = rng.random_psd(4) + 0.2 * CMatrix::Identity(4, 4);
    const CMatrix s = hermitian_sqrt(a);
    const CMatrix si = hermitian_inv_sqrt(a);
    CHECK((s * s - a).norm() <= 1e-10 * a.norm());
    CHECK((s * si - CMatrix::Identity(4, 4)).norm() <= 1e-9);
    CHECK_THROWS_AS(hermitian_inv_sqrt(CMatrix::Zero(2, 2)), MetricError);
}

TEST_CASE("kron matches manual indexing") {
    Rng rng(59);
    const CMatrix a = rng.ginibre(2, 3);
    const CMatrix b = rng.ginibre(3, 2);
    const CMatrix k = kron(a, b);
    REQUIRE(k.rows() == 6);
    REQUIRE(k.cols() == 6);
    for (Index i = 0; i < 2; ++i)
        for (Index j = 0; j < 3; ++j)
            for (Index p = 0; p < 3; ++p)
                for (Index q = 0; q < 2; ++q)
                    CHECK(std::abs(k(i * 3 + p, j * 2 + q) - a(i, j) * b(p, q)) <= 1e-14);
    const CVector x = rng.random_pure(3);
    const CVector y = rng.random_pure(2);
    CHECK((kron(CMatrix(a), CMatrix(b)) * kron(x, y) - kron(CVector(a * x), CVector(b * y)))
              .norm() <= 1e-12);
}
