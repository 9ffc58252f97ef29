#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "sepcone/error.hpp"
#include "sepcone/random.hpp"
#include "sepcone/states.hpp"

using namespace sepcone;

namespace {

PureState random_state(Rng& rng, const std::vector<int>& dims) {
    const DimSpec spec = make_dims(dims);
    return make_pure(spec, rng.random_pure(spec.total()));
}

PureState product_state(Rng& rng, const std::vector<int>& dims) {
    CVector v = rng.random_pure(dims[0]);
    for (std::size_t k = 1; k < dims.size(); ++k) v = kron(v, rng.random_pure(dims[k]));
    return make_pure(make_dims(dims), v);
}

}  // namespace

TEST_CASE("state constructors validate their invariants") {
    CHECK_THROWS_AS(make_dims({2}), ShapeError);
    CHECK_THROWS_AS(make_dims({2, 0}), ShapeError);
    CHECK_THROWS_AS(make_pure(make_dims({2, 2}), CVector::Ones(4)), ShapeError);
    CMatrix not_unit = CMatrix::Identity(4, 4);
    CHECK_THROWS_AS(make_mixed(make_dims({2, 2}), not_unit), ShapeError);
    CMatrix not_herm = CMatrix::Zero(4, 4);
    not_herm(0, 1) = 1.0;
    not_herm(0, 0) = 1.0;
    CHECK_THROWS_AS(make_mixed(make_dims({2, 2}), not_herm), ShapeError);
}

TEST_CASE("make_spectrum normalizes and truncates") {
    RVector raw(3);
    raw << 3.0, 2.0, 0.0;
    const SchmidtSpectrum spec = make_spectrum(raw);
    REQUIRE(spec.rank == 2);
    CHECK(spec.sigmas.squaredNorm() == doctest::Approx(1.0));
    CHECK(spec.sigma0() == doctest::Approx(3.0 / std::sqrt(13.0)));
    RVector increasing(2);
    increasing << 1.0, 2.0;
    CHECK_THROWS(make_spectrum(increasing));
}

TEST_CASE("coefficient_matrix of the maximally entangled pair") {
    const CMatrix c = coefficient_matrix(bell_plus());
    CHECK((c - CMatrix::Identity(2, 2) / std::sqrt(2.0)).norm() <= 1e-12);
}

TEST_CASE("coefficient_matrix of a basis state") {
    const PureState z = basis_state(make_dims({2, 2}), {0, 1});
    const CMatrix c = coefficient_matrix(z);
    CHECK(std::abs(c(0, 1) - 1.0) <= 1e-15);
    CHECK(std::abs(c(0, 0)) + std::abs(c(1, 0)) + std::abs(c(1, 1)) <= 1e-15);
}

TEST_CASE("coefficient_matrix has unit Frobenius norm") {
    Rng rng(5);
    const PureState z = random_state(rng, {3, 4});
    CHECK(coefficient_matrix(z).norm() == doctest::Approx(1.0));
    CHECK_THROWS_AS(coefficient_matrix(random_state(rng, {2, 2, 2})), ShapeError);
}

TEST_CASE("bipartition_reshape of GHZ on the first factor") {
    const CMatrix m = bipartition_reshape(ghz_state(3), {0});
    REQUIRE(m.rows() == 2);
    REQUIRE(m.cols() == 4);
    CHECK(std::abs(m(0, 0) - 1.0 / std::sqrt(2.0)) <= 1e-12);
    CHECK(std::abs(m(1, 3) - 1.0 / std::sqrt(2.0)) <= 1e-12);
    CHECK(m.norm() == doctest::Approx(1.0));
}

TEST_CASE("bipartition_reshape of a product state is rank 1") {
    Rng rng(7);
    const PureState z = product_state(rng, {2, 3, 2});
    CHECK(rank_tol(bipartition_reshape(z, {0, 1})) == 1);
}

TEST_CASE("bipartition_reshape rejects empty and full subsets") {
    const PureState z = ghz_state(3);
    CHECK_THROWS_AS(bipartition_reshape(z, {}), ShapeError);
    CHECK_THROWS_AS(bipartition_reshape(z, {0, 1, 2}), ShapeError);
    CHECK_THROWS_AS(bipartition_reshape(z, {3}), ShapeError);
}

TEST_CASE("schmidt spectra agree across complementary cuts") {
    Rng rng(13);
    const std::vector<std::vector<int>> layouts = {{2, 2}, {3, 2}, {2, 2, 3}, {3, 3, 2},
                                                   {2, 2, 2, 2}, {2, 3, 2, 3}};
    int done = 0;
    while (done < 100) {
        const auto& dims = layouts[done % layouts.size()];
        const PureState z = random_state(rng, dims);
        const int n = static_cast<int>(dims.size());
        std::vector<int> part, rest;
        for (int k = 0; k < n; ++k) (rng.uniform() < 0.5 ? part : rest).push_back(k);
        if (part.empty() || rest.empty()) continue;
        const SchmidtSpectrum a = schmidt_coefficients(z, part);
        const SchmidtSpectrum b = schmidt_coefficients(z, rest);
        REQUIRE(a.rank == b.rank);
        for (Index i = 0; i < a.rank; ++i)
            CHECK(std::abs(a.sigmas(i) - b.sigmas(i)) <= 1e-12);
        ++done;
    }
}

TEST_CASE("schmidt_coefficients known values") {
    const SchmidtSpectrum bell = schmidt_coefficients(bell_plus());
    REQUIRE(bell.rank == 2);
    CHECK(bell.sigmas(0) == doctest::Approx(1.0 / std::sqrt(2.0)));

    const SchmidtSpectrum w = schmidt_coefficients(w_state(3), std::vector<int>{0});
    REQUIRE(w.rank == 2);
    CHECK(w.sigmas(0) == doctest::Approx(std::sqrt(2.0 / 3.0)));
    CHECK(w.sigmas(1) == doctest::Approx(std::sqrt(1.0 / 3.0)));

    Rng rng(17);
    const SchmidtSpectrum prod = schmidt_coefficients(product_state(rng, {3, 3}));
    REQUIRE(prod.rank == 1);
    CHECK(prod.sigma0() == doctest::Approx(1.0));
    CHECK(prod.sigma1() == 0.0);
}

TEST_CASE("generalized_schmidt with identity metrics equals the plain spectrum") {
    Rng rng(19);
    const PureState z = random_state(rng, {3, 4});
    const SchmidtSpectrum plain = schmidt_coefficients(z);
    const SchmidtSpectrum gen =
        generalized_schmidt(z, CMatrix::Identity(3, 3), CMatrix::Identity(4, 4));
    REQUIRE(gen.rank == plain.rank);
    for (Index i = 0; i < gen.rank; ++i)
        CHECK(std::abs(gen.sigmas(i) - plain.sigmas(i)) <= 1e-12);
}

TEST_CASE("generalized_schmidt is scale invariant after normalization") {
    const SchmidtSpectrum s = generalized_schmidt(bell_plus(), 2.0 * CMatrix::Identity(2, 2),
                                                  2.0 * CMatrix::Identity(2, 2));
    REQUIRE(s.rank == 2);
    CHECK(s.sigmas(0) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(s.sigmas(1) == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("generalized_schmidt recovers the spectrum of a frame-transported state") {
    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const int n1 = 3, n2 = 4;
        const int r = 2 + static_cast<int>(rng.uniform() * 2.0);
        RVector raw(r);
        for (int i = 0; i < r; ++i) raw(i) = 0.2 + rng.uniform();
        std::sort(raw.data(), raw.data() + r, std::greater<double>());
        const SchmidtSpectrum sigma = make_spectrum(raw);

        CVector zs = CVector::Zero(static_cast<Index>(n1) * n2);
        for (Index i = 0; i < sigma.rank; ++i) zs(i * n2 + i) = sigma.sigmas(i);
        const CMatrix f1 = rng.ginibre(n1, n1);
        const CMatrix f2 = rng.ginibre(n2, n2);
        CVector z = kron(f1, f2) * zs;
        z /= z.norm();

        const CMatrix a = (f1 * f1.adjoint()).inverse();
        const CMatrix b = (f2 * f2.adjoint()).inverse();
        const SchmidtSpectrum rec =
            generalized_schmidt(make_pure(make_dims({n1, n2}), z), a, b);
        REQUIRE(rec.rank == sigma.rank);
        for (Index i = 0; i < rec.rank; ++i)
            CHECK(std::abs(rec.sigmas(i) - sigma.sigmas(i)) <= 1e-9);
    }
}

TEST_CASE("partial_transpose leaves real product states unchanged") {
    Rng rng(29);
    CMatrix m1 = rng.random_psd(2);
    m1 = 0.5 * (m1 + m1.transpose());  // make it real symmetric
    m1 = m1.real().cast<Complex>();
    m1 /= m1.trace().real();
    const CMatrix m2 = rng.random_psd(3);
    const MixedState rho = make_mixed(make_dims({2, 3}), kron(m1, m2));
    CHECK((partial_transpose(rho, 1) - rho.matrix).norm() <= 1e-12);
}

TEST_CASE("partial_transpose of the maximally entangled projector") {
    const PureState bell = bell_plus();
    const MixedState rho =
        make_mixed(bell.dims, CMatrix(bell.amplitudes * bell.amplitudes.adjoint()));
    const HermitianEig eig = eig_hermitian(partial_transpose(rho));
    CHECK(eig.eigenvalues(0) == doctest::Approx(-0.5));
    for (int i = 1; i < 4; ++i) CHECK(eig.eigenvalues(i) == doctest::Approx(0.5));
}

TEST_CASE("partial_transpose of the isotropic family") {
    const double lam = 0.4;
    const MixedState rho = mix_with_white_noise(bell_plus(), lam);
    const HermitianEig eig = eig_hermitian(partial_transpose(rho));
    CHECK(eig.eigenvalues(0) == doctest::Approx((1.0 - lam) / 4.0 - lam / 2.0));
}

TEST_CASE("partial_transpose preserves trace and Hermiticity and is an involution") {
    Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const int n1 = 2 + static_cast<int>(rng.uniform() * 2.0);
        const int n2 = 2 + static_cast<int>(rng.uniform() * 2.0);
        const DimSpec dims = make_dims({n1, n2});
        const MixedState rho = make_mixed(dims, rng.random_psd(dims.total()));
        const int factor = rng.uniform() < 0.5 ? 1 : 2;
        const CMatrix pt = partial_transpose(rho, factor);
        CHECK(std::abs(pt.trace().real() - 1.0) <= 1e-12);
        CHECK((pt - pt.adjoint()).norm() <= 1e-12);
        const MixedState back = make_mixed(dims, pt);
        CHECK((partial_transpose(back, factor) - rho.matrix).norm() <= 1e-12);
    }
}

TEST_CASE("is_ppt on known states") {
    Rng rng(37);
    const MixedState prod =
        make_mixed(make_dims({2, 2}), kron(rng.random_psd(2), rng.random_psd(2)));
    CHECK(is_ppt(prod).first);

    const PureState bell = bell_plus();
    const MixedState proj =
        make_mixed(bell.dims, CMatrix(bell.amplitudes * bell.amplitudes.adjoint()));
    const auto [ok, min_eig] = is_ppt(proj);
    CHECK_FALSE(ok);
    CHECK(min_eig == doctest::Approx(-0.5));

    const auto [boundary_ok, boundary_eig] = is_ppt(mix_with_white_noise(bell, 1.0 / 3.0));
    CHECK(boundary_ok);
    CHECK(std::abs(boundary_eig) <= 1e-12);
}

TEST_CASE("partial_trace recovers product marginals") {
    Rng rng(41);
    const CMatrix m1 = rng.random_psd(3);
    const CMatrix m2 = rng.random_psd(2);
    const MixedState rho = make_mixed(make_dims({3, 2}), kron(m1, m2));
    CHECK((partial_trace(rho, 2) - m1).norm() <= 1e-12);
    CHECK((partial_trace(rho, 1) - m2).norm() <= 1e-12);
}

TEST_CASE("schmidt rank distinguishes product from entangled") {
    Rng rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        const PureState p = product_state(rng, {3, 3});
        CHECK(schmidt_coefficients(p).rank == 1);
    }
    CHECK(schmidt_coefficients(bell_plus()).rank == 2);
}

TEST_CASE("named states have the advertised layouts") {
    const PureState ghz = ghz_state(3, 3);
    CHECK(ghz.dims.total() == 27);
    CHECK(std::abs(ghz.amplitudes(0) - 1.0 / std::sqrt(3.0)) <= 1e-12);
    CHECK(std::abs(ghz.amplitudes(13) - 1.0 / std::sqrt(3.0)) <= 1e-12);
    CHECK(std::abs(ghz.amplitudes(26) - 1.0 / std::sqrt(3.0)) <= 1e-12);

    const PureState w = w_state(4);
    CHECK(w.dims.total() == 16);
    CHECK(std::abs(w.amplitudes(1) - 0.5) <= 1e-12);
    CHECK(std::abs(w.amplitudes(2) - 0.5) <= 1e-12);
    CHECK(std::abs(w.amplitudes(4) - 0.5) <= 1e-12);
    CHECK(std::abs(w.amplitudes(8) - 0.5) <= 1e-12);

    const MixedState iso = mix_with_white_noise(bell_plus(), 0.25);
    CHECK(std::abs(iso.matrix.trace().real() - 1.0) <= 1e-12);
}
