#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "sepcone/linalg.hpp"

namespace sepcone {

// Deterministic random source for benchmarks and randomized tests. The
// Gaussian sampler is a hand-rolled Box-Muller transform over mt19937_64 so
// a fixed seed yields the same stream on every platform and standard library
// (std::normal_distribution is implementation-defined).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        const double ang = 2.0 * std::numbers::pi * u2;
        spare_ = mag * std::sin(ang);
        have_spare_ = true;
        return mag * std::cos(ang);
    }

    Complex cnormal() {
        const double re = normal();
        const double im = normal();
        return {re, im};
    }

    // Normalized vector of i.i.d. standard complex Gaussians (Haar on the sphere).
    CVector random_pure(Index dim) {
        CVector v(dim);
        for (Index i = 0; i < dim; ++i) v(i) = cnormal();
        return v / v.norm();
    }

    CMatrix ginibre(Index rows, Index cols) {
        CMatrix g(rows, cols);
        for (Index i = 0; i < rows; ++i)
            for (Index j = 0; j < cols; ++j) g(i, j) = cnormal();
        return g;
    }

    // G G^H from a square Ginibre draw, normalized to unit trace.
    CMatrix random_psd(Index n) {
        const CMatrix g = ginibre(n, n);
        CMatrix m = g * g.adjoint();
        return m / m.trace().real();
    }

    // Unit-trace PSD of rank exactly r (with probability one).
    CMatrix random_psd_rank(Index n, Index r) {
        const CMatrix g = ginibre(n, r);
        CMatrix m = g * g.adjoint();
        return m / m.trace().real();
    }

    CMatrix random_unitary(Index n) {
        Eigen::HouseholderQR<CMatrix> qr(ginibre(n, n));
        CMatrix q = qr.householderQ();
        return q;
    }

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace sepcone
