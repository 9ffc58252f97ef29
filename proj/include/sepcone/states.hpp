#pragma once

#include <utility>
#include <vector>

#include "sepcone/linalg.hpp"

namespace sepcone {

// Ordered tensor-factor dimensions, at least two factors, each >= 1.
struct DimSpec {
    std::vector<int> dims;

    int n() const { return static_cast<int>(dims.size()); }
    Index total() const {
        Index t = 1;
        for (int d : dims) t *= d;
        return t;
    }
};

DimSpec make_dims(std::vector<int> dims);

// Unit-norm amplitude vector over a tensor-factor layout. Index convention:
// factor 0 is the slowest (leftmost) index, i.e. amplitude(i0, i1, ...) sits
// at i0 * N1 * N2 * ... + i1 * N2 * ... + ...
struct PureState {
    DimSpec dims;
    CVector amplitudes;
};

// Unit-trace Hermitian PSD matrix over the same index layout.
struct MixedState {
    DimSpec dims;
    CMatrix matrix;
};

PureState make_pure(DimSpec dims, CVector amplitudes);
MixedState make_mixed(DimSpec dims, CMatrix matrix);

// Nonincreasing positive (generalized) Schmidt coefficients, normalized to
// sum of squares 1, truncated at the rank cutoff. sigma1() is 0 at rank 1 so
// threshold formulas degrade to the product-state value.
struct SchmidtSpectrum {
    RVector sigmas;
    Index rank = 0;

    double sigma0() const { return rank > 0 ? sigmas(0) : 0.0; }
    double sigma1() const { return rank > 1 ? sigmas(1) : 0.0; }
};

SchmidtSpectrum make_spectrum(RVector sigmas);

// N1 x N2 matrix C with C(i, j) = amplitude of |i j>. Bipartite states only.
CMatrix coefficient_matrix(const PureState& z);

// Reshape across an arbitrary cut: rows indexed by the factors in `part`
// (ascending original order), columns by the complement. `part` must be a
// nonempty proper subset of {0, ..., n-1}.
CMatrix bipartition_reshape(const PureState& z, const std::vector<int>& part);

SchmidtSpectrum schmidt_coefficients(const PureState& z, const std::vector<int>& part,
                                     double tol = kRankTol);
// Bipartite shorthand for the {0} | {1} cut.
SchmidtSpectrum schmidt_coefficients(const PureState& z, double tol = kRankTol);

// Schmidt spectrum of a bipartite z with respect to positive definite metrics
// A (factor 1) and B (factor 2), normalized to unit 2-norm. Computed as the
// singular values of A^{1/2} C(z) (B^T)^{1/2}: the transpose on B is forced
// by the index convention, under which (P (x) Q)|z> has coefficient matrix
// P C(z) Q^T, so this spectrum matches the state transformed by the inverse
// metric factors.
SchmidtSpectrum generalized_schmidt(const PureState& z, const CMatrix& A,
                                    const CMatrix& B, double tol = kRankTol);

// Transpose on one factor of a bipartite density matrix (factor = 1 or 2).
CMatrix partial_transpose(const MixedState& rho, int factor = 1);

// (min eigenvalue of the partial transpose >= -tol, that eigenvalue).
std::pair<bool, double> is_ppt(const MixedState& rho, double tol = kPsdTol);

// Trace out one factor of a bipartite state (traced_factor = 1 or 2).
CMatrix partial_trace(const MixedState& rho, int traced_factor);

// ----- common states -----

// (|00> + |11>)/sqrt(2) on 2 x 2.
PureState bell_plus();

// Computational basis state |digits> for the given layout.
PureState basis_state(DimSpec dims, const std::vector<int>& digits);

// (1/sqrt(d)) sum_i |i i ... i> on n factors of dimension d.
PureState ghz_state(int n, int d = 2);

// (1/sqrt(n)) sum_k |0 ... 1_k ... 0> on n qubits.
PureState w_state(int n);

// (1 - lambda) I / D + lambda |z><z| on z's layout.
MixedState mix_with_white_noise(const PureState& z, double lambda);

}  // namespace sepcone
