#include "sepcone/states.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace sepcone {

namespace {

void require_bipartite(const DimSpec& dims, const char* who) {
    if (dims.n() != 2) throw ShapeError(std::string(who) + ": state must have exactly 2 factors");
}

void require_factor_index(int factor, const char* who) {
    if (factor != 1 && factor != 2)
        throw ShapeError(std::string(who) + ": factor must be 1 or 2");
}

}  // namespace

DimSpec make_dims(std::vector<int> dims) {
    if (dims.size() < 2) throw ShapeError("make_dims: need at least 2 tensor factors");
    for (int d : dims)
        if (d < 1) throw ShapeError("make_dims: every factor dimension must be >= 1");
    return DimSpec{std::move(dims)};
}

PureState make_pure(DimSpec dims, CVector amplitudes) {
    if (amplitudes.size() != dims.total())
        throw ShapeError("make_pure: amplitude count does not match the dimension layout");
    if (std::abs(amplitudes.norm() - 1.0) > 1e-8)
        throw ShapeError("make_pure: amplitudes must have unit norm");
    return PureState{std::move(dims), std::move(amplitudes)};
}

MixedState make_mixed(DimSpec dims, CMatrix matrix) {
    const Index d = dims.total();
    if (matrix.rows() != d || matrix.cols() != d)
        throw ShapeError("make_mixed: matrix does not match the dimension layout");
    if (!is_hermitian(matrix, 1e-8)) throw ShapeError("make_mixed: matrix must be Hermitian");
    if (std::abs(matrix.trace().real() - 1.0) > 1e-8)
        throw ShapeError("make_mixed: matrix must have unit trace");
    return MixedState{std::move(dims), std::move(matrix)};
}

SchmidtSpectrum make_spectrum(RVector sigmas) {
    Index r = 0;
    for (Index i = 0; i < sigmas.size(); ++i) {
        if (sigmas(i) <= 0.0) break;
        if (i > 0 && sigmas(i) > sigmas(i - 1) + 1e-12)
            throw ShapeError("make_spectrum: coefficients must be nonincreasing");
        ++r;
    }
    RVector kept = sigmas.head(r);
    const double norm = kept.norm();
    if (norm <= 0.0) throw ShapeError("make_spectrum: spectrum must be nonzero");
    kept /= norm;
    return SchmidtSpectrum{std::move(kept), r};
}

CMatrix coefficient_matrix(const PureState& z) {
    require_bipartite(z.dims, "coefficient_matrix");
    const Index n1 = z.dims.dims[0];
    const Index n2 = z.dims.dims[1];
    CMatrix c(n1, n2);
    for (Index i = 0; i < n1; ++i)
        for (Index j = 0; j < n2; ++j) c(i, j) = z.amplitudes(i * n2 + j);
    return c;
}

CMatrix bipartition_reshape(const PureState& z, const std::vector<int>& part) {
    const int n = z.dims.n();
    std::set<int> chosen(part.begin(), part.end());
    if (chosen.size() != part.size())
        throw ShapeError("bipartition_reshape: repeated factor index in the cut");
    if (chosen.empty() || static_cast<int>(chosen.size()) == n)
        throw ShapeError("bipartition_reshape: cut must be a nonempty proper subset");
    for (int i : chosen)
        if (i < 0 || i >= n) throw ShapeError("bipartition_reshape: factor index out of range");

    std::vector<int> rows_side(chosen.begin(), chosen.end());
    std::vector<int> cols_side;
    for (int i = 0; i < n; ++i)
        if (!chosen.count(i)) cols_side.push_back(i);

    Index nrows = 1, ncols = 1;
    for (int i : rows_side) nrows *= z.dims.dims[i];
    for (int i : cols_side) ncols *= z.dims.dims[i];

    // Strides of each factor in the flat amplitude index (factor 0 slowest).
    std::vector<Index> stride(n, 1);
    for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * z.dims.dims[i + 1];

    CMatrix m = CMatrix::Zero(nrows, ncols);
    std::vector<int> digit(n, 0);
    for (Index g = 0; g < z.dims.total(); ++g) {
        Index rest = g;
        for (int i = 0; i < n; ++i) {
            digit[i] = static_cast<int>(rest / stride[i]);
            rest %= stride[i];
        }
        Index row = 0, col = 0;
        for (int i : rows_side) row = row * z.dims.dims[i] + digit[i];
        for (int i : cols_side) col = col * z.dims.dims[i] + digit[i];
        m(row, col) = z.amplitudes(g);
    }
    return m;
}

SchmidtSpectrum schmidt_coefficients(const PureState& z, const std::vector<int>& part,
                                     double tol) {
    const GsvdResult s = svd(bipartition_reshape(z, part), tol);
    RVector sigmas = s.sigmas;
    const double norm = sigmas.norm();
    if (norm > 0.0) sigmas /= norm;
    return SchmidtSpectrum{std::move(sigmas), s.rank};
}

SchmidtSpectrum schmidt_coefficients(const PureState& z, double tol) {
    require_bipartite(z.dims, "schmidt_coefficients");
    return schmidt_coefficients(z, std::vector<int>{0}, tol);
}

SchmidtSpectrum generalized_schmidt(const PureState& z, const CMatrix& A,
                                    const CMatrix& B, double tol) {
    require_bipartite(z.dims, "generalized_schmidt");
    const GsvdResult s = gsvd(coefficient_matrix(z), A, B.transpose(), tol);
    RVector sigmas = s.sigmas;
    const double norm = sigmas.norm();
    if (norm > 0.0) sigmas /= norm;
    return SchmidtSpectrum{std::move(sigmas), s.rank};
}

CMatrix partial_transpose(const MixedState& rho, int factor) {
    require_bipartite(rho.dims, "partial_transpose");
    require_factor_index(factor, "partial_transpose");
    const Index n1 = rho.dims.dims[0];
    const Index n2 = rho.dims.dims[1];
    CMatrix out(n1 * n2, n1 * n2);
    for (Index i = 0; i < n1; ++i)
        for (Index j = 0; j < n2; ++j)
            for (Index k = 0; k < n1; ++k)
                for (Index l = 0; l < n2; ++l) {
                    const Index row = i * n2 + j, col = k * n2 + l;
                    out(row, col) = (factor == 1) ? rho.matrix(k * n2 + j, i * n2 + l)
                                                  : rho.matrix(i * n2 + l, k * n2 + j);
                }
    return out;
}

std::pair<bool, double> is_ppt(const MixedState& rho, double tol) {
    const CMatrix pt = partial_transpose(rho, 1);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (pt + pt.adjoint()), Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    return {lo >= -tol, lo};
}

CMatrix partial_trace(const MixedState& rho, int traced_factor) {
    require_bipartite(rho.dims, "partial_trace");
    require_factor_index(traced_factor, "partial_trace");
    const Index n1 = rho.dims.dims[0];
    const Index n2 = rho.dims.dims[1];
    if (traced_factor == 2) {
        CMatrix out = CMatrix::Zero(n1, n1);
        for (Index i = 0; i < n1; ++i)
            for (Index k = 0; k < n1; ++k)
                for (Index j = 0; j < n2; ++j) out(i, k) += rho.matrix(i * n2 + j, k * n2 + j);
        return out;
    }
    CMatrix out = CMatrix::Zero(n2, n2);
    for (Index j = 0; j < n2; ++j)
        for (Index l = 0; l < n2; ++l)
            for (Index i = 0; i < n1; ++i) out(j, l) += rho.matrix(i * n2 + j, i * n2 + l);
    return out;
}

PureState bell_plus() {
    CVector v = CVector::Zero(4);
    v(0) = v(3) = 1.0 / std::sqrt(2.0);
    return make_pure(make_dims({2, 2}), std::move(v));
}

PureState basis_state(DimSpec dims, const std::vector<int>& digits) {
    if (static_cast<int>(digits.size()) != dims.n())
        throw ShapeError("basis_state: one digit per tensor factor required");
    Index idx = 0;
    for (int i = 0; i < dims.n(); ++i) {
        if (digits[i] < 0 || digits[i] >= dims.dims[i])
            throw ShapeError("basis_state: digit out of range");
        idx = idx * dims.dims[i] + digits[i];
    }
    CVector v = CVector::Zero(dims.total());
    v(idx) = 1.0;
    return make_pure(std::move(dims), std::move(v));
}

PureState ghz_state(int n, int d) {
    if (n < 2 || d < 2) throw ShapeError("ghz_state: need n >= 2 factors of dimension >= 2");
    DimSpec dims = make_dims(std::vector<int>(n, d));
    CVector v = CVector::Zero(dims.total());
    // |i i ... i| has flat index i * (d^{n-1} + ... + d + 1).
    Index step = 0, p = 1;
    for (int k = 0; k < n; ++k) {
        step += p;
        p *= d;
    }
    for (int i = 0; i < d; ++i) v(i * step) = 1.0 / std::sqrt(static_cast<double>(d));
    return make_pure(std::move(dims), std::move(v));
}

PureState w_state(int n) {
    if (n < 2) throw ShapeError("w_state: need n >= 2 qubits");
    DimSpec dims = make_dims(std::vector<int>(n, 2));
    CVector v = CVector::Zero(dims.total());
    for (int k = 0; k < n; ++k) v(Index{1} << (n - 1 - k)) = 1.0 / std::sqrt(static_cast<double>(n));
    return make_pure(std::move(dims), std::move(v));
}

MixedState mix_with_white_noise(const PureState& z, double lambda) {
    if (lambda < 0.0 || lambda > 1.0)
        throw ShapeError("mix_with_white_noise: mixing weight must be in [0, 1]");
    const Index d = z.dims.total();
    CMatrix m = (1.0 - lambda) / static_cast<double>(d) * CMatrix::Identity(d, d) +
                lambda * (z.amplitudes * z.amplitudes.adjoint());
    return make_mixed(z.dims, std::move(m));
}

}  // namespace sepcone
