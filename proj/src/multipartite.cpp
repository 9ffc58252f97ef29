#include "sepcone/multipartite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sepcone/error.hpp"

namespace sepcone {

namespace {

// Contract one tensor factor with a matrix. Factor 0 varies slowest, so the
// amplitude layout is (pre, dims[factor], post) row-major.
CVector apply_local(const CVector& w, const std::vector<int>& dims, int factor,
                    const CMatrix& op) {
    Index pre = 1, post = 1;
    for (int k = 0; k < factor; ++k) pre *= dims[k];
    for (int k = factor + 1; k < static_cast<int>(dims.size()); ++k) post *= dims[k];
    const Index nj = dims[factor];
    if (op.cols() != nj) throw ShapeError("apply_local: operator does not match the factor");
    const Index mj = op.rows();
    CVector out = CVector::Zero(pre * mj * post);
    for (Index p = 0; p < pre; ++p)
        for (Index a = 0; a < mj; ++a)
            for (Index q = 0; q < post; ++q) {
                Complex acc = 0.0;
                for (Index b = 0; b < nj; ++b)
                    acc += op(a, b) * w((p * nj + b) * post + q);
                out((p * mj + a) * post + q) = acc;
            }
    return out;
}

std::vector<std::vector<int>> canonical_cuts(int n) {
    std::vector<std::vector<int>> cuts;
    const int rest = n - 1;
    const unsigned full = (1u << rest) - 1u;
    for (unsigned mask = 0; mask < full; ++mask) {
        std::vector<int> subset{0};
        for (int j = 0; j < rest; ++j)
            if (mask & (1u << j)) subset.push_back(j + 1);
        cuts.push_back(std::move(subset));
    }
    return cuts;
}

double cut_min_product(const PureState& z, std::vector<CutReport>* reports,
                       std::vector<int>* argmin, double tol) {
    const int n = static_cast<int>(z.dims.n());
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> best_subset;
    for (std::vector<int>& subset : canonical_cuts(n)) {
        const SchmidtSpectrum spec = schmidt_coefficients(z, subset, tol);
        CutReport rep;
        rep.subset = subset;
        rep.sigma0 = spec.sigma0();
        rep.sigma1 = spec.sigma1();
        rep.product = rep.sigma0 * rep.sigma1;
        if (rep.product < best - 1e-12 ||
            (std::abs(rep.product - best) <= 1e-12 && rep.subset < best_subset)) {
            best = rep.product;
            best_subset = rep.subset;
        }
        if (reports) reports->push_back(std::move(rep));
    }
    if (argmin) *argmin = best_subset;
    return best;
}

}  // namespace

BipartitionScan genuine_threshold(const PureState& z, const std::vector<CMatrix>& metrics,
                                  double tol, Index max_dim) {
    const int n = static_cast<int>(z.dims.n());
    if (n < 3) throw ShapeError("genuine_threshold: need at least three factors");
    if (z.dims.total() > max_dim)
        throw ShapeError("genuine_threshold: total dimension exceeds the cap");
    if (static_cast<int>(metrics.size()) != n)
        throw ShapeError("genuine_threshold: one noise factor per tensor factor");

    double trace_product = 1.0;
    for (int j = 0; j < n; ++j) {
        const CMatrix& m = metrics[j];
        if (m.rows() != m.cols() || m.rows() != z.dims.dims[j])
            throw ShapeError("genuine_threshold: noise factor dimension mismatch");
        trace_product *= m.trace().real();
    }
    if (std::abs(trace_product - 1.0) > 1e-8)
        throw MetricError("genuine_threshold: noise factor traces must multiply to 1");

    // Move into the frame where every noise factor is flat on its face.
    std::vector<int> ranks(n);
    CVector w = z.amplitudes;
    for (int j = 0; j < n; ++j) {
        const CMatrix thin = psd_factor(metrics[j], tol);
        if (thin.cols() == 0) throw MetricError("genuine_threshold: zero noise factor");
        ranks[j] = static_cast<int>(thin.cols());
        const CMatrix full = orthogonal_complementation(thin, tol);
        w = apply_local(w, z.dims.dims, j, full.inverse());
    }

    // Keep the block supported on the faces and reject states outside it.
    Index reduced_total = 1;
    for (int r : ranks) reduced_total *= r;
    CVector reduced(reduced_total);
    std::vector<Index> stride(n, 1);
    for (int j = n - 2; j >= 0; --j) stride[j] = stride[j + 1] * z.dims.dims[j + 1];
    for (Index idx = 0; idx < reduced_total; ++idx) {
        Index rem = idx, full_idx = 0;
        for (int j = n - 1; j >= 0; --j) {
            full_idx += (rem % ranks[j]) * stride[j];
            rem /= ranks[j];
        }
        reduced(idx) = w(full_idx);
    }
    const double total2 = w.squaredNorm();
    const double inside2 = reduced.squaredNorm();
    if (std::sqrt(std::max(total2 - inside2, 0.0)) > 1e-8 * std::sqrt(total2))
        throw FaceError("genuine_threshold: state lies outside the face of the noise factors");

    BipartitionScan scan;
    scan.c = inside2;
    scan.rank_product = 1.0;
    for (int r : ranks) scan.rank_product *= r;

    const PureState zr = make_pure(make_dims(ranks), reduced / std::sqrt(inside2));
    const double min_product = cut_min_product(zr, &scan.cuts, &scan.min_cut, tol);
    scan.lambda_star = 1.0 / (1.0 + scan.rank_product * min_product);
    return scan;
}

BipartitionScan genuine_threshold(const PureState& z, double tol, Index max_dim) {
    std::vector<CMatrix> metrics;
    metrics.reserve(z.dims.n());
    for (int d : z.dims.dims)
        metrics.push_back(CMatrix::Identity(d, d) / static_cast<double>(d));
    return genuine_threshold(z, metrics, tol, max_dim);
}

bool check_genuine(double lambda, const PureState& z, const std::vector<CMatrix>& metrics,
                   double tol, Index max_dim) {
    return lambda > genuine_threshold(z, metrics, tol, max_dim).lambda_star;
}

bool check_genuine(double lambda, const PureState& z, double tol, Index max_dim) {
    return lambda > genuine_threshold(z, tol, max_dim).lambda_star;
}

double family_threshold(Family family, int n, int d) {
    if (n < 3) throw std::invalid_argument("family_threshold: n must be at least 3");
    switch (family) {
        case Family::W:
            if (d != 2) throw std::invalid_argument("family_threshold: W family needs d = 2");
            return 1.0 / (1.0 + std::pow(2.0, n) * std::sqrt(n - 1.0) / n);
        case Family::GHZ:
            if (d < 2) throw std::invalid_argument("family_threshold: GHZ family needs d >= 2");
            return 1.0 / (1.0 + std::pow(static_cast<double>(d), n - 1));
    }
    throw std::invalid_argument("family_threshold: unknown family");
}

std::vector<double> g_of_n(const std::vector<std::pair<int, PureState>>& states, int d) {
    std::vector<double> out;
    out.reserve(states.size());
    for (const auto& [n, z] : states) {
        const double min_product = cut_min_product(z, nullptr, nullptr, kRankTol);
        out.push_back(std::pow(static_cast<double>(d), n) * min_product);
    }
    return out;
}

BipartitionScan slocc_threshold(const PureState& psi, const std::vector<CMatrix>& local_ops,
                                const std::vector<CMatrix>& metrics, double tol,
                                Index max_dim) {
    const int n = static_cast<int>(psi.dims.n());
    if (static_cast<int>(local_ops.size()) != n)
        throw ShapeError("slocc_threshold: one operator per tensor factor");
    CVector w = psi.amplitudes;
    for (int j = 0; j < n; ++j) {
        const CMatrix& g = local_ops[j];
        if (g.rows() != g.cols() || g.rows() != psi.dims.dims[j])
            throw ShapeError("slocc_threshold: operator dimension mismatch");
        if (rank_tol(g, tol) != g.rows())
            throw std::invalid_argument("slocc_threshold: local operator is singular");
        w = apply_local(w, psi.dims.dims, j, g);
    }
    const double norm = w.norm();
    if (norm <= 0.0) throw std::invalid_argument("slocc_threshold: transformed state vanished");
    return genuine_threshold(make_pure(psi.dims, w / norm), metrics, tol, max_dim);
}

}  // namespace sepcone
