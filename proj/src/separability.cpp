#include "sepcone/separability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

namespace sepcone {

const char* to_string(Status s) {
    switch (s) {
        case Status::Separable: return "separable";
        case Status::Entangled: return "entangled";
        case Status::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

CMatrix ProductEnsemble::assemble() const {
    if (terms.empty()) return CMatrix::Zero(0, 0);
    const Index d1 = terms[0].a.size();
    const Index d2 = terms[0].b.size();
    CMatrix out = CMatrix::Zero(d1 * d2, d1 * d2);
    for (const ProductTerm& t : terms)
        out += t.weight * kron(CMatrix(t.a * t.a.adjoint()), CMatrix(t.b * t.b.adjoint()));
    return out;
}

// ============================================================================
// Noise frame: the congruence that turns M1 (x) M2 into the identity on its
// face. All thresholds are computed on the transformed state and mapped back.
// ============================================================================

namespace {

struct Frame {
    CMatrix F1, F2;          // thin factors, M_i = F_i F_i^H
    CMatrix F1bar, F2bar;    // invertible extensions
    CMatrix F1bar_inv, F2bar_inv;
    Index r1 = 0, r2 = 0;
};

Frame make_frame(const CMatrix& M1, const CMatrix& M2, double tol) {
    if (std::abs(M1.trace().real() * M2.trace().real() - 1.0) > 1e-8)
        throw MetricError("noise factors must satisfy tr(M1) tr(M2) = 1");
    Frame f;
    f.F1 = psd_factor(M1, tol);
    f.F2 = psd_factor(M2, tol);
    f.r1 = f.F1.cols();
    f.r2 = f.F2.cols();
    if (f.r1 == 0 || f.r2 == 0) throw MetricError("noise factors must be nonzero");
    f.F1bar = orthogonal_complementation(f.F1, tol);
    f.F2bar = orthogonal_complementation(f.F2, tol);
    f.F1bar_inv = f.F1bar.inverse();
    f.F2bar_inv = f.F2bar.inverse();
    return f;
}

// Coefficient block of (Fbar_1^{-1} (x) Fbar_2^{-1}) z. The kron convention
// makes that product act on coefficient matrices as A C(z) B^T; a state in
// the face has support only in the leading r1 x r2 block.
CMatrix transformed_coefficients(const Frame& f, const PureState& z) {
    const CMatrix w = f.F1bar_inv * coefficient_matrix(z) * f.F2bar_inv.transpose();
    const CMatrix block = w.topLeftCorner(f.r1, f.r2);
    const double total2 = w.squaredNorm();
    const double inside2 = block.squaredNorm();
    if (std::sqrt(std::max(total2 - inside2, 0.0)) > 1e-8 * std::sqrt(total2))
        throw FaceError("state lies outside the face of the noise factors");
    return block;
}

void require_state_matches(const PureState& z, const CMatrix& M1, const CMatrix& M2) {
    if (z.dims.n() != 2) throw ShapeError("threshold: state must be bipartite");
    if (z.dims.dims[0] != M1.rows() || z.dims.dims[1] != M2.rows())
        throw ShapeError("threshold: noise factor dimensions do not match the state");
}

double remap_threshold(double t, double c, double rank_product) {
    return t * rank_product / (c * (1.0 - t) + t * rank_product);
}

}  // namespace

ThresholdDetail lambda_star_detail(const PureState& z, const CMatrix& M1, const CMatrix& M2,
                                   double tol) {
    require_state_matches(z, M1, M2);
    const Frame f = make_frame(M1, M2, tol);
    const CMatrix w = transformed_coefficients(f, z);

    ThresholdDetail d;
    d.c = w.squaredNorm();
    d.r1 = f.r1;
    d.r2 = f.r2;
    const GsvdResult s = svd(w, tol);
    const double norm = s.sigmas.norm();
    d.sigma0 = s.rank > 0 ? s.sigmas(0) / norm : 0.0;
    d.sigma1 = s.rank > 1 ? s.sigmas(1) / norm : 0.0;

    const double rr = static_cast<double>(f.r1) * static_cast<double>(f.r2);
    d.literal = 1.0 / (1.0 + rr * d.sigma0 * d.sigma1);
    d.lambda_star = remap_threshold(d.literal, d.c, rr);
    return d;
}

double lambda_star_pure(const PureState& z, const CMatrix& M1, const CMatrix& M2, double tol) {
    return lambda_star_detail(z, M1, M2, tol).lambda_star;
}

double lambda_bar(const std::vector<std::pair<double, PureState>>& ensemble,
                  const CMatrix& M1, const CMatrix& M2, double tol) {
    if (ensemble.empty()) throw std::invalid_argument("lambda_bar: empty ensemble");
    double wsum = 0.0, inv = 0.0;
    for (const auto& [e_k, vec] : ensemble) {
        if (e_k <= 0.0) throw std::invalid_argument("lambda_bar: weights must be positive");
        wsum += e_k;
        inv += e_k / lambda_star_pure(vec, M1, M2, tol);
    }
    if (std::abs(wsum - 1.0) > 1e-8)
        throw std::invalid_argument("lambda_bar: ensemble weights must sum to 1");
    return 1.0 / inv;
}

double ppt_boundary(const MixedState& C, const MixedState& E, double lambda_tol,
                    double psd_tol) {
    if (C.dims.dims != E.dims.dims)
        throw ShapeError("ppt_boundary: states live on different layouts");
    const CMatrix pt_c = partial_transpose(C, 1);
    const CMatrix pt_e = partial_transpose(E, 1);
    auto min_eig = [&](double lam) {
        const CMatrix m = (1.0 - lam) * pt_c + lam * pt_e;
        Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()),
                                                  Eigen::EigenvaluesOnly);
        return es.eigenvalues().minCoeff();
    };
    if (min_eig(1.0) >= -psd_tol) return 1.0;
    if (min_eig(0.0) < -psd_tol) return 0.0;
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > lambda_tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        (min_eig(mid) >= -psd_tol ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

Verdict check(const MixedState& rho, std::optional<std::pair<CMatrix, CMatrix>> noise,
              double tol, double psd_tol) {
    Verdict v;
    v.lambda = std::numeric_limits<double>::quiet_NaN();
    try {
        if (rho.dims.n() != 2) throw ShapeError("check: state must be bipartite");
        const auto [ppt_ok, min_eig] = is_ppt(rho, psd_tol);
        (void)min_eig;
        v.ppt = ppt_ok;

        const FaceInfo face = face_of(rho, tol);
        if (!face.product) {
            if (!ppt_ok) {
                v.status = Status::Entangled;
                v.criterion = "partial transpose negativity";
            } else {
                v.status = Status::Inconclusive;
                v.criterion = "no product face detected";
            }
            return v;
        }

        CMatrix M1, M2;
        if (noise) {
            M1 = noise->first;
            M2 = noise->second;
        } else {
            const CMatrix& b1 = face.product->first;
            const CMatrix& b2 = face.product->second;
            M1 = b1 * b1.adjoint() / static_cast<double>(b1.cols());
            M2 = b2 * b2.adjoint() / static_cast<double>(b2.cols());
        }
        const MixedState C = make_mixed(rho.dims, kron(M1, M2));

        if ((rho.matrix - C.matrix).norm() < 1e-12) {
            v.status = Status::Separable;
            v.lambda = 0.0;
            v.criterion = "state equals the product noise";
            return v;
        }

        const ConeDecomposition dec = decompose(rho, C, tol);
        v.lambda = dec.lambda;
        const auto ensemble = spectral_ensemble(dec.E, tol);

        if (ensemble.size() == 1) {
            const double ls = lambda_star_pure(ensemble[0].second, M1, M2, tol);
            v.lambda_star = ls;
            v.lambda_bar = ls;
            v.status = dec.lambda <= ls ? Status::Separable : Status::Entangled;
            v.criterion = "exact boundary-vector threshold";
        } else {
            const double lb = lambda_bar(ensemble, M1, M2, tol);
            v.lambda_bar = lb;
            if (dec.lambda <= lb) {
                v.status = Status::Separable;
                v.criterion = "harmonic ensemble bound";
            } else if (!ppt_ok) {
                v.status = Status::Entangled;
                v.criterion = "partial transpose negativity";
            } else {
                v.status = Status::Inconclusive;
                v.criterion = "above the harmonic bound with positive partial transpose";
            }
        }
    } catch (const std::exception& e) {
        v.status = Status::Inconclusive;
        v.criterion = std::string("pipeline failure: ") + e.what();
    }
    return v;
}

// ============================================================================
// Constructive ensembles
// ============================================================================

std::vector<long long> phase_exponents(int r) {
    if (r < 1) throw std::invalid_argument("phase_exponents: r must be >= 1");
    std::vector<long long> e{0};
    std::set<long long> pair_sums{0};  // e_i + e_j over i <= j

    // A candidate is admissible when every new pairwise sum is unseen; that
    // keeps e_i - e_j - e_p + e_q nonzero away from the trivial patterns.
    auto try_add = [&](long long cand) {
        for (long long x : e)
            if (x == cand) return false;
        std::vector<long long> fresh;
        fresh.reserve(e.size() + 1);
        for (long long x : e) fresh.push_back(cand + x);
        fresh.push_back(2 * cand);
        for (long long s : fresh)
            if (pair_sums.count(s)) return false;
        pair_sums.insert(fresh.begin(), fresh.end());
        e.push_back(cand);
        return true;
    };

    for (int m = 1; m < r; ++m) {
        const long long sign = (m % 2 == 1) ? -1 : 1;
        if (try_add(sign * (1LL << (m - 1)))) continue;
        for (long long k = 1;; ++k)
            if (try_add(sign * k)) break;
    }
    return e;
}

RootOrder root_order(int r) {
    if (r < 1) throw std::invalid_argument("root_order: r must be >= 1");
    const std::vector<long long> e = phase_exponents(r);
    RootOrder out;
    out.r = r;
    out.table.resize(static_cast<std::size_t>(r) * r * r * r);
    long long mx = 0;
    std::size_t idx = 0;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int p = 0; p < r; ++p)
                for (int q = 0; q < r; ++q) {
                    const long long m = e[i] - e[j] - e[p] + e[q];
                    out.table[idx++] = m;
                    mx = std::max(mx, std::llabs(m));
                }
    out.n0 = mx + 1;
    return out;
}

std::vector<RootsTerm> roots_ensemble(const SchmidtSpectrum& sigma) {
    const int r = static_cast<int>(sigma.rank);
    const std::vector<long long> e = phase_exponents(r);
    const long long n0 = root_order(r).n0;
    const double big_s = sigma.sigmas.sum();
    const double weight = big_s * big_s / static_cast<double>(n0);

    std::vector<RootsTerm> terms;
    terms.reserve(static_cast<std::size_t>(n0));
    for (long long k = 0; k < n0; ++k) {
        CVector u(r);
        for (int i = 0; i < r; ++i) {
            const long long em = ((e[i] * k) % n0 + n0) % n0;
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(em) /
                                 static_cast<double>(n0);
            u(i) = std::polar(std::sqrt(sigma.sigmas(i) / big_s), angle);
        }
        terms.push_back(RootsTerm{weight, u, u.conjugate()});
    }
    return terms;
}

ProductEnsemble werner_separable_ensemble(const SchmidtSpectrum& sigma, int N1, int N2) {
    const int r = static_cast<int>(sigma.rank);
    if (r < 2)
        throw std::invalid_argument("werner_separable_ensemble: need at least two Schmidt terms");
    if (r > std::min(N1, N2))
        throw std::invalid_argument("werner_separable_ensemble: rank exceeds a factor dimension");

    const double s0s1 = sigma.sigma0() * sigma.sigma1();
    const double lstar = 1.0 / (1.0 + static_cast<double>(N1) * N2 * s0s1);
    auto basis = [](int n, int i) {
        CVector v = CVector::Zero(n);
        v(i) = 1.0;
        return v;
    };
    auto embed = [](const CVector& u, int n) {
        CVector v = CVector::Zero(n);
        v.head(u.size()) = u;
        return v;
    };

    ProductEnsemble out;
    // Identity blocks outside the Schmidt support.
    for (int i = r; i < N1; ++i)
        for (int k = 0; k < N2; ++k)
            out.terms.push_back({lstar * s0s1, basis(N1, i), basis(N2, k)});
    for (int i = 0; i < r; ++i)
        for (int k = r; k < N2; ++k)
            out.terms.push_back({lstar * s0s1, basis(N1, i), basis(N2, k)});
    // Diagonal support terms and the slack left over after the phase average.
    for (int i = 0; i < r; ++i)
        out.terms.push_back({lstar * s0s1, basis(N1, i), basis(N2, i)});
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < r; ++k) {
            if (i == k) continue;
            const double w = lstar * (s0s1 - sigma.sigmas(i) * sigma.sigmas(k));
            if (w > 1e-15) out.terms.push_back({w, basis(N1, i), basis(N2, k)});
        }
    // Phase-averaged terms carrying the |ii><jj| coherences.
    for (const RootsTerm& rt : roots_ensemble(sigma))
        out.terms.push_back({lstar * rt.weight, embed(rt.u, N1), embed(rt.u_conj, N2)});
    return out;
}

ProductEnsemble certify_separable(double lambda, const CMatrix& M1, const CMatrix& M2,
                                  const PureState& z, double tol) {
    if (lambda < 0.0 || lambda > 1.0)
        throw std::invalid_argument("certify_separable: mixing weight must be in [0, 1]");
    require_state_matches(z, M1, M2);
    const Frame f = make_frame(M1, M2, tol);
    const CMatrix w = transformed_coefficients(f, z);
    const double c = w.squaredNorm();
    const double rr = static_cast<double>(f.r1) * static_cast<double>(f.r2);
    const double s = (1.0 - lambda) * rr + lambda * c;
    const double lam_frame = lambda * c / s;

    Eigen::JacobiSVD<CMatrix> sv(w, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RVector& raw = sv.singularValues();
    const double norm = raw.norm();
    Index rank = 0;
    while (rank < raw.size() && raw(rank) > tol * raw(0)) ++rank;
    const CMatrix U = sv.matrixU();
    const CMatrix Vc = sv.matrixV().conjugate();

    auto basis = [](Index n, Index i) {
        CVector v = CVector::Zero(n);
        v(i) = 1.0;
        return v;
    };

    // Terms in the transformed frame, where the noise is I / (r1 r2).
    std::vector<ProductTerm> frame_terms;
    if (rank <= 1) {
        // Product state in the frame: the certificate is the mixture itself.
        for (Index i = 0; i < f.r1; ++i)
            for (Index k = 0; k < f.r2; ++k)
                frame_terms.push_back({(1.0 - lam_frame) / rr, basis(f.r1, i), basis(f.r2, k)});
        if (lam_frame > 1e-18) frame_terms.push_back({lam_frame, U.col(0), Vc.col(0)});
    } else {
        RVector sig = raw.head(rank) / norm;
        const SchmidtSpectrum spec{sig, rank};
        const double t = 1.0 / (1.0 + rr * spec.sigma0() * spec.sigma1());
        const double lstar = remap_threshold(t, c, rr);
        if (lambda > lstar * (1.0 + 1e-12))
            throw std::domain_error(
                "certify_separable: mixing weight exceeds the separability threshold");

        // Threshold assembly diluted down to lambda, then rotated from the
        // canonical Schmidt basis into the state's own frame.
        const double scale = lam_frame / t;
        const ProductEnsemble base =
            werner_separable_ensemble(spec, static_cast<int>(f.r1), static_cast<int>(f.r2));
        for (const ProductTerm& tm : base.terms)
            frame_terms.push_back({tm.weight * scale, U * tm.a, Vc * tm.b});
        const double dilute = 1.0 - scale;
        if (dilute > 1e-15)
            for (Index i = 0; i < f.r1; ++i)
                for (Index k = 0; k < f.r2; ++k)
                    frame_terms.push_back({dilute / rr, basis(f.r1, i), basis(f.r2, k)});
    }

    // Transport back through the thin noise factors; vector norms fold into
    // the weights and the overall trace factor restores tr(rho) = 1.
    ProductEnsemble out;
    for (const ProductTerm& tm : frame_terms) {
        CVector a = f.F1 * tm.a;
        CVector b = f.F2 * tm.b;
        const double na = a.norm(), nb = b.norm();
        const double weight = s * tm.weight * na * na * nb * nb;
        if (weight <= 1e-18) continue;
        out.terms.push_back({weight, a / na, b / nb});
    }
    return out;
}

}  // namespace sepcone
