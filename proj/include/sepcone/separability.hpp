#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sepcone/cone.hpp"

namespace sepcone {

enum class Status { Separable, Entangled, Inconclusive };

const char* to_string(Status s);

// Outcome of the separability pipeline. lambda is the mixing weight of the
// boundary part in the cone decomposition (NaN when no decomposition was
// possible). lambda_star is the exact threshold (present only when the
// boundary ensemble is a single vector, where the criterion is two-sided);
// lambda_bar is the harmonic sufficient bound. criterion names the rule that
// produced the verdict.
struct Verdict {
    Status status = Status::Inconclusive;
    double lambda = 0.0;
    std::optional<double> lambda_star;
    std::optional<double> lambda_bar;
    bool ppt = false;
    std::string criterion;
};

// Convex product decomposition: sum of weight * |a><a| (x) |b><b| terms with
// unit-norm single-factor vectors and positive weights.
struct ProductTerm {
    double weight = 0.0;
    CVector a;
    CVector b;
};

struct ProductEnsemble {
    std::vector<ProductTerm> terms;

    // Assembled density matrix sum_k w_k |a_k><a_k| (x) |b_k><b_k|.
    CMatrix assemble() const;
};

// Everything the threshold computation knows, for verbose reporting.
// lambda_star is the frame-corrected threshold; literal is the same formula
// without the trace remap (1 / (1 + r1 r2 sigma0 sigma1)), exact only for
// identity-proportional noise factors where c = r1 r2 and the two coincide.
struct ThresholdDetail {
    double lambda_star = 0.0;
    double literal = 0.0;
    double c = 0.0;
    Index r1 = 0;
    Index r2 = 0;
    double sigma0 = 0.0;
    double sigma1 = 0.0;
};

// Largest lambda such that (1 - lambda) M1 (x) M2 + lambda |z><z| is
// separable, for PSD noise factors with tr(M1) tr(M2) = 1 and z supported on
// range(M1) (x) range(M2). Computed in the frame where the noise becomes the
// identity on the face: with complemented thin factors Fbar_i, transform
// w = (Fbar_1^{-1} (x) Fbar_2^{-1}) z, take c = |w|^2 and the normalized
// Schmidt coefficients of w, form t = 1 / (1 + r1 r2 sigma0 sigma1) and remap
// the mixing weight back: lambda_star = t r1 r2 / (c (1 - t) + t r1 r2).
// Reduces to 1 / (1 + N1 N2 sigma0 sigma1) for M_i = I / N_i. Product z
// (sigma1 = 0) yields 1. Throws FaceError when z leaves the face, MetricError
// on a bad trace normalization.
double lambda_star_pure(const PureState& z, const CMatrix& M1, const CMatrix& M2,
                        double tol = kRankTol);
ThresholdDetail lambda_star_detail(const PureState& z, const CMatrix& M1, const CMatrix& M2,
                                   double tol = kRankTol);

// Harmonic combination 1 / (sum_k e_k / lambda_star(e_k)) over a unit-weight
// ensemble: below this value the mixture with noise M1 (x) M2 is certified
// separable. Equals lambda_star of the single vector when K = 1.
double lambda_bar(const std::vector<std::pair<double, PureState>>& ensemble,
                  const CMatrix& M1, const CMatrix& M2, double tol = kRankTol);

// Largest lambda in [0, 1] with (1 - lambda) C + lambda E positive under
// partial transpose, by bisection to 1e-10 (the minimal PT eigenvalue is
// concave in lambda, so the PPT set is an interval from 0). Returns 1 when
// the whole segment is PPT.
double ppt_boundary(const MixedState& C, const MixedState& E, double lambda_tol = 1e-10,
                    double psd_tol = 1e-12);

// Full certification pipeline for a bipartite mixed state. When `noise` is
// supplied it is used as the interior product point (M1, M2) of the ray;
// otherwise the maximally mixed product state of the detected face is used.
// Single-vector boundary ensembles get the two-sided threshold; larger ones
// get the harmonic bound on the separable side and the partial-transpose test
// on the entangled side. Internal failures degrade to Inconclusive with the
// reason in `criterion`.
Verdict check(const MixedState& rho,
              std::optional<std::pair<CMatrix, CMatrix>> noise = std::nullopt,
              double tol = kRankTol, double psd_tol = kPsdTol);

// ----- constructive separable ensembles -----

// Signed phase exponents e_0..e_{r-1} defining the root-of-unity sequence
// omega_m = omega^{e_m}. e_0 = 0; each later entry is (-1)^m 2^{m-1} when
// that keeps all pairwise sums e_i + e_j (i <= j) distinct, otherwise the
// smallest-magnitude integer of the same sign that does. The distinct-sums
// property is exactly what makes e_i - e_j - e_p + e_q vanish only on the
// trivial index patterns, which the phase-averaging identity below needs.
std::vector<long long> phase_exponents(int r);

// Differences m_{ijpq} = e_i - e_j - e_p + e_q over all index quadruples,
// flattened with i slowest, and the root order n0 = max |m| + 1 (the table is
// sign-symmetric, so the signed and absolute maxima agree).
struct RootOrder {
    long long n0 = 1;
    int r = 0;
    std::vector<long long> table;

    long long m(int i, int j, int p, int q) const {
        return table[((static_cast<std::size_t>(i) * r + j) * r + p) * r + q];
    }
};

RootOrder root_order(int r);

// One phase-ensemble term: weight * |u><u| (x) |u*><u*| with unit-norm u.
struct RootsTerm {
    double weight = 0.0;
    CVector u;
    CVector u_conj;
};

// The n0-term phase average sum_k (S^2 / n0) |u_k><u_k| (x) |u_k*><u_k*| with
// u_k = S^{-1/2} sum_i omega^{e_i k} sqrt(sigma_i) |i>, S = sum_i sigma_i.
// Its value is sum_{i,p} sigma_i sigma_p |ii...><...| diagonal blocks plus the
// sigma_i sigma_j |ij><ij| coherences; see werner_separable_ensemble.
std::vector<RootsTerm> roots_ensemble(const SchmidtSpectrum& sigma);

// Explicit product ensemble summing to (1 - l*) I / (N1 N2) + l* |s><s| with
// |s> = sum_i sigma_i |ii> and l* = 1 / (1 + N1 N2 sigma0 sigma1): identity
// blocks outside the Schmidt support, diagonal slack terms (nonnegative since
// sigma0 sigma1 is the largest distinct-index pair product), and the phase
// ensemble. Requires 2 <= rank <= min(N1, N2).
ProductEnsemble werner_separable_ensemble(const SchmidtSpectrum& sigma, int N1, int N2);

// Product ensemble for rho = (1 - lambda) M1 (x) M2 + lambda |z><z| at any
// lambda <= lambda_star(z; M1, M2): the threshold ensemble is diluted with
// the computational product ensemble of the identity, rotated into the
// state's Schmidt frame, and transported through the noise factors. Throws
// std::domain_error above the threshold where no such certificate exists.
ProductEnsemble certify_separable(double lambda, const CMatrix& M1, const CMatrix& M2,
                                  const PureState& z, double tol = kRankTol);

}  // namespace sepcone
