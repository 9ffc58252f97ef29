#pragma once

#include <utility>
#include <vector>

#include "sepcone/linalg.hpp"
#include "sepcone/states.hpp"

namespace sepcone {

// One bipartition of the factors and the leading Schmidt data across it.
// The subset always contains factor 0 so each unordered cut appears once.
struct CutReport {
    std::vector<int> subset;
    double sigma0 = 0.0;
    double sigma1 = 0.0;
    double product = 0.0;
};

struct BipartitionScan {
    std::vector<CutReport> cuts;
    std::vector<int> min_cut;
    double lambda_star = 1.0;
    double c = 0.0;             // squared norm of the frame-transformed state
    double rank_product = 0.0;  // product of the noise factor ranks
};

inline constexpr Index kMaxTotalDim = 4096;

// Threshold below which (1-lambda) (x)M_i + lambda |z><z| is certified not
// genuinely multipartite entangled. Requires n >= 3 factors; ties in the
// minimizing cut go to the lexicographically smallest subset.
BipartitionScan genuine_threshold(const PureState& z, const std::vector<CMatrix>& metrics,
                                  double tol = kRankTol, Index max_dim = kMaxTotalDim);
BipartitionScan genuine_threshold(const PureState& z, double tol = kRankTol,
                                  Index max_dim = kMaxTotalDim);

// True iff lambda strictly exceeds the scan threshold.
bool check_genuine(double lambda, const PureState& z, const std::vector<CMatrix>& metrics,
                   double tol = kRankTol, Index max_dim = kMaxTotalDim);
bool check_genuine(double lambda, const PureState& z, double tol = kRankTol,
                   Index max_dim = kMaxTotalDim);

enum class Family { W, GHZ };

// Closed-form thresholds for the two named families under white noise.
// W requires local dimension 2; GHZ accepts any d >= 2. n >= 3 throughout.
double family_threshold(Family family, int n, int d = 2);

// Scaling diagnostic d^n * min-over-cuts sigma0 sigma1, one value per input
// state, with plain Schmidt coefficients (white-noise frame).
std::vector<double> g_of_n(const std::vector<std::pair<int, PureState>>& states, int d);

// Apply invertible local operators, renormalize, and rescan the result.
BipartitionScan slocc_threshold(const PureState& psi, const std::vector<CMatrix>& local_ops,
                                const std::vector<CMatrix>& metrics, double tol = kRankTol,
                                Index max_dim = kMaxTotalDim);

}  // namespace sepcone
