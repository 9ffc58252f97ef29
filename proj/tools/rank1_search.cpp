// Random search for product noise that pushes the boundary part of the
// decomposition toward rank 1. Whether every state admits such noise is an
// open question; this tool only reports what the search finds.

#include <iostream>
#include <vector>

#include "CLI11.hpp"

#include "sepcone/cone.hpp"
#include "sepcone/error.hpp"
#include "sepcone/random.hpp"

using namespace sepcone;

int main(int argc, char** argv) {
    CLI::App app{"search product noise minimizing the boundary rank"};
    std::vector<int> dims{2, 2};
    std::uint64_t seed = 0;
    int states = 5;
    int trials = 200;
    app.add_option("--dims", dims, "two factor dimensions")->expected(2);
    app.add_option("--seed", seed, "random seed");
    app.add_option("--states", states, "number of random target states");
    app.add_option("--trials", trials, "noise draws per state");
    CLI11_PARSE(app, argc, argv);

    const int n1 = dims[0], n2 = dims[1];
    const DimSpec layout = make_dims({n1, n2});
    const Index total = layout.total();
    Rng rng(seed);
    int rank_one_hits = 0;

    for (int k = 0; k < states; ++k) {
        const MixedState rho = make_mixed(layout, rng.random_psd(total));
        Index best_rank = total + 1;
        double best_lambda = 0.0;
        int usable = 0;
        for (int t = 0; t < trials; ++t) {
            const CMatrix m1 = rng.random_psd(n1);
            const CMatrix m2 = rng.random_psd(n2);
            try {
                const ConeDecomposition dec =
                    decompose(rho, make_mixed(layout, kron(m1, m2)));
                const Index r = static_cast<Index>(spectral_ensemble(dec.E).size());
                ++usable;
                if (r < best_rank) {
                    best_rank = r;
                    best_lambda = dec.lambda;
                }
            } catch (const std::exception&) {
                // noise outside the state's face or a degenerate ray; skip
            }
        }
        if (usable == 0) {
            std::cout << "state " << k << ": no usable noise draw\n";
            continue;
        }
        std::cout << "state " << k << ": best boundary rank " << best_rank << " (lambda "
                  << best_lambda << ", " << usable << "/" << trials << " usable draws)\n";
        if (best_rank == 1) ++rank_one_hits;
    }
    std::cout << "rank-1 boundaries found for " << rank_one_hits << "/" << states
              << " states\n";
    return 0;
}
