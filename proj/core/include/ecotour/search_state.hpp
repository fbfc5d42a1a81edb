#pragma once

#include <vector>

#include "ecotour/pareto.hpp"
#include "ecotour/rng.hpp"
#include "ecotour/tour.hpp"

namespace ecotour {

struct Theta {
    int top_pairs = 8;          // segment slots enriched per permutation rebuild
    double skew_width = 0.1;    // host-selection band width, in pooled stddevs
    int pool_cap = 100;         // size cap for the feasible and penalized pools
    int perm_rounds = 5;        // fixed-permutation repetitions per iteration
    int quad_rounds = 15;       // four-cut repetitions per iteration
    int repair_rounds = 10;     // window-repair repetitions per iteration
};

// Working sets of the search: Z holds the non-dominated feasible tours, Y the
// feasible also-rans (rejected candidates and displaced members), X the
// window-violating tours ordered by how close they are to feasibility.
struct SearchState {
    ParetoArchive z;
    std::vector<Tour> y;
    std::vector<Tour> x;
    Theta theta;
};

enum class SetOutcome { Frontier, Feasible, Penalized, Dropped };

// Routes one candidate: feasible tours face the archive (rejects and
// displaced members fall into Y), violating tours enter X while they beat
// the pool's worst penalty or the pool has room. Y is ordered by a randomly
// chosen objective, X by penalty plus waiting; both are deduplicated by node
// sequence and truncated to the pool cap.
SetOutcome update_sets(SearchState& state, Tour candidate, Rng& rng);

// Gaussian kernel densities over cost vectors, z-score normalized per axis,
// bandwidth n^(-1/6); degenerate axes fall back to unit scale
std::vector<double> kde_densities(const std::vector<CostVector>& points);

// sparse-regions-first pick: probability proportional to (1 - relative density)
int kde_weighted_pick(const std::vector<CostVector>& points, Rng& rng);

} // namespace ecotour
