#pragma once

#include <vector>

#include "ecotour/rng.hpp"
#include "ecotour/tour.hpp"

namespace ecotour {

struct SeedOptions {
    double budget_s = 30.0;   // wall-clock cap; <= 0 disables the clock entirely
    long long max_solves = -1; // cap on scalarized solves, for reproducible runs
    int sweep_lo = -8;        // weight-ratio sweep over powers of two, 2^lo .. 2^hi
    int sweep_hi = 8;
    int bisection_depth = 6;  // geometric refinement between differing neighbors
};

// Builds a spread of starting tours by solving scalarized single-objective
// reductions: alpha*turns + beta*energy with (alpha, beta) taken from a
// geometric sweep of the weight ratio, refined by bisection wherever two
// neighboring weights produce different cost vectors. Tours are deduplicated
// by node sequence; time-window violations are allowed (the search sorts
// them out).
std::vector<Tour> initial_tours(const LineGraph& graph, const TimeWindowTable& windows, Rng& rng,
                                const SeedOptions& opts = {});

} // namespace ecotour
