#pragma once

#include <vector>

#include "ecotour/branch_and_bound.hpp"

namespace ecotour {

struct ScalarizeOptions {
    ExactOptions exact;        // limits applied per scalarized solve
    double value_tol = 1e-7;   // relative tolerance for objective-value ties
    int max_depth = 64;        // recursion guard
};

struct ScalarizationOutcome {
    std::vector<Tour> frontier; // supported tours, sorted by turn count
    bool proven = true;         // every solve completed within its limits
    bool feasible = true;       // at least one tour serves all windows
    long long nodes = 0;
    int solves = 0;
};

// Weighted-sum dichotomy over the two objectives. Each weight is solved
// lexicographically (optimal value first, then fewest turns among optima) so
// every reported point is an extreme, non-dominated vertex of the value
// tradeoff. Recursion between neighboring points stops when the scalarized
// optimum no longer improves on the connecting segment, which recovers every
// extreme vertex of the lower-left hull of the attainable cost vectors.
ScalarizationOutcome supported_frontier(const LineGraph& graph, const TimeWindowTable& windows,
                                        int cap, const ScalarizeOptions& opts = {});

} // namespace ecotour
