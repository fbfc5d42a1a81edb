#pragma once

#include <vector>

#include "ecotour/mip.hpp"
#include "ecotour/tour.hpp"

namespace ecotour {

struct ExactOptions {
    double time_limit_s = 60.0;
    long long node_limit = -1; // <0 means unlimited
    int lp_iters = 200000;
    bool order_rows = true; // copy-ordering cuts in the relaxation
};

struct ExactResult {
    bool found = false;   // an optimal tour was produced
    bool proven = false;  // the search ran to completion within its limits
    Tour best;
    double objective = 0.0;
    long long nodes = 0;
    long long lp_iterations = 0;
    int cuts_added = 0;
};

// Exact minimization of alpha*turns + beta*energy over depot-anchored tours
// that serve every terminal inside its window, with per-node visits bounded
// by min(#terminals, cap). Branch and bound over the LP relaxation of the
// copy model (every tour the evaluator accepts has a feasible model
// assignment, so the relaxation bound is valid): integral candidates are
// decoded into walks and judged by the tour evaluator; walks that miss a
// window are excluded with no-good rows, and detached circulations with
// cycle-elimination rows. Cut rows accumulate in *cut_pool (optional), which
// may be shared across solves on the same graph and cap since the rows are
// weight-independent.
//
// extra_rows are appended to the relaxation verbatim (indices must follow the
// model's variable layout); used for lexicographic refinement.
ExactResult solve_scalarized_exact(const LineGraph& graph, const TimeWindowTable& windows, int cap,
                                   double alpha, double beta, const ExactOptions& opts = {},
                                   std::vector<LpRowSpec>* cut_pool = nullptr,
                                   const std::vector<LpRowSpec>& extra_rows = {});

} // namespace ecotour
