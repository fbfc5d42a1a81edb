#pragma once

#include <array>
#include <iosfwd>
#include <string>

#include "ecotour/initial_solution.hpp"
#include "ecotour/operators.hpp"
#include "ecotour/path_bank.hpp"
#include "ecotour/search_state.hpp"

namespace ecotour {

struct SearchOptions {
    Theta theta;
    double budget_s = 120.0;   // wall budget; ignored when max_iterations >= 0
    long long max_iterations = -1; // >= 0 switches to the clock-free mode
    double op_cap_s = 300.0;   // cumulative wall cap per operator (wall mode)
    double init_frac = 0.25;   // share of the wall budget spent on seeding
    double bank_budget_s = 30.0; // per-pair path search budget (wall mode)
    bool filter_any_attribute = false; // relaxed three-cut segment filter
    std::uint64_t seed = 0;
    std::ostream* progress = nullptr; // one JSON line per iteration when set
};

struct OperatorStats {
    std::string name;
    long long calls = 0;    // rounds the operator actually ran
    long long emitted = 0;  // candidate tours produced
    long long admitted = 0; // candidates that entered the frontier
};

struct SearchResult {
    std::vector<Tour> frontier; // Z, sorted by cost
    SearchState state;          // final pools
    long long iterations = 0;
    std::array<OperatorStats, 7> ops;
};

// Multi-operator local search over the three pools. Each iteration runs the
// operator schedule (three-cut; permutation rebuilds from the frontier; a
// fresh random permutation; four-cut rounds; the window-directed three-cut;
// window repairs; permutation rebuilds from the feasible pool) and routes
// every candidate through update_sets. With max_iterations >= 0 the run
// never reads a clock, so equal seeds give identical results.
SearchResult local_search(const LineGraph& graph, const TimeWindowTable& windows,
                          const SearchOptions& opts = {});

} // namespace ecotour
