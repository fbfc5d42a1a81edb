#pragma once

#include <vector>

#include "ecotour/cost.hpp"
#include "ecotour/line_graph.hpp"

namespace ecotour {

struct BankPath {
    std::vector<int> nodes;
    CostVector cost;
    double duration = 0.0;
};

struct BiobjectiveResult {
    std::vector<BankPath> paths; // mutually non-dominated in (turns, energy)
    bool complete = true;        // false when the budget expired mid-search
};

// Pareto path set between two nodes under (turns, energy). Label-correcting:
// energy can be negative, so settled labels may be improved and a label-
// setting scheme would be wrong. Duration rides along but never enters
// dominance. Equal-cost labels keep the earlier discovery.
// budget_s <= 0 means unlimited.
BiobjectiveResult biobjective_paths(const LineGraph& graph, int src, int dst,
                                    double budget_s = 30.0);

} // namespace ecotour
