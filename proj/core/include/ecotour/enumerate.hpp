#pragma once

#include <vector>

#include "ecotour/tour.hpp"

namespace ecotour {

struct EnumerateOptions {
    int max_nodes = 14;
    int max_terminals = 5;
    bool dominance_prune = true; // admissible completion-bound pruning
    bool time_prune = true;      // unserved-deadline reachability pruning
};

// Exhaustive depot-anchored cycle enumeration with per-node visit counts
// bounded by `cap`. Returns the TW-feasible Pareto frontier: one witness tour
// per non-dominated cost vector, sorted by cost. Guards instance size with
// InstanceTooLargeError.
//
// Pruning uses per-node single-criterion distances to the depot as an
// optimistic completion (sound: turns and energy both lower-bounded because
// covering more terminals only adds cost and no negative-energy cycle
// exists); a bound dominated by an archived point cannot yield a new
// frontier entry.
std::vector<Tour> brute_force_pareto(const LineGraph& graph, const TimeWindowTable& windows,
                                     int cap, const EnumerateOptions& opts = {});

} // namespace ecotour
