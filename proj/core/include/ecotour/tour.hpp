#pragma once

#include <vector>

#include "ecotour/cost.hpp"
#include "ecotour/line_graph.hpp"

namespace ecotour {

struct TerminalVisit {
    int node = 0;
    double first_arrival = 0.0; // clock at first visit, before any waiting there
    double penalty = 0.0;       // min over visits of lateness past the window end
};

// Depot-anchored closed walk with cached evaluation. Node revisits are
// allowed; every terminal must appear.
struct Tour {
    std::vector<int> nodes; // front() == back() == depot
    CostVector cost;
    double penalty = 0.0;  // sum of per-terminal penalties
    double wait = 0.0;     // waiting before window starts, satisfied terminals only
    double duration = 0.0; // travel plus waiting
    std::vector<TerminalVisit> visits; // sorted by node

    bool tw_feasible() const { return penalty == 0.0; }
    double penalty_at(int node) const;
    int length() const { return static_cast<int>(nodes.size()) - 1; } // edge count

    friend bool operator==(const Tour& a, const Tour& b) { return a.nodes == b.nodes; }
};

// Walks the tour with a forward clock: service happens at the first visit of
// each terminal, and the clock waits there until the window opens. Later
// passes never wait. Throws NotATourError on structural problems (not
// depot-anchored, missing arc, missing terminal).
Tour evaluate_tour(const LineGraph& graph, const TimeWindowTable& windows,
                   std::vector<int> nodes);

// 1-based index pairs (i, j) of consecutive terminal occurrences in the tour
std::vector<std::pair<int, int>> adjacent_terminal_pairs(const LineGraph& graph,
                                                         const std::vector<int>& nodes);

// true when some node is visited more than once (the depot counts from its
// third occurrence: start and final return are the baseline)
bool has_node_revisit(const std::vector<int>& nodes, int depot);

// rotates a closed cycle so it starts and ends at the depot's first occurrence
std::vector<int> rotate_to_depot(const std::vector<int>& cycle, int depot);

} // namespace ecotour
