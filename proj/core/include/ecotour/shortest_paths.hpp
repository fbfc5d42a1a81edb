#pragma once

#include <functional>
#include <vector>

#include "ecotour/line_graph.hpp"

namespace ecotour {

enum class EdgeWeight { Turns, Energy, Time, Scalarized };

// per-edge scalar weight under the chosen objective
std::vector<double> edge_weights(const LineGraph& graph, EdgeWeight kind, double alpha = 0.0,
                                 double beta = 0.0);

struct PairwisePaths {
    std::vector<int> sources;                      // terminal ids, sorted
    std::vector<std::vector<double>> dist;         // [i][j] over sources
    std::vector<std::vector<std::vector<int>>> path; // realizing node sequences
};

// All-terminal-pairs shortest paths by Johnson's algorithm: Bellman-Ford
// potentials (energy may be negative) then one Dijkstra per terminal.
// Throws NegativeCycleError / UnreachableError.
PairwisePaths johnson_shortest_paths(const LineGraph& graph, EdgeWeight kind,
                                     double alpha = 0.0, double beta = 0.0);

struct TimedPath {
    std::vector<int> nodes;
    double duration = 0.0;
    bool reachable = false;
};

// Minimum-duration path; ties broken by fewer edges, then lexicographically
// smaller node sequence (via smallest-id predecessor), so results are stable.
TimedPath shortest_time_path(const LineGraph& graph, int src, int dst);

// earliest arrival clock from the depot to every node (travel times only)
std::vector<double> earliest_arrival_from(const LineGraph& graph, int src);

// single-criterion distances to one target from every node (reverse Dijkstra
// with Johnson potentials when weights can be negative)
std::vector<double> distances_to(const LineGraph& graph, int target, EdgeWeight kind);

} // namespace ecotour
