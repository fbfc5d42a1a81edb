#pragma once

#include <vector>

#include "ecotour/line_graph.hpp"
#include "ecotour/rng.hpp"

namespace ecotour {

// Complete directed matrix over the terminals under a scalarized objective,
// shifted to be nonnegative so classical TSP heuristics apply. For a cyclic
// order visiting all n terminals,
//   scalarized(expanded tour) == order_cost(order) - n * shift.
struct TspReduction {
    std::vector<int> terminals;                       // sorted node ids
    int depot_index = 0;                              // position of the depot in `terminals`
    std::vector<std::vector<double>> cost;            // shifted pairwise costs
    std::vector<std::vector<std::vector<int>>> path;  // realizing node sequences
    double shift = 0.0;
};

TspReduction reduce_to_tsp(const LineGraph& graph, double alpha, double beta);

// cyclic tour cost of `order` (indices into the matrix), closing back to front
double order_cost(const std::vector<std::vector<double>>& cost, const std::vector<int>& order);

// exact dynamic program, n <= 12
std::vector<int> held_karp_order(const std::vector<std::vector<double>>& cost, int start);

// exact for small n, otherwise nearest neighbor refined by segment
// relocation and orientation-preserving segment exchange
std::vector<int> tsp_order(const std::vector<std::vector<double>>& cost, int start, Rng& rng);

// concatenate the realizing paths along `order` into one depot-anchored
// node sequence (order is rotated so it starts at the depot index)
std::vector<int> expand_permutation(const TspReduction& red, const std::vector<int>& order);

} // namespace ecotour
