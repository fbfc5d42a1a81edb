#pragma once

#include <array>
#include <vector>

#include "ecotour/path_bank.hpp"
#include "ecotour/search_state.hpp"

namespace ecotour {

// Shared hooks for the neighborhood operators. Mean per-edge costs over the
// current frontier are refreshed by the driver each iteration and feed the
// three-cut segment filter; the graph-wide edge statistics feed the
// permutation operator's host skew.
struct OperatorContext {
    const LineGraph& graph;
    const TimeWindowTable& windows;
    PathBank& bank;
    Rng& rng;
    double frontier_mean_turns = 0.0;  // per edge, over the frontier set
    double frontier_mean_energy = 0.0;
    bool filter_any_attribute = false; // segment filter passes on either attribute, not both
};

// Each operator returns candidate tours for the caller to route through
// update_sets; an empty result means the operator could not act this round.

// three-cut improvement: host picked from the frontier by inverse-density,
// two random cut pairs plus a random bank path, third cut enumerated, best
// candidate by staircase-area gain
std::vector<Tour> op_three_cut(OperatorContext& ctx, const SearchState& state);

// three-cut aimed at window violations: host random from the penalized pool,
// first cut anchored on a late terminal, every candidate emitted
std::vector<Tour> op_three_cut_window(OperatorContext& ctx, const SearchState& state);

// destroy-and-reinsert repair of window violations
std::vector<Tour> op_window_repair(OperatorContext& ctx, const SearchState& state);

// keep the terminal order, re-pick connecting paths for sampled segments
std::vector<Tour> op_fixed_permutation(OperatorContext& ctx, const SearchState& state,
                                       bool from_feasible_pool);

// four-cut double bridge with bank reconnections
std::vector<Tour> op_quad_cut(OperatorContext& ctx, const SearchState& state);

// fresh uniform terminal permutation joined by random bank paths
std::vector<Tour> op_random_permutation(OperatorContext& ctx, const SearchState& state);

// ---- repair sub-steps, exposed for targeted verification ----

// terminals whose every visit misses the window (positive penalty)
std::vector<int> violated_terminals(const Tour& tour);

// lateness sum over the terminals a walk actually visits (the walk may skip
// terminals); clock semantics match the tour evaluator
double partial_penalty(const LineGraph& graph, const TimeWindowTable& windows,
                       const std::vector<int>& nodes);

// drop every terminal occurrence in `removed` (the depot is never dropped)
// along with the incident subpaths, bridge the surviving fragments with
// quickest paths; empty result when a bridge is unreachable
std::vector<int> rebridge_without(const LineGraph& graph, const std::vector<int>& host,
                                  const std::vector<int>& removed);

// missing terminals that can be inserted alone between 1-based positions
// i and j (replacing that segment with quickest paths) at zero lateness
std::vector<int> insertable_terminals(const LineGraph& graph, const TimeWindowTable& windows,
                                      const std::vector<int>& q, int i, int j,
                                      const std::vector<int>& missing);

// expanded nearest-first walk from `start` through all of `targets`
std::vector<int> greedy_chain(const LineGraph& graph, int start, std::vector<int> targets);

// splice `chain` into every slot of r whose left end carries `anchor_node`
std::vector<Tour> repair_insertions(const LineGraph& graph, const TimeWindowTable& windows,
                                    const std::vector<int>& r, const std::vector<int>& chain,
                                    int anchor_node);

// four-cut reassembly for given pair indices (sorted, pairwise two apart);
// exposed so the reconnection pattern can be verified directly
std::vector<int> quad_reassemble(const LineGraph& graph, PathBank& bank,
                                 const std::vector<int>& host,
                                 const std::array<int, 4>& pair_index, Rng& rng);

} // namespace ecotour
