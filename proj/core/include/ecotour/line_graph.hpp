#pragma once

#include <optional>
#include <vector>

#include "ecotour/cost.hpp"
#include "ecotour/energy.hpp"
#include "ecotour/road_network.hpp"

namespace ecotour {

// turning movement between two road edges
struct LineEdge {
    int tail = 0;
    int head = 0;
    int turns = 0;       // 1 iff conflicting left movement
    double energy = 0.0; // kWh, may be negative
    double time = 0.0;   // seconds
};

struct TimeWindow {
    double start = 0.0;
    double end = 0.0;
};

// windows, indexed by line-graph node; only terminals carry one
class TimeWindowTable {
  public:
    void set(int node, TimeWindow w);
    const TimeWindow* find(int node) const;
    // window of a terminal, [0, +inf) if none was set
    TimeWindow at_or_open(int node) const;
    std::size_t size() const { return entries_.size(); }
    const std::vector<std::pair<int, TimeWindow>>& entries() const { return entries_; }

  private:
    std::vector<std::pair<int, TimeWindow>> entries_; // sorted by node
};

// aggregate attribute statistics over the full edge population
struct EdgeStats {
    double mean_energy = 0.0;
    double mean_turns = 0.0;
    double stddev_energy = 0.0;
    double stddev_turns = 0.0;
};

// Graph whose nodes are road edges and whose arcs are turning movements.
// Also used directly for synthetic instances.
class LineGraph {
  public:
    LineGraph() = default;
    LineGraph(int node_count, std::vector<LineEdge> edges, std::vector<int> terminals,
              int depot);

    int node_count() const { return node_count_; }
    const std::vector<LineEdge>& edges() const { return edges_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const LineEdge& edge(int i) const { return edges_[i]; }
    const std::vector<int>& terminals() const { return terminals_; }
    int depot() const { return depot_; }
    int terminal_count() const { return static_cast<int>(terminals_.size()); }
    bool is_terminal(int node) const;

    // out-arc edge indices of a node
    const std::vector<int>& out_arcs(int node) const { return out_[node]; }
    const std::vector<int>& in_arcs(int node) const { return in_[node]; }
    // edge index of arc (u, v), if present
    std::optional<int> find_arc(int u, int v) const;

    const EdgeStats& edge_stats() const { return stats_; }

    // throws NegativeCycleError if some cycle has negative total energy
    void check_no_negative_energy_cycle() const;

  private:
    int node_count_ = 0;
    std::vector<LineEdge> edges_;
    std::vector<std::vector<int>> out_;
    std::vector<std::vector<int>> in_;
    std::vector<int> terminals_; // sorted, includes depot
    std::vector<char> terminal_mask_;
    int depot_ = 0;
    EdgeStats stats_;
};

// Builds the turning-movement graph of a road network. Line node i is road
// edge i; arcs join consecutive road edges; costs are split half/half across
// the two incident road edges; the turn flag marks conflicting lefts.
LineGraph build_line_graph(const RoadNetwork& net, double turn_threshold_deg = 45.0);

// time windows of the road network's terminals carried to line nodes
// (identity mapping: road edge index = line node)
} // namespace ecotour
