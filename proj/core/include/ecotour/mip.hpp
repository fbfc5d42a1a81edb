#pragma once

#include <string>
#include <vector>

#include "ecotour/line_graph.hpp"
#include "ecotour/simplex.hpp"

namespace ecotour {

// Node-copy integer programming model of the tour problem. Every node gets
// K = min(#terminals, revisit cap) copies; binaries x select copy-to-copy
// arc traversals, a single aggregated commodity y (sourced at the depot,
// one unit absorbed per terminal) rules out detached terminal circuits,
// continuous t carries clock values through big-M propagation, and binary
// flags w pick, per terminal, at least one visited copy whose departure
// time must sit inside the window. The start time at the depot is a free
// variable: the model chooses it.
//
// Rows are laid out with the purely combinatorial part first (continuity,
// commodity, capacity coupling, window-flag linking) so a solver can take
// the prefix as a relaxation; time propagation and window rows follow.

struct MipVar {
    std::string name;
    double lower = 0.0, upper = 1.0;
    char type = 'B'; // 'B' binary, 'C' continuous
    double obj = 0.0;
};

struct MipRow {
    std::string name;
    std::vector<std::pair<int, double>> terms;
    char sense = '<';
    double rhs = 0.0;
};

struct MipModel {
    std::string name;
    std::vector<MipVar> vars;
    std::vector<MipRow> rows;
    int num_structural_rows = 0;

    int copies = 0;
    int num_nodes = 0;
    int num_arcs = 0;
    int x_base = 0, w_base = 0, y_base = 0, t_base = 0;
    int num_w = 0;          // total window flags (#terminals * copies)
    std::vector<int> w_off; // per node: base of its w block, -1 for non-terminals
    bool has_commodity = false;

    int x_id(int arc, int i, int j) const { return x_base + (arc * copies + i) * copies + j; }
    int w_id(int node, int i) const { return w_off[node] + i; } // terminals only
    int y_id(int arc, int i, int j) const { return y_base + (arc * copies + i) * copies + j; }
    int t_id(int node, int i) const { return t_base + node * copies + i; }
    int x_count() const { return num_arcs * copies * copies; }
};

struct BigM {
    double latest = 0.0;             // global upper bound on any clock value
    std::vector<double> earliest;    // per node, quickest arrival from the depot
    std::vector<double> arc;         // per arc, time-propagation constant
    std::vector<double> tw_upper;    // per node, window-deadline relief (terminals)
    std::vector<double> tw_lower;    // per node, window-opening relief (terminals)
};

BigM compute_big_m(const LineGraph& graph, const TimeWindowTable& windows, int copies);

// order_rows controls the copy-ordering (symmetry-breaking) inequalities;
// they are valid cuts, so dropping them changes solve effort, not the optimum
MipModel build_model(const LineGraph& graph, const TimeWindowTable& windows, int cap, double alpha,
                     double beta, bool order_rows = true);

// LP relaxation of the model; structural_only keeps just the combinatorial
// row prefix (time and window rows dropped)
LpProblem relaxation(const MipModel& model, bool structural_only);

} // namespace ecotour
