#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ecotour/tour.hpp"

namespace ecotour {

// non-dominated subset, sorted by cost
std::vector<CostVector> pareto_filter(std::vector<CostVector> points);

// Extreme vertices of the lower-left convex hull of the points (after
// non-dominated filtering): exactly the cost vectors some positive weighted
// sum of the two objectives makes uniquely optimal. Collinear interior
// points are dropped.
std::vector<CostVector> extreme_supported(const std::vector<CostVector>& points);

// whether c lies on the lower-left hull boundary (a vertex or between two
// neighboring vertices), within an absolute energy tolerance
bool on_lower_hull(const CostVector& c, const std::vector<CostVector>& points,
                   double tol = 1e-9);

struct FrontierComparison {
    double coverage = 0.0;          // share of reference points matched exactly
    double dominated_fraction = 0.0; // share of test points strictly dominated by the reference
    double area_ratio = 0.0;        // staircase area, test / reference, shared corner
};

FrontierComparison compare_frontiers(const std::vector<CostVector>& reference,
                                     const std::vector<CostVector>& test);

// frontier CSV: turns,energy_kwh,duration_s,penalty_s,node_sequence
void write_frontier_csv(std::ostream& os, const std::vector<Tour>& tours);

// standalone SVG scatter/staircase plot of one or more labeled frontiers
void write_frontier_svg(std::ostream& os,
                        const std::vector<std::pair<std::string, std::vector<CostVector>>>& series);

struct BenchRow {
    std::string instance;
    double fraction = 0.0; // terminal-selection scenario
    int terminals = 0;
    std::size_t frontier_size = 0;
    int best_turns = 0;
    double best_energy = 0.0;
    std::string seconds = "-"; // blank in clock-free runs so reports rerun identically
    std::string note = "-";    // exact-coverage or failure diagnostics
};

// fixed-width text table over benchmark rows
std::string render_bench_table(const std::vector<BenchRow>& rows);

} // namespace ecotour
