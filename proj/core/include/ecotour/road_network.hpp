#pragma once

#include <string>
#include <vector>

#include "ecotour/energy.hpp"

namespace ecotour {

struct RoadNode {
    long long id = 0;
    double lat = 0.0;
    double lon = 0.0;
    double elevation_m = 0.0;
};

struct RoadEdge {
    int tail = 0;             // index into nodes
    int head = 0;
    double length_m = 0.0;
    double speed_mps = 0.0;
    double bearing_deg = 0.0;
    double gradient_rad = 0.0; // derived from node elevations
    double energy_kwh = 0.0;   // derived via edge_energy
    double time_s = 0.0;       // length / speed
};

// Directed road graph with service edges marked. The depot edge is always a
// service edge.
struct RoadNetwork {
    std::vector<RoadNode> nodes;
    std::vector<RoadEdge> edges;
    std::vector<int> terminal_edges; // indices into edges
    int depot_edge = 0;

    void validate() const; // throws SchemaError on broken invariants
};

// Fills the derived per-edge fields (gradient, time, energy).
void derive_edge_costs(RoadNetwork& net, const EnergyParams& params);

} // namespace ecotour
