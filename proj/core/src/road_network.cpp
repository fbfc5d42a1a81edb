#include "ecotour/road_network.hpp"

#include <algorithm>
#include <cmath>

#include "ecotour/errors.hpp"

namespace ecotour {

void RoadNetwork::validate() const {
    const int n = static_cast<int>(nodes.size());
    const int m = static_cast<int>(edges.size());
    for (const auto& e : edges) {
        if (e.tail < 0 || e.tail >= n || e.head < 0 || e.head >= n)
            throw SchemaError("road edge endpoint out of range");
        if (e.length_m <= 0.0) throw SchemaError("road edge length must be positive");
        if (e.speed_mps <= 0.0) throw SchemaError("road edge speed must be positive");
    }
    if (terminal_edges.empty()) throw SchemaError("no terminal edges");
    for (int t : terminal_edges)
        if (t < 0 || t >= m) throw SchemaError("terminal edge index out of range");
    if (depot_edge < 0 || depot_edge >= m) throw SchemaError("depot edge index out of range");
    if (std::find(terminal_edges.begin(), terminal_edges.end(), depot_edge) ==
        terminal_edges.end())
        throw SchemaError("depot edge must be a terminal edge");
}

void derive_edge_costs(RoadNetwork& net, const EnergyParams& params) {
    for (auto& e : net.edges) {
        const double dz = net.nodes[e.head].elevation_m - net.nodes[e.tail].elevation_m;
        e.gradient_rad = std::atan2(dz, e.length_m);
        e.time_s = e.length_m / e.speed_mps;
        e.energy_kwh = edge_energy(e.length_m, e.speed_mps, e.gradient_rad, params);
    }
}

} // namespace ecotour
