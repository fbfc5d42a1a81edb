#pragma once

#include <string>
#include <utility>

#include "ecotour/line_graph.hpp"

namespace ecotour {

// line graph plus its terminal windows; the unit on disk may be joule or kwh,
// in memory energy is always kWh
struct Instance {
    LineGraph graph;
    TimeWindowTable windows;
    std::string name;
};

// Reads either supported JSON format, keyed by its "format" field:
//   "road-network/1": node/edge lists with bearings and elevations; the line
//     graph is derived (windows come keyed by terminal edge id).
//   "line-graph/1": explicit movement arcs with (turns, energy, time).
Instance load_instance(const std::string& path, const EnergyParams& params = {},
                       double turn_threshold_deg = 45.0);

void save_instance(const Instance& inst, const std::string& path);

} // namespace ecotour
