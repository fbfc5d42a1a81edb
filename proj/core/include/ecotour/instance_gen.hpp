#pragma once

#include <cstdint>

#include "ecotour/line_graph.hpp"

namespace ecotour {

struct GenOptions {
    int nodes = 10;
    int edges = -1;             // total arc count target, >= nodes; -1 means 2*nodes
    int terminals = 4;          // includes the depot (node 0)
    double tw_tightness = 1.0;  // scales every deadline's span above its start
    double negative_frac = 0.35; // share of arcs with negative energy
    std::uint64_t seed = 0;
};

struct SyntheticInstance {
    LineGraph graph;
    TimeWindowTable windows;
};

// Random strongly connected instance: a directed cycle through all nodes
// plus random extra arcs up to the edge target. Energies are small integers,
// a fixed share negative; draws with a negative-energy cycle are rejected
// and redrawn. Terminals carry deadline windows [0, e] wide enough that the
// backbone cycle meets them at tightness 1, so a feasible tour exists; the
// tightness factor then scales each deadline's span (draws are unaffected,
// so two runs differing only in tightness share everything else).
SyntheticInstance gen_instance(const GenOptions& opts = {});

} // namespace ecotour
