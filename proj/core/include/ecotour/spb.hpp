#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "ecotour/line_graph.hpp"

namespace ecotour {

// Benchmark instance assembled from a travel-time file. The file carries a
// node count, a full travel-time matrix, and one "start end" window line per
// node; turn flags and energies are drawn here, so (file, fraction, seed)
// pins the instance exactly.
struct SpbInstance {
    LineGraph graph;
    TimeWindowTable windows;
    int suggested_cap = 1; // node-visit cap that keeps exact models tractable
};

// fraction picks ceil(fraction * n) terminals, the depot (node 0) always
// among them; turn flags are fair coin flips, energies uniform in [0, 10)
SpbInstance load_spb(std::istream& in, double fraction, std::uint64_t seed);
SpbInstance load_spb_file(const std::string& path, double fraction, std::uint64_t seed);

} // namespace ecotour
