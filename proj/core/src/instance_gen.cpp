#include "ecotour/instance_gen.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ecotour/errors.hpp"
#include "ecotour/rng.hpp"

namespace ecotour {

SyntheticInstance gen_instance(const GenOptions& opts) {
    if (opts.nodes < 3) throw SchemaError("need at least 3 nodes");
    if (opts.terminals < 2 || opts.terminals > opts.nodes)
        throw SchemaError("terminal count out of range");
    const int target_edges = opts.edges < 0 ? 2 * opts.nodes : opts.edges;
    if (target_edges < opts.nodes) throw SchemaError("edge target below node count");
    if (opts.tw_tightness <= 0.0) throw SchemaError("tightness must be positive");

    Rng rng(opts.seed);
    const int n = opts.nodes;

    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::set<std::pair<int, int>> used;
        std::vector<LineEdge> edges;
        auto add_arc = [&](int u, int v) {
            LineEdge e;
            e.tail = u;
            e.head = v;
            e.turns = rng.bernoulli(0.5) ? 1 : 0;
            const int mag = static_cast<int>(rng.uniform_int(1, 9));
            e.energy = rng.bernoulli(opts.negative_frac) ? -mag : mag;
            e.time = static_cast<double>(rng.uniform_int(1, 10));
            edges.push_back(e);
            used.insert({u, v});
        };

        for (int v = 0; v < n; ++v) add_arc(v, (v + 1) % n); // backbone cycle
        // fill toward the edge target; colliding draws are skipped, so dense
        // targets stay approximate rather than looping forever
        for (int tries = 0; static_cast<int>(edges.size()) < target_edges && tries < 20 * target_edges;
             ++tries) {
            const int u = rng.index(static_cast<std::size_t>(n));
            const int v = rng.index(static_cast<std::size_t>(n));
            if (u == v || used.count({u, v})) continue;
            add_arc(u, v);
        }

        std::vector<int> pool;
        for (int v = 1; v < n; ++v) pool.push_back(v);
        rng.shuffle(pool);
        std::vector<int> terminals{0};
        for (int k = 0; k + 1 < opts.terminals; ++k) terminals.push_back(pool[k]);
        std::sort(terminals.begin(), terminals.end());

        // base deadlines before any rejection checks, so the rng stream stays
        // aligned across redraws of the graph part
        std::vector<double> stretch(n, 1.0);
        for (int v = 0; v < n; ++v) stretch[v] = rng.uniform(1.0, 2.0);

        SyntheticInstance out{LineGraph(n, std::move(edges), terminals, 0), {}};
        try {
            out.graph.check_no_negative_energy_cycle();
        } catch (const NegativeCycleError&) {
            continue; // redraw everything
        }

        // arrival clock along the backbone; deadlines stretched so the
        // backbone tour is feasible at tightness 1
        double arrival = 0.0;
        std::vector<double> clock(n, 0.0);
        for (int v = 0; v < n; ++v) {
            const int arc = *out.graph.find_arc(v, (v + 1) % n);
            arrival += out.graph.edges()[arc].time;
            clock[(v + 1) % n] = arrival;
        }
        for (int t : terminals) {
            const double at = t == 0 ? arrival : clock[t];
            const double base = std::ceil(std::max(1.0, at) * stretch[t]);
            out.windows.set(t, {0.0, opts.tw_tightness * base});
        }
        return out;
    }
    throw GenerationFailedError("could not draw an instance without negative cycles");
}

} // namespace ecotour
