#include "ecotour/enumerate.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>

#include "ecotour/errors.hpp"
#include "ecotour/shortest_paths.hpp"

namespace ecotour {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Frontier {
    // unique cost vectors, first witness kept
    std::vector<std::pair<CostVector, std::vector<int>>> items;

    bool dominated_or_equal(const CostVector& c) const {
        for (const auto& [fc, nodes] : items)
            if (dominates(fc, c)) return true;
        return false;
    }

    void insert(const CostVector& c, const std::vector<int>& nodes) {
        if (dominated_or_equal(c)) return;
        items.erase(std::remove_if(items.begin(), items.end(),
                                   [&](const auto& it) { return dominates(c, it.first); }),
                    items.end());
        items.emplace_back(c, nodes);
    }
};

struct Dfs {
    const LineGraph& graph;
    const TimeWindowTable& windows;
    int cap;
    EnumerateOptions opts;

    std::vector<int> terminals;          // sorted
    std::vector<int> terminal_index;     // node -> index into terminals or -1
    std::vector<int> counts;
    std::vector<int> path;
    Frontier frontier;

    std::vector<double> turns_to_depot;
    std::vector<double> energy_to_depot;
    std::vector<std::vector<double>> time_to_terminal; // [terminal idx][node]

    int depot = -1;
    std::uint32_t full_mask = 0;

    explicit Dfs(const LineGraph& g, const TimeWindowTable& tw, int c, const EnumerateOptions& o)
        : graph(g), windows(tw), cap(c), opts(o) {
        depot = graph.depot();
        terminals = graph.terminals();
        terminal_index.assign(graph.node_count(), -1);
        for (std::size_t i = 0; i < terminals.size(); ++i)
            terminal_index[terminals[i]] = static_cast<int>(i);
        full_mask = (terminals.size() >= 32) ? 0 : ((1u << terminals.size()) - 1u);
        counts.assign(graph.node_count(), 0);

        turns_to_depot = distances_to(graph, depot, EdgeWeight::Turns);
        energy_to_depot = distances_to(graph, depot, EdgeWeight::Energy);
        if (opts.time_prune) {
            time_to_terminal.resize(terminals.size());
            for (std::size_t i = 0; i < terminals.size(); ++i)
                time_to_terminal[i] = distances_to(graph, terminals[i], EdgeWeight::Time);
        }
    }

    bool prune(int node, int turns, double energy, double clock, std::uint32_t served) const {
        if (energy_to_depot[node] == kInf) return true; // cannot close the cycle
        if (opts.dominance_prune) {
            CostVector bound{turns + static_cast<int>(turns_to_depot[node] + 0.5),
                             energy + energy_to_depot[node]};
            if (frontier.dominated_or_equal(bound)) return true;
        }
        if (opts.time_prune) {
            for (std::size_t i = 0; i < terminals.size(); ++i) {
                if (served & (1u << i)) continue;
                const TimeWindow w = windows.at_or_open(terminals[i]);
                if (clock + time_to_terminal[i][node] > w.end) return true;
            }
        }
        return false;
    }

    void record(int turns, double energy) { frontier.insert(CostVector{turns, energy}, path); }

    void walk(int node, int turns, double energy, double clock, std::uint32_t served) {
        if (prune(node, turns, energy, clock, served)) return;
        for (int arc : graph.out_arcs(node)) {
            const LineEdge& e = graph.edge(arc);
            int v = e.head;
            if (counts[v] >= cap) continue;
            int nturns = turns + e.turns;
            double nenergy = energy + e.energy;
            double nclock = clock + e.time;
            std::uint32_t nserved = served;
            int ti = terminal_index[v];
            if (ti >= 0 && !(served & (1u << ti))) {
                const TimeWindow w = windows.at_or_open(v);
                if (nclock > w.end) continue; // first arrival misses the deadline
                if (nclock < w.start) nclock = w.start;
                nserved |= (1u << ti);
            }
            ++counts[v];
            path.push_back(v);
            if (v == depot && nserved == full_mask) record(nturns, nenergy);
            // keep extending even through the depot: longer feasible cycles
            // can dominate on the other criterion
            walk(v, nturns, nenergy, nclock, nserved);
            path.pop_back();
            --counts[v];
        }
    }

    std::vector<Tour> run() {
        counts[depot] = 1; // the starting visit counts toward the cap
        path.push_back(depot);
        std::uint32_t served = 0;
        double clock = 0;
        int ti = terminal_index[depot];
        const TimeWindow w = windows.at_or_open(depot);
        if (ti >= 0) {
            served |= (1u << ti);
            if (clock < w.start) clock = w.start;
        }
        walk(depot, 0, 0.0, clock, served);

        std::vector<Tour> out;
        out.reserve(frontier.items.size());
        for (const auto& [c, nodes] : frontier.items) out.push_back(evaluate_tour(graph, windows, nodes));
        std::sort(out.begin(), out.end(),
                  [](const Tour& a, const Tour& b) { return cost_less(a.cost, b.cost); });
        return out;
    }
};

} // namespace

std::vector<Tour> brute_force_pareto(const LineGraph& graph, const TimeWindowTable& windows,
                                     int cap, const EnumerateOptions& opts) {
    if (graph.node_count() > opts.max_nodes)
        throw InstanceTooLargeError("exhaustive enumeration limited to " +
                                    std::to_string(opts.max_nodes) + " nodes, got " +
                                    std::to_string(graph.node_count()));
    if (static_cast<int>(graph.terminals().size()) > opts.max_terminals)
        throw InstanceTooLargeError("exhaustive enumeration limited to " +
                                    std::to_string(opts.max_terminals) + " terminals, got " +
                                    std::to_string(graph.terminals().size()));
    if (cap < 1) throw SchemaError("visit cap must be at least 1");
    Dfs dfs(graph, windows, cap, opts);
    return dfs.run();
}

} // namespace ecotour
