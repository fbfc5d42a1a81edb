#include "ecotour/tour.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "ecotour/errors.hpp"

namespace ecotour {

double Tour::penalty_at(int node) const {
    auto it = std::lower_bound(visits.begin(), visits.end(), node,
                               [](const TerminalVisit& v, int n) { return v.node < n; });
    if (it != visits.end() && it->node == node) return it->penalty;
    return 0.0;
}

Tour evaluate_tour(const LineGraph& graph, const TimeWindowTable& windows,
                   std::vector<int> nodes) {
    if (nodes.size() < 2) throw NotATourError("tour too short");
    if (nodes.front() != graph.depot() || nodes.back() != graph.depot())
        throw NotATourError("tour must start and end at the depot");

    Tour t;
    t.cost = {0, 0.0};
    double clock = 0.0;
    double wait_total = 0.0;

    std::unordered_map<int, double> first_arrival;
    std::unordered_map<int, double> min_penalty;
    first_arrival.reserve(graph.terminals().size() * 2);

    auto visit = [&](int v) {
        if (!graph.is_terminal(v)) return;
        const TimeWindow w = windows.at_or_open(v);
        const double lateness = std::max(0.0, clock - w.end);
        auto [it, inserted] = first_arrival.try_emplace(v, clock);
        if (inserted) {
            min_penalty[v] = lateness;
            if (clock < w.start) clock = w.start; // wait for the window to open
        } else {
            min_penalty[v] = std::min(min_penalty[v], lateness);
        }
    };

    visit(nodes[0]);
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        auto arc = graph.find_arc(nodes[i - 1], nodes[i]);
        if (!arc) throw NotATourError("consecutive tour nodes are not adjacent");
        const LineEdge& e = graph.edges()[*arc];
        t.cost.turns += e.turns;
        t.cost.energy += e.energy;
        clock += e.time;
        visit(nodes[i]);
    }

    for (int term : graph.terminals())
        if (!first_arrival.count(term)) throw NotATourError("tour misses a terminal");

    t.visits.reserve(graph.terminals().size());
    for (int term : graph.terminals()) {
        TerminalVisit tv;
        tv.node = term;
        tv.first_arrival = first_arrival[term];
        tv.penalty = min_penalty[term];
        t.penalty += tv.penalty;
        if (tv.penalty == 0.0) {
            const TimeWindow w = windows.at_or_open(term);
            wait_total += std::max(0.0, w.start - tv.first_arrival);
        }
        t.visits.push_back(tv);
    }

    t.nodes = std::move(nodes);
    t.wait = wait_total;
    t.duration = clock;
    return t;
}

std::vector<std::pair<int, int>> adjacent_terminal_pairs(const LineGraph& graph,
                                                         const std::vector<int>& nodes) {
    std::vector<int> idx;
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
        if (graph.is_terminal(nodes[i])) idx.push_back(i + 1); // 1-based
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t k = 0; k + 1 < idx.size(); ++k) pairs.emplace_back(idx[k], idx[k + 1]);
    return pairs;
}

bool has_node_revisit(const std::vector<int>& nodes, int depot) {
    std::unordered_map<int, int> count;
    for (int v : nodes) ++count[v];
    for (auto [v, n] : count) {
        if (v == depot) {
            if (n >= 3) return true;
        } else if (n >= 2) {
            return true;
        }
    }
    return false;
}

std::vector<int> rotate_to_depot(const std::vector<int>& cycle, int depot) {
    // input is a closed cycle (first == last); output anchored at depot
    if (cycle.size() < 2) throw NotATourError("cycle too short");
    if (cycle.front() != cycle.back()) throw NotATourError("sequence is not closed");
    if (cycle.front() == depot) return cycle;
    const int n = static_cast<int>(cycle.size()) - 1; // distinct positions
    int at = -1;
    for (int i = 0; i < n; ++i)
        if (cycle[i] == depot) { at = i; break; }
    if (at < 0) throw NotATourError("cycle does not pass the depot");
    std::vector<int> out;
    out.reserve(cycle.size());
    for (int i = 0; i < n; ++i) out.push_back(cycle[(at + i) % n]);
    out.push_back(depot);
    return out;
}

} // namespace ecotour
