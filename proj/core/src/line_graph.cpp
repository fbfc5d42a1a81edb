#include "ecotour/line_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ecotour/errors.hpp"

namespace ecotour {

void TimeWindowTable::set(int node, TimeWindow w) {
    if (w.end < w.start) throw SchemaError("time window ends before it starts");
    auto it = std::lower_bound(entries_.begin(), entries_.end(), node,
                               [](const auto& e, int n) { return e.first < n; });
    if (it != entries_.end() && it->first == node)
        it->second = w;
    else
        entries_.insert(it, {node, w});
}

const TimeWindow* TimeWindowTable::find(int node) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), node,
                               [](const auto& e, int n) { return e.first < n; });
    if (it != entries_.end() && it->first == node) return &it->second;
    return nullptr;
}

TimeWindow TimeWindowTable::at_or_open(int node) const {
    if (const TimeWindow* w = find(node)) return *w;
    return {0.0, std::numeric_limits<double>::infinity()};
}

LineGraph::LineGraph(int node_count, std::vector<LineEdge> edges, std::vector<int> terminals,
                     int depot)
    : node_count_(node_count), edges_(std::move(edges)), terminals_(std::move(terminals)),
      depot_(depot) {
    if (node_count_ <= 0) throw SchemaError("line graph needs at least one node");
    std::sort(terminals_.begin(), terminals_.end());
    terminals_.erase(std::unique(terminals_.begin(), terminals_.end()), terminals_.end());
    terminal_mask_.assign(node_count_, 0);
    for (int t : terminals_) {
        if (t < 0 || t >= node_count_) throw SchemaError("terminal out of range");
        terminal_mask_[t] = 1;
    }
    if (depot_ < 0 || depot_ >= node_count_) throw SchemaError("depot out of range");
    if (!terminal_mask_[depot_]) throw SchemaError("depot must be a terminal");

    out_.assign(node_count_, {});
    in_.assign(node_count_, {});
    for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
        const auto& e = edges_[i];
        if (e.tail < 0 || e.tail >= node_count_ || e.head < 0 || e.head >= node_count_)
            throw SchemaError("line edge endpoint out of range");
        if (e.turns != 0 && e.turns != 1) throw SchemaError("turn flag must be 0 or 1");
        if (e.time < 0.0) throw SchemaError("negative travel time");
        out_[e.tail].push_back(i);
        in_[e.head].push_back(i);
    }
    for (auto& v : out_)
        std::sort(v.begin(), v.end(),
                  [this](int a, int b) { return edges_[a].head < edges_[b].head; });
    for (auto& v : in_)
        std::sort(v.begin(), v.end(),
                  [this](int a, int b) { return edges_[a].tail < edges_[b].tail; });
    for (const auto& v : out_)
        for (std::size_t k = 1; k < v.size(); ++k)
            if (edges_[v[k]].head == edges_[v[k - 1]].head)
                throw SchemaError("parallel arcs between the same node pair are not supported");

    if (!edges_.empty()) {
        double se = 0, st = 0;
        for (const auto& e : edges_) { se += e.energy; st += e.turns; }
        const double n = static_cast<double>(edges_.size());
        stats_.mean_energy = se / n;
        stats_.mean_turns = st / n;
        double ve = 0, vt = 0;
        for (const auto& e : edges_) {
            ve += (e.energy - stats_.mean_energy) * (e.energy - stats_.mean_energy);
            vt += (e.turns - stats_.mean_turns) * (e.turns - stats_.mean_turns);
        }
        stats_.stddev_energy = std::sqrt(ve / n);
        stats_.stddev_turns = std::sqrt(vt / n);
    }
}

bool LineGraph::is_terminal(int node) const {
    return node >= 0 && node < node_count_ && terminal_mask_[node];
}

std::optional<int> LineGraph::find_arc(int u, int v) const {
    if (u < 0 || u >= node_count_) return std::nullopt;
    const auto& arcs = out_[u];
    auto it = std::lower_bound(arcs.begin(), arcs.end(), v,
                               [this](int a, int head) { return edges_[a].head < head; });
    if (it != arcs.end() && edges_[*it].head == v) return *it;
    return std::nullopt;
}

void LineGraph::check_no_negative_energy_cycle() const {
    // Bellman-Ford from a virtual source at distance 0 to every node
    std::vector<double> dist(node_count_, 0.0);
    for (int round = 0; round < node_count_; ++round) {
        bool changed = false;
        for (const auto& e : edges_) {
            if (dist[e.tail] + e.energy < dist[e.head] - 1e-12) {
                dist[e.head] = dist[e.tail] + e.energy;
                changed = true;
            }
        }
        if (!changed) return;
    }
    throw NegativeCycleError("line graph admits a negative-energy cycle");
}

LineGraph build_line_graph(const RoadNetwork& net, double turn_threshold_deg) {
    net.validate();
    const int m = static_cast<int>(net.edges.size());

    // arcs incident to each road node, for the conflict test
    std::vector<int> in_deg(net.nodes.size(), 0), out_deg(net.nodes.size(), 0);
    for (const auto& e : net.edges) {
        ++out_deg[e.tail];
        ++in_deg[e.head];
    }

    std::vector<std::vector<int>> edges_from(net.nodes.size());
    for (int i = 0; i < m; ++i) edges_from[net.edges[i].tail].push_back(i);

    std::vector<LineEdge> arcs;
    for (int u = 0; u < m; ++u) {
        const auto& eu = net.edges[u];
        for (int v : edges_from[eu.head]) {
            const auto& ev = net.edges[v];
            LineEdge a;
            a.tail = u;
            a.head = v;
            a.energy = 0.5 * (eu.energy_kwh + ev.energy_kwh);
            a.time = 0.5 * (eu.time_s + ev.time_s);
            const bool left =
                classify_turn(eu.bearing_deg, ev.bearing_deg, turn_threshold_deg) == Turn::Left;
            const int junction = eu.head;
            a.turns =
                left && is_conflicting_left(in_deg[junction], out_deg[junction]) ? 1 : 0;
            arcs.push_back(a);
        }
    }

    LineGraph g(m, std::move(arcs), net.terminal_edges, net.depot_edge);
    g.check_no_negative_energy_cycle();
    return g;
}

} // namespace ecotour
