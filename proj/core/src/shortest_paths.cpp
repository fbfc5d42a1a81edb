#include "ecotour/shortest_paths.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "ecotour/errors.hpp"

namespace ecotour {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::vector<double> edge_weights(const LineGraph& graph, EdgeWeight kind, double alpha,
                                 double beta) {
    std::vector<double> w(graph.edges().size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        const LineEdge& e = graph.edges()[i];
        switch (kind) {
        case EdgeWeight::Turns: w[i] = e.turns; break;
        case EdgeWeight::Energy: w[i] = e.energy; break;
        case EdgeWeight::Time: w[i] = e.time; break;
        case EdgeWeight::Scalarized: w[i] = alpha * e.turns + beta * e.energy; break;
        }
    }
    return w;
}

namespace {

// Bellman-Ford potentials from a virtual zero-distance source
std::vector<double> potentials(const LineGraph& graph, const std::vector<double>& w) {
    std::vector<double> pot(graph.node_count(), 0.0);
    for (int round = 0; round <= graph.node_count(); ++round) {
        bool changed = false;
        for (std::size_t i = 0; i < w.size(); ++i) {
            const LineEdge& e = graph.edges()[i];
            if (pot[e.tail] + w[i] < pot[e.head] - 1e-12) {
                if (round == graph.node_count())
                    throw NegativeCycleError("negative cycle under the chosen edge weight");
                pot[e.head] = pot[e.tail] + w[i];
                changed = true;
            }
        }
        if (!changed) break;
    }
    return pot;
}

struct DijkstraResult {
    std::vector<double> dist;
    std::vector<int> parent_edge;
};

DijkstraResult dijkstra(const LineGraph& graph, const std::vector<double>& w, int src) {
    DijkstraResult r;
    r.dist.assign(graph.node_count(), kInf);
    r.parent_edge.assign(graph.node_count(), -1);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    r.dist[src] = 0.0;
    pq.push({0.0, src});
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > r.dist[u]) continue;
        for (int ei : graph.out_arcs(u)) {
            const LineEdge& e = graph.edges()[ei];
            const double nd = d + w[ei];
            if (nd < r.dist[e.head] - 1e-15) {
                r.dist[e.head] = nd;
                r.parent_edge[e.head] = ei;
                pq.push({nd, e.head});
            }
        }
    }
    return r;
}

std::vector<int> unwind(const LineGraph& graph, const DijkstraResult& r, int src, int dst) {
    std::vector<int> path;
    int at = dst;
    path.push_back(at);
    while (at != src) {
        const int ei = r.parent_edge[at];
        if (ei < 0) return {};
        at = graph.edges()[ei].tail;
        path.push_back(at);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

} // namespace

PairwisePaths johnson_shortest_paths(const LineGraph& graph, EdgeWeight kind, double alpha,
                                     double beta) {
    const std::vector<double> w = edge_weights(graph, kind, alpha, beta);
    std::vector<double> pot(graph.node_count(), 0.0);
    if (kind == EdgeWeight::Energy || kind == EdgeWeight::Scalarized)
        pot = potentials(graph, w);

    std::vector<double> rw(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        const LineEdge& e = graph.edges()[i];
        rw[i] = w[i] + pot[e.tail] - pot[e.head];
        if (rw[i] < 0.0) rw[i] = 0.0; // guard tiny negatives from roundoff
    }

    PairwisePaths out;
    out.sources = graph.terminals();
    const std::size_t n = out.sources.size();
    out.dist.assign(n, std::vector<double>(n, kInf));
    out.path.assign(n, std::vector<std::vector<int>>(n));

    for (std::size_t i = 0; i < n; ++i) {
        const int s = out.sources[i];
        const DijkstraResult r = dijkstra(graph, rw, s);
        for (std::size_t j = 0; j < n; ++j) {
            const int t = out.sources[j];
            if (i == j) {
                out.dist[i][j] = 0.0;
                out.path[i][j] = {s};
                continue;
            }
            if (r.dist[t] == kInf)
                throw UnreachableError("terminal pair unreachable");
            out.dist[i][j] = r.dist[t] - pot[s] + pot[t];
            out.path[i][j] = unwind(graph, r, s, t);
        }
    }
    return out;
}

TimedPath shortest_time_path(const LineGraph& graph, int src, int dst) {
    // key: (duration, edge count); equal keys keep the smaller predecessor id
    struct Key {
        double d;
        int hops;
        bool operator>(const Key& o) const {
            if (d != o.d) return d > o.d;
            return hops > o.hops;
        }
    };
    std::vector<Key> best(graph.node_count(), {kInf, 0});
    std::vector<int> parent(graph.node_count(), -1);
    using Item = std::pair<Key, int>;
    auto cmp = [](const Item& a, const Item& b) { return a.first > b.first; };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
    best[src] = {0.0, 0};
    pq.push({{0.0, 0}, src});
    while (!pq.empty()) {
        auto [k, u] = pq.top();
        pq.pop();
        if (k.d != best[u].d || k.hops != best[u].hops) continue;
        for (int ei : graph.out_arcs(u)) {
            const LineEdge& e = graph.edges()[ei];
            Key nk{k.d + e.time, k.hops + 1};
            const Key& cur = best[e.head];
            const bool better = nk.d < cur.d - 1e-15 ||
                                (nk.d <= cur.d + 1e-15 && nk.hops < cur.hops) ||
                                (nk.d <= cur.d + 1e-15 && nk.hops == cur.hops &&
                                 parent[e.head] >= 0 && u < graph.edges()[parent[e.head]].tail);
            if (better) {
                best[e.head] = nk;
                parent[e.head] = ei;
                pq.push({nk, e.head});
            }
        }
    }

    TimedPath tp;
    if (src == dst) {
        tp.nodes = {src};
        tp.duration = 0.0;
        tp.reachable = true;
        return tp;
    }
    if (best[dst].d == kInf) return tp;
    tp.reachable = true;
    tp.duration = best[dst].d;
    int at = dst;
    tp.nodes.push_back(at);
    while (at != src) {
        const int ei = parent[at];
        at = graph.edges()[ei].tail;
        tp.nodes.push_back(at);
    }
    std::reverse(tp.nodes.begin(), tp.nodes.end());
    return tp;
}

std::vector<double> earliest_arrival_from(const LineGraph& graph, int src) {
    const std::vector<double> w = edge_weights(graph, EdgeWeight::Time);
    return dijkstra(graph, w, src).dist;
}

std::vector<double> distances_to(const LineGraph& graph, int target, EdgeWeight kind) {
    // run on the reverse graph; energy may be negative, so use Bellman-Ford
    const std::vector<double> w = edge_weights(graph, kind);
    std::vector<double> dist(graph.node_count(), kInf);
    dist[target] = 0.0;
    for (int round = 0; round < graph.node_count(); ++round) {
        bool changed = false;
        for (std::size_t i = 0; i < w.size(); ++i) {
            const LineEdge& e = graph.edges()[i];
            if (dist[e.head] == kInf) continue;
            if (dist[e.head] + w[i] < dist[e.tail] - 1e-12) {
                dist[e.tail] = dist[e.head] + w[i];
                changed = true;
            }
        }
        if (!changed) break;
    }
    return dist;
}

} // namespace ecotour
