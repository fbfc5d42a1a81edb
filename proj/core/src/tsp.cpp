#include "ecotour/tsp.hpp"

#include <algorithm>
#include <limits>

#include "ecotour/errors.hpp"
#include "ecotour/shortest_paths.hpp"

namespace ecotour {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = 1e-12;
} // namespace

TspReduction reduce_to_tsp(const LineGraph& graph, double alpha, double beta) {
    if (graph.terminals().size() < 2) throw SchemaError("tsp reduction needs at least two terminals");
    PairwisePaths pp = johnson_shortest_paths(graph, EdgeWeight::Scalarized, alpha, beta);
    TspReduction red;
    red.terminals = pp.sources;
    red.path = std::move(pp.path);
    const std::size_t n = red.terminals.size();
    double lowest = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) lowest = std::min(lowest, pp.dist[i][j]);
    red.shift = std::max(0.0, -lowest);
    red.cost.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) red.cost[i][j] = pp.dist[i][j] + red.shift;
    auto it = std::find(red.terminals.begin(), red.terminals.end(), graph.depot());
    red.depot_index = static_cast<int>(it - red.terminals.begin());
    return red;
}

double order_cost(const std::vector<std::vector<double>>& cost, const std::vector<int>& order) {
    double total = 0.0;
    for (std::size_t i = 0; i < order.size(); ++i)
        total += cost[order[i]][order[(i + 1) % order.size()]];
    return total;
}

std::vector<int> held_karp_order(const std::vector<std::vector<double>>& cost, int start) {
    const int n = static_cast<int>(cost.size());
    if (n > 12) throw InstanceTooLargeError("exact tour ordering limited to 12 stops");
    if (n == 1) return {start};
    const int full = 1 << n;
    std::vector<double> dp(static_cast<std::size_t>(full) * n, kInf);
    std::vector<int> parent(static_cast<std::size_t>(full) * n, -1);
    dp[static_cast<std::size_t>(1 << start) * n + start] = 0.0;
    for (int mask = 0; mask < full; ++mask) {
        if (!(mask & (1 << start))) continue;
        for (int j = 0; j < n; ++j) {
            if (!(mask & (1 << j))) continue;
            double base = dp[static_cast<std::size_t>(mask) * n + j];
            if (base == kInf) continue;
            for (int k = 0; k < n; ++k) {
                if (mask & (1 << k)) continue;
                int nmask = mask | (1 << k);
                double cand = base + cost[j][k];
                std::size_t idx = static_cast<std::size_t>(nmask) * n + k;
                if (cand < dp[idx] - kEps) {
                    dp[idx] = cand;
                    parent[idx] = j;
                }
            }
        }
    }
    int best_last = -1;
    double best = kInf;
    for (int j = 0; j < n; ++j) {
        if (j == start) continue;
        double cand = dp[static_cast<std::size_t>(full - 1) * n + j] + cost[j][start];
        if (cand < best - kEps) {
            best = cand;
            best_last = j;
        }
    }
    std::vector<int> order;
    int mask = full - 1, j = best_last;
    while (j != -1) {
        order.push_back(j);
        int pj = parent[static_cast<std::size_t>(mask) * n + j];
        mask ^= (1 << j);
        j = pj;
    }
    std::reverse(order.begin(), order.end());
    return order; // begins at start by construction
}

namespace {

std::vector<int> nearest_neighbor(const std::vector<std::vector<double>>& cost, int start) {
    const int n = static_cast<int>(cost.size());
    std::vector<bool> used(n, false);
    std::vector<int> order{start};
    used[start] = true;
    int at = start;
    for (int step = 1; step < n; ++step) {
        int pick = -1;
        double best = kInf;
        for (int j = 0; j < n; ++j)
            if (!used[j] && cost[at][j] < best - kEps) {
                best = cost[at][j];
                pick = j;
            }
        used[pick] = true;
        order.push_back(pick);
        at = pick;
    }
    return order;
}

// relocate one segment of length 1..3 (position 0 stays fixed as anchor);
// applies the first improving move found and reports whether one was applied
bool relocate_pass(const std::vector<std::vector<double>>& cost, std::vector<int>& order) {
    const int n = static_cast<int>(order.size());
    for (int len = 1; len <= 3 && len < n - 1; ++len) {
        for (int i = 1; i + len - 1 <= n - 1; ++i) {
            int a = order[i - 1], s0 = order[i], s1 = order[i + len - 1];
            int b = order[(i + len) % n];
            double removal = cost[a][s0] + cost[s1][b] - cost[a][b];
            for (int j = 0; j <= n - 1; ++j) {
                if (j >= i - 1 && j <= i + len - 1) continue; // overlapping insertion
                int u = order[j], v = order[(j + 1) % n];
                if (u == a && v == b) continue;
                double insertion = cost[u][s0] + cost[s1][v] - cost[u][v];
                if (insertion - removal < -kEps) {
                    std::vector<int> seg(order.begin() + i, order.begin() + i + len);
                    order.erase(order.begin() + i, order.begin() + i + len);
                    int at = j < i ? j + 1 : j + 1 - len;
                    order.insert(order.begin() + at, seg.begin(), seg.end());
                    return true;
                }
            }
        }
    }
    return false;
}

// swap two adjacent segments; every orientation-preserving three-cut
// reconnection of a directed cycle has this form
bool exchange_pass(const std::vector<std::vector<double>>& cost, std::vector<int>& order) {
    const int n = static_cast<int>(order.size());
    for (int a = 0; a + 2 < n; ++a)
        for (int b = a + 1; b + 1 < n; ++b)
            for (int c = b + 1; c < n; ++c) {
                int pa = order[a], x0 = order[a + 1], x1 = order[b];
                int y0 = order[b + 1], y1 = order[c], pc = order[(c + 1) % n];
                double before = cost[pa][x0] + cost[x1][y0] + cost[y1][pc];
                double after = cost[pa][y0] + cost[y1][x0] + cost[x1][pc];
                if (after - before < -kEps) {
                    std::vector<int> next(order.begin(), order.begin() + a + 1);
                    next.insert(next.end(), order.begin() + b + 1, order.begin() + c + 1);
                    next.insert(next.end(), order.begin() + a + 1, order.begin() + b + 1);
                    next.insert(next.end(), order.begin() + c + 1, order.end());
                    order = std::move(next);
                    return true;
                }
            }
    return false;
}

std::vector<int> improve(const std::vector<std::vector<double>>& cost, std::vector<int> order) {
    for (int step = 0; step < 20000; ++step) {
        if (relocate_pass(cost, order)) continue;
        if (exchange_pass(cost, order)) continue;
        break;
    }
    return order;
}

} // namespace

std::vector<int> tsp_order(const std::vector<std::vector<double>>& cost, int start, Rng& rng) {
    const int n = static_cast<int>(cost.size());
    if (n <= 12) return held_karp_order(cost, start);
    std::vector<int> best = improve(cost, nearest_neighbor(cost, start));
    double best_cost = order_cost(cost, best);
    for (int restart = 0; restart < 2; ++restart) {
        std::vector<int> order{start};
        for (int j = 0; j < n; ++j)
            if (j != start) order.push_back(j);
        rng.shuffle(order.begin() + 1, order.end());
        order = improve(cost, std::move(order));
        double c = order_cost(cost, order);
        if (c < best_cost - kEps) {
            best_cost = c;
            best = std::move(order);
        }
    }
    return best;
}

std::vector<int> expand_permutation(const TspReduction& red, const std::vector<int>& order) {
    auto it = std::find(order.begin(), order.end(), red.depot_index);
    if (it == order.end()) throw SchemaError("order does not include the depot");
    std::vector<int> rotated(it, order.end());
    rotated.insert(rotated.end(), order.begin(), it);
    std::vector<int> seq{red.terminals[red.depot_index]};
    for (std::size_t i = 0; i < rotated.size(); ++i) {
        const std::vector<int>& leg = red.path[rotated[i]][rotated[(i + 1) % rotated.size()]];
        if (leg.empty()) throw UnreachableError("no path between consecutive stops");
        seq.insert(seq.end(), leg.begin() + 1, leg.end());
    }
    return seq;
}

} // namespace ecotour
