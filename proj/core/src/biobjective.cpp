#include "ecotour/biobjective.hpp"

#include <algorithm>
#include <chrono>
#include <deque>

namespace ecotour {

namespace {

struct Label {
    int node;
    int turns;
    double energy;
    double duration;
    int pred; // arena index, -1 at source
};

bool dominates_label(int lt, double le, int rt, double re) {
    return lt <= rt && le <= re;
}

} // namespace

BiobjectiveResult biobjective_paths(const LineGraph& graph, int src, int dst,
                                    double budget_s) {
    BiobjectiveResult result;
    if (src == dst) {
        result.paths.push_back({{src}, {0, 0.0}, 0.0});
        return result;
    }

    const auto t0 = std::chrono::steady_clock::now();
    auto expired = [&] {
        if (budget_s <= 0.0) return false;
        const auto dt = std::chrono::steady_clock::now() - t0;
        return std::chrono::duration<double>(dt).count() > budget_s;
    };

    std::vector<Label> arena;
    std::vector<char> alive;
    std::vector<std::vector<int>> at_node(graph.node_count()); // nondominated label ids
    std::deque<int> queue;

    auto try_insert = [&](Label l) -> int {
        auto& set = at_node[l.node];
        for (int id : set) {
            const Label& o = arena[id];
            if (dominates_label(o.turns, o.energy, l.turns, l.energy)) return -1;
        }
        // remove labels the newcomer dominates (strictly worse or equal-later)
        set.erase(std::remove_if(set.begin(), set.end(),
                                 [&](int id) {
                                     const Label& o = arena[id];
                                     if (dominates_label(l.turns, l.energy, o.turns,
                                                         o.energy)) {
                                         alive[id] = 0;
                                         return true;
                                     }
                                     return false;
                                 }),
                  set.end());
        const int id = static_cast<int>(arena.size());
        arena.push_back(l);
        alive.push_back(1);
        set.push_back(id);
        return id;
    };

    const int first = try_insert({src, 0, 0.0, 0.0, -1});
    queue.push_back(first);

    std::size_t pops = 0;
    while (!queue.empty()) {
        if ((++pops & 1023u) == 0 && expired()) {
            result.complete = false;
            break;
        }
        const int id = queue.front();
        queue.pop_front();
        if (!alive[id]) continue;
        const Label cur = arena[id];
        if (cur.node == dst) continue; // extending past the target never helps it
        for (int ei : graph.out_arcs(cur.node)) {
            const LineEdge& e = graph.edges()[ei];
            Label next{e.head, cur.turns + e.turns, cur.energy + e.energy,
                       cur.duration + e.time, id};
            const int nid = try_insert(next);
            if (nid >= 0) queue.push_back(nid);
        }
    }

    for (int id : at_node[dst]) {
        BankPath p;
        p.cost = {arena[id].turns, arena[id].energy};
        p.duration = arena[id].duration;
        for (int at = id; at >= 0; at = arena[at].pred) p.nodes.push_back(arena[at].node);
        std::reverse(p.nodes.begin(), p.nodes.end());
        result.paths.push_back(std::move(p));
    }
    std::sort(result.paths.begin(), result.paths.end(),
              [](const BankPath& a, const BankPath& b) { return cost_less(a.cost, b.cost); });
    return result;
}

} // namespace ecotour
