#include "ecotour/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>

#include "ecotour/errors.hpp"
#include "ecotour/shortest_paths.hpp"

namespace ecotour {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<int> terminal_positions(const LineGraph& g, const std::vector<int>& nodes) {
    std::vector<int> pos;
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
        if (g.is_terminal(nodes[i])) pos.push_back(i);
    return pos;
}

// forward segment of a closed tour between positions x and y, wrapping
// through the depot seam when x > y (position L and position 0 coincide)
std::vector<int> cycle_segment(const std::vector<int>& nodes, int x, int y) {
    const int last = static_cast<int>(nodes.size()) - 1;
    std::vector<int> out;
    if (x <= y) {
        out.assign(nodes.begin() + x, nodes.begin() + y + 1);
    } else {
        out.assign(nodes.begin() + x, nodes.begin() + last + 1);
        out.insert(out.end(), nodes.begin() + 1, nodes.begin() + y + 1);
    }
    return out;
}

// appends a piece that starts on acc's last node, dropping the shared node
bool join(std::vector<int>& acc, const std::vector<int>& piece) {
    if (piece.empty()) return false;
    if (acc.empty()) {
        acc = piece;
        return true;
    }
    if (acc.back() != piece.front()) return false;
    acc.insert(acc.end(), piece.begin() + 1, piece.end());
    return true;
}

std::optional<Tour> try_tour(const LineGraph& g, const TimeWindowTable& w,
                             std::vector<int> nodes) {
    try {
        return evaluate_tour(g, w, std::move(nodes));
    } catch (const NotATourError&) {
        return std::nullopt;
    }
}

std::optional<Tour> try_cycle(const LineGraph& g, const TimeWindowTable& w,
                              const std::vector<int>& cycle) {
    if (cycle.size() < 2 || cycle.front() != cycle.back()) return std::nullopt;
    if (std::find(cycle.begin(), cycle.end(), g.depot()) == cycle.end()) return std::nullopt;
    return try_tour(g, w, rotate_to_depot(cycle, g.depot()));
}

int host_from_frontier(const SearchState& state, Rng& rng) {
    const auto& z = state.z.items();
    if (z.empty()) return -1;
    std::vector<CostVector> costs;
    costs.reserve(z.size());
    for (const Tour& t : z) costs.push_back(t.cost);
    return kde_weighted_pick(costs, rng);
}

// bank paths between two nodes, optionally screened against the frontier's
// per-edge mean costs: a replacement segment has to look no worse than an
// average frontier stretch of the same length (on both attributes, or on at
// least one when the relaxed toggle is set)
std::vector<const BankPath*> bank_options(OperatorContext& ctx, int src, int dst,
                                          bool filtered) {
    const BankEntry& entry = ctx.bank.get_or_compute(ctx.graph, src, dst);
    std::vector<const BankPath*> out;
    out.reserve(entry.paths.size());
    for (const BankPath& p : entry.paths) {
        if (filtered) {
            const double len = static_cast<double>(p.nodes.size()) - 1.0;
            const bool ok_turns = p.cost.turns <= len * ctx.frontier_mean_turns;
            const bool ok_energy = p.cost.energy <= len * ctx.frontier_mean_energy;
            const bool pass = ctx.filter_any_attribute ? (ok_turns || ok_energy)
                                                       : (ok_turns && ok_energy);
            if (!pass) continue;
        }
        out.push_back(&p);
    }
    return out;
}

// third-pair choices compatible with pairs a and b (pairs share endpoints
// with their neighbors, so two indices apart; the seam-straddling
// combinations that would collapse a kept segment are excluded)
std::vector<int> eligible_third(int a, int b, int m) {
    std::vector<int> out;
    for (int c = b + 2; c < m; ++c) {
        if (a == 0 && c + 1 == m) continue;
        out.push_back(c);
    }
    for (int c = 0; c + 2 <= a; ++c) {
        if (b + 1 == m && c == 0) continue;
        out.push_back(c);
    }
    return out;
}

std::vector<Tour> three_cut_core(OperatorContext& ctx, const SearchState& state,
                                 const Tour& host, bool window_mode) {
    const LineGraph& g = ctx.graph;
    const auto& p = host.nodes;
    const std::vector<int> pos = terminal_positions(g, p);
    if (pos.size() < 6) return {};
    const int m = static_cast<int>(pos.size()) - 1;

    std::vector<int> first_choices;
    for (int a = 0; a < m; ++a) {
        if (window_mode && host.penalty_at(p[pos[a + 1]]) <= 0.0) continue;
        for (int b = a + 2; b < m; ++b) {
            if (!eligible_third(a, b, m).empty()) {
                first_choices.push_back(a);
                break;
            }
        }
    }
    if (first_choices.empty()) return {};
    const int a = first_choices[ctx.rng.index(first_choices.size())];

    std::vector<int> second_choices;
    for (int b = a + 2; b < m; ++b)
        if (!eligible_third(a, b, m).empty()) second_choices.push_back(b);
    const int b = second_choices[ctx.rng.index(second_choices.size())];

    const int i1 = pos[a], i2 = pos[a + 1];
    const int i3 = pos[b], i4 = pos[b + 1];

    const bool filtered = !window_mode;
    const auto q1_set = bank_options(ctx, p[i1], p[i4], filtered);
    if (q1_set.empty()) return {};
    const BankPath* q1 = q1_set[ctx.rng.index(q1_set.size())];

    std::vector<Tour> candidates;
    for (int c : eligible_third(a, b, m)) {
        const int i5 = pos[c], i6 = pos[c + 1];
        const auto q3_set = bank_options(ctx, p[i3], p[i6], filtered);
        const auto q2_set = bank_options(ctx, p[i5], p[i2], filtered);
        for (const BankPath* q3 : q3_set) {
            for (const BankPath* q2 : q2_set) {
                std::vector<int> cyc = cycle_segment(p, i2, i3);
                if (!join(cyc, q3->nodes)) continue;
                if (!join(cyc, cycle_segment(p, i6, i1))) continue;
                if (!join(cyc, q1->nodes)) continue;
                if (!join(cyc, cycle_segment(p, i4, i5))) continue;
                if (!join(cyc, q2->nodes)) continue;
                if (auto t = try_cycle(g, ctx.windows, cyc)) candidates.push_back(std::move(*t));
            }
        }
    }
    if (window_mode || candidates.size() <= 1) return candidates;

    std::vector<CostVector> base;
    for (const Tour& t : state.z.items()) base.push_back(t.cost);
    std::vector<CostVector> cand_costs;
    cand_costs.reserve(candidates.size());
    for (const Tour& t : candidates) cand_costs.push_back(t.cost);
    const GainScorer scorer(base, cand_costs);
    std::size_t best = 0;
    double best_gain = -kInf;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const double gi = scorer.gain(cand_costs[i]);
        if (gi > best_gain) {
            best_gain = gi;
            best = i;
        }
    }
    return {candidates[best]};
}

std::vector<int> missing_terminals(const LineGraph& g, const std::vector<int>& nodes) {
    std::vector<char> present(g.node_count(), 0);
    for (int v : nodes) present[v] = 1;
    std::vector<int> out;
    for (int t : g.terminals())
        if (!present[t]) out.push_back(t);
    return out;
}

} // namespace

std::vector<int> violated_terminals(const Tour& tour) {
    std::vector<int> out;
    for (const TerminalVisit& v : tour.visits)
        if (v.penalty > 0.0) out.push_back(v.node);
    return out;
}

double partial_penalty(const LineGraph& graph, const TimeWindowTable& windows,
                       const std::vector<int>& nodes) {
    if (nodes.empty()) return kInf;
    std::map<int, double> lateness; // visited terminal -> min lateness over visits
    std::set<int> serviced;
    double clock = 0.0;
    auto visit = [&](int v) {
        if (!graph.is_terminal(v)) return;
        const TimeWindow win = windows.at_or_open(v);
        const double late = std::max(0.0, clock - win.end);
        auto it = lateness.find(v);
        if (it == lateness.end())
            lateness.emplace(v, late);
        else if (late < it->second)
            it->second = late;
        if (serviced.insert(v).second && clock < win.start) clock = win.start;
    };
    visit(nodes.front());
    for (std::size_t k = 1; k < nodes.size(); ++k) {
        const auto arc = graph.find_arc(nodes[k - 1], nodes[k]);
        if (!arc) return kInf;
        clock += graph.edges()[*arc].time;
        visit(nodes[k]);
    }
    double total = 0.0;
    for (const auto& [node, late] : lateness) total += late;
    return total;
}

std::vector<int> rebridge_without(const LineGraph& graph, const std::vector<int>& host,
                                  const std::vector<int>& removed) {
    const int depot = graph.depot();
    std::vector<char> drop(graph.node_count(), 0);
    for (int v : removed)
        if (v != depot) drop[v] = 1;

    const std::vector<int> pos = terminal_positions(graph, host);
    std::vector<int> kept; // indices into pos
    for (int k = 0; k < static_cast<int>(pos.size()); ++k)
        if (!drop[host[pos[k]]]) kept.push_back(k);
    if (kept.empty() || host[pos[kept.front()]] != depot) return {};

    std::vector<int> out(host.begin(), host.begin() + pos[kept.front()] + 1);
    for (std::size_t k = 1; k < kept.size(); ++k) {
        const int pa = pos[kept[k - 1]];
        const int pb = pos[kept[k]];
        if (kept[k] == kept[k - 1] + 1) {
            // neighbors survived intact: keep the original stretch
            out.insert(out.end(), host.begin() + pa + 1, host.begin() + pb + 1);
        } else {
            const TimedPath sp = shortest_time_path(graph, host[pa], host[pb]);
            if (!sp.reachable) return {};
            out.insert(out.end(), sp.nodes.begin() + 1, sp.nodes.end());
        }
    }
    return out;
}

std::vector<int> insertable_terminals(const LineGraph& graph, const TimeWindowTable& windows,
                                      const std::vector<int>& q, int i, int j,
                                      const std::vector<int>& missing) {
    std::vector<int> out;
    const int a = q[i - 1];
    const int b = q[j - 1];
    for (int k : missing) {
        const TimedPath in = shortest_time_path(graph, a, k);
        const TimedPath back = shortest_time_path(graph, k, b);
        if (!in.reachable || !back.reachable) continue;
        std::vector<int> trial(q.begin(), q.begin() + (i - 1));
        trial.insert(trial.end(), in.nodes.begin(), in.nodes.end() - 1);
        trial.insert(trial.end(), back.nodes.begin(), back.nodes.end());
        trial.insert(trial.end(), q.begin() + j, q.end());
        if (partial_penalty(graph, windows, trial) == 0.0) out.push_back(k);
    }
    return out;
}

std::vector<int> greedy_chain(const LineGraph& graph, int start, std::vector<int> targets) {
    std::sort(targets.begin(), targets.end());
    std::vector<int> out{start};
    std::vector<char> used(targets.size(), 0);
    int cur = start;
    for (std::size_t round = 0; round < targets.size(); ++round) {
        int best = -1;
        double best_time = kInf;
        TimedPath best_path;
        for (std::size_t t = 0; t < targets.size(); ++t) {
            if (used[t]) continue;
            TimedPath sp = shortest_time_path(graph, cur, targets[t]);
            if (!sp.reachable) continue;
            if (sp.duration < best_time) { // ties keep the smaller node id
                best_time = sp.duration;
                best = static_cast<int>(t);
                best_path = std::move(sp);
            }
        }
        if (best < 0) return {};
        used[best] = 1;
        out.pop_back();
        out.insert(out.end(), best_path.nodes.begin(), best_path.nodes.end());
        cur = targets[best];
    }
    return out;
}

std::vector<Tour> repair_insertions(const LineGraph& graph, const TimeWindowTable& windows,
                                    const std::vector<int>& r, const std::vector<int>& chain,
                                    int anchor_node) {
    std::vector<Tour> out;
    if (chain.empty() || chain.front() != anchor_node) return out;
    for (const auto& [i, j] : adjacent_terminal_pairs(graph, r)) {
        if (r[i - 1] != anchor_node) continue;
        const TimedPath back = shortest_time_path(graph, chain.back(), r[j - 1]);
        if (!back.reachable) continue;
        std::vector<int> t(r.begin(), r.begin() + (i - 1));
        t.insert(t.end(), chain.begin(), chain.end() - 1);
        t.insert(t.end(), back.nodes.begin(), back.nodes.end());
        t.insert(t.end(), r.begin() + j, r.end());
        if (auto tour = try_tour(graph, windows, std::move(t))) out.push_back(std::move(*tour));
    }
    return out;
}

std::vector<Tour> op_three_cut(OperatorContext& ctx, const SearchState& state) {
    const int hi = host_from_frontier(state, ctx.rng);
    if (hi < 0) return {};
    return three_cut_core(ctx, state, state.z.items()[hi], /*window_mode=*/false);
}

std::vector<Tour> op_three_cut_window(OperatorContext& ctx, const SearchState& state) {
    if (state.x.empty()) return {};
    const Tour& host = state.x[ctx.rng.index(state.x.size())];
    return three_cut_core(ctx, state, host, /*window_mode=*/true);
}

std::vector<Tour> op_window_repair(OperatorContext& ctx, const SearchState& state) {
    const LineGraph& g = ctx.graph;
    if (state.x.empty()) return {};
    const Tour& host = state.x[ctx.rng.index(state.x.size())];

    const std::vector<int> removed = violated_terminals(host);
    if (removed.empty()) return {};
    const std::vector<int> q = rebridge_without(g, host.nodes, removed);
    if (q.empty()) return {};
    if (partial_penalty(g, ctx.windows, q) != 0.0) return {};

    // terminals dropped for good (a bridge may route through a removed one)
    const std::vector<int> missing = missing_terminals(g, q);
    if (missing.empty()) {
        // the rebridged walk already covers everything at zero lateness
        if (auto t = try_tour(g, ctx.windows, q)) return {std::move(*t)};
        return {};
    }

    const auto slots = adjacent_terminal_pairs(g, q);
    std::vector<std::vector<int>> fits(slots.size());
    std::size_t best_size = 0;
    for (std::size_t s = 0; s < slots.size(); ++s) {
        fits[s] = insertable_terminals(g, ctx.windows, q, slots[s].first, slots[s].second,
                                       missing);
        best_size = std::max(best_size, fits[s].size());
    }
    if (best_size == 0) return {};
    std::vector<std::size_t> ties;
    for (std::size_t s = 0; s < slots.size(); ++s)
        if (fits[s].size() == best_size) ties.push_back(s);
    const std::size_t pick = ties[ctx.rng.index(ties.size())];

    const std::vector<int>& chosen = fits[pick];
    const std::vector<int> r = rebridge_without(g, host.nodes, chosen);
    if (r.empty()) return {};
    const int anchor = q[slots[pick].first - 1];
    const std::vector<int> chain = greedy_chain(g, anchor, chosen);
    if (chain.empty()) return {};
    return repair_insertions(g, ctx.windows, r, chain, anchor);
}

std::vector<Tour> op_fixed_permutation(OperatorContext& ctx, const SearchState& state,
                                       bool from_feasible_pool) {
    const LineGraph& g = ctx.graph;
    const EdgeStats& es = g.edge_stats();

    std::vector<const Tour*> source;
    if (from_feasible_pool)
        for (const Tour& t : state.y) source.push_back(&t);
    else
        for (const Tour& t : state.z.items()) source.push_back(&t);

    // hosts whose per-edge cost sits off the graph-wide average band
    std::vector<const Tour*> skewed;
    for (const Tour* t : source) {
        const double len = t->length();
        const bool off_turns =
            std::abs(t->cost.turns - len * es.mean_turns) > state.theta.skew_width * es.stddev_turns;
        const bool off_energy = std::abs(t->cost.energy - len * es.mean_energy) >
                                state.theta.skew_width * es.stddev_energy;
        if (off_turns || off_energy) skewed.push_back(t);
    }

    const Tour* host = nullptr;
    if (!skewed.empty()) {
        host = skewed[ctx.rng.index(skewed.size())];
    } else {
        const int hi = host_from_frontier(state, ctx.rng);
        if (hi < 0) return {};
        host = &state.z.items()[hi];
    }

    const auto& p = host->nodes;
    const auto pairs = adjacent_terminal_pairs(g, p);
    const int m = static_cast<int>(pairs.size());
    if (m == 0) return {};

    // segment priorities under a randomly chosen objective: how much the
    // stretch exceeds an average stretch of its length
    const bool by_turns = ctx.rng.bernoulli(0.5);
    const double mu = by_turns ? es.mean_turns : es.mean_energy;
    std::vector<double> weight(m, 0.0);
    double total = 0.0;
    for (int k = 0; k < m; ++k) {
        double c = 0.0;
        for (int at = pairs[k].first - 1; at < pairs[k].second - 1; ++at) {
            const int arc = *g.find_arc(p[at], p[at + 1]);
            c += by_turns ? g.edges()[arc].turns : g.edges()[arc].energy;
        }
        const double len = pairs[k].second - pairs[k].first;
        weight[k] = std::max(0.0, c - len * mu);
        total += weight[k];
    }
    if (total <= 0.0) weight.assign(m, 1.0);

    // weighted sample (no replacement) of the slots to enrich
    const int picks = std::min(state.theta.top_pairs, m);
    std::vector<int> chosen;
    for (int round = 0; round < picks; ++round) {
        double sum = std::accumulate(weight.begin(), weight.end(), 0.0);
        if (sum <= 0.0) break;
        double roll = ctx.rng.uniform01() * sum;
        int sel = -1;
        for (int k = 0; k < m; ++k) {
            if (weight[k] <= 0.0) continue;
            sel = k;
            roll -= weight[k];
            if (roll < 0.0) break;
        }
        chosen.push_back(sel);
        weight[sel] = 0.0;
    }
    std::sort(chosen.begin(), chosen.end());
    if (chosen.empty()) return {};

    // options per chosen slot: the original stretch plus every bank path
    std::vector<std::vector<std::vector<int>>> options(chosen.size());
    long long combos = 1;
    bool overflow = false;
    for (std::size_t s = 0; s < chosen.size(); ++s) {
        const auto [i, j] = pairs[chosen[s]];
        options[s].emplace_back(p.begin() + (i - 1), p.begin() + j);
        const BankEntry& entry = ctx.bank.get_or_compute(g, p[i - 1], p[j - 1]);
        for (const BankPath& bp : entry.paths)
            if (bp.nodes != options[s].front()) options[s].push_back(bp.nodes);
        if (!overflow) {
            combos *= static_cast<long long>(options[s].size());
            if (combos > 5000) overflow = true;
        }
    }

    auto build = [&](const std::vector<std::size_t>& sel) -> std::optional<Tour> {
        std::vector<int> nodes{p.front()};
        std::size_t slot = 0;
        for (int k = 0; k < m; ++k) {
            if (slot < chosen.size() && chosen[slot] == k) {
                if (!join(nodes, options[slot][sel[slot]])) return std::nullopt;
                ++slot;
            } else {
                const auto [i, j] = pairs[k];
                std::vector<int> seg(p.begin() + (i - 1), p.begin() + j);
                if (!join(nodes, seg)) return std::nullopt;
            }
        }
        return try_tour(g, ctx.windows, std::move(nodes));
    };

    std::vector<Tour> out;
    if (!overflow) {
        std::vector<std::size_t> sel(chosen.size(), 0);
        while (true) {
            const bool all_original =
                std::all_of(sel.begin(), sel.end(), [](std::size_t v) { return v == 0; });
            if (!all_original)
                if (auto t = build(sel)) out.push_back(std::move(*t));
            std::size_t d = 0;
            while (d < sel.size()) {
                if (++sel[d] < options[d].size()) break;
                sel[d] = 0;
                ++d;
            }
            if (d == sel.size()) break;
        }
    } else {
        for (int round = 0; round < 5000; ++round) {
            std::vector<std::size_t> sel(chosen.size());
            for (std::size_t s = 0; s < chosen.size(); ++s)
                sel[s] = static_cast<std::size_t>(ctx.rng.index(options[s].size()));
            if (auto t = build(sel)) out.push_back(std::move(*t));
        }
    }
    return out;
}

std::vector<int> quad_reassemble(const LineGraph& graph, PathBank& bank,
                                 const std::vector<int>& host,
                                 const std::array<int, 4>& pair_index, Rng& rng) {
    const std::vector<int> pos = terminal_positions(graph, host);
    const int i8 = pos[pair_index[0]], i1 = pos[pair_index[0] + 1];
    const int i2 = pos[pair_index[1]], i3 = pos[pair_index[1] + 1];
    const int i4 = pos[pair_index[2]], i5 = pos[pair_index[2] + 1];
    const int i6 = pos[pair_index[3]], i7 = pos[pair_index[3] + 1];

    auto pick = [&](int u, int v) -> const std::vector<int>* {
        const BankEntry& entry = bank.get_or_compute(graph, u, v);
        if (entry.paths.empty()) return nullptr;
        return &entry.paths[rng.index(entry.paths.size())].nodes;
    };
    const auto* b1 = pick(host[i8], host[i5]);
    const auto* b2 = pick(host[i6], host[i3]);
    const auto* b3 = pick(host[i4], host[i1]);
    const auto* b4 = pick(host[i2], host[i7]);
    if (!b1 || !b2 || !b3 || !b4) return {};

    // double bridge: kept segments are revisited in reverse block order
    std::vector<int> cyc = cycle_segment(host, i7, i8);
    if (!join(cyc, *b1)) return {};
    if (!join(cyc, cycle_segment(host, i5, i6))) return {};
    if (!join(cyc, *b2)) return {};
    if (!join(cyc, cycle_segment(host, i3, i4))) return {};
    if (!join(cyc, *b3)) return {};
    if (!join(cyc, cycle_segment(host, i1, i2))) return {};
    if (!join(cyc, *b4)) return {};
    return cyc;
}

std::vector<Tour> op_quad_cut(OperatorContext& ctx, const SearchState& state) {
    const LineGraph& g = ctx.graph;
    const int hi = host_from_frontier(state, ctx.rng);
    if (hi < 0) return {};
    const Tour& host = state.z.items()[hi];
    const std::vector<int> pos = terminal_positions(g, host.nodes);
    const int m = static_cast<int>(pos.size()) - 1;
    if (m < 8) return {};

    for (int attempt = 0; attempt < 50; ++attempt) {
        std::array<int, 4> k{};
        for (int& v : k) v = ctx.rng.index(static_cast<std::size_t>(m));
        std::sort(k.begin(), k.end());
        if (k[1] - k[0] < 2 || k[2] - k[1] < 2 || k[3] - k[2] < 2) continue;
        const std::vector<int> cyc = quad_reassemble(g, ctx.bank, host.nodes, k, ctx.rng);
        if (cyc.empty()) continue;
        if (auto t = try_cycle(g, ctx.windows, cyc)) return {std::move(*t)};
    }
    return {};
}

std::vector<Tour> op_random_permutation(OperatorContext& ctx, const SearchState& state) {
    (void)state;
    const LineGraph& g = ctx.graph;
    const int depot = g.depot();
    std::vector<int> rest;
    for (int t : g.terminals())
        if (t != depot) rest.push_back(t);
    if (rest.empty()) return {};

    for (int attempt = 0; attempt < 2; ++attempt) {
        ctx.rng.shuffle(rest);
        std::vector<int> cyc{depot};
        int cur = depot;
        bool ok = true;
        auto extend = [&](int nxt) {
            const BankEntry& entry = ctx.bank.get_or_compute(g, cur, nxt);
            if (entry.paths.empty()) {
                ok = false;
                return;
            }
            const BankPath& bp = entry.paths[ctx.rng.index(entry.paths.size())];
            ok = join(cyc, bp.nodes);
            cur = nxt;
        };
        for (int t : rest) {
            extend(t);
            if (!ok) break;
        }
        if (ok) extend(depot);
        if (!ok) continue;
        if (auto t = try_tour(g, ctx.windows, std::move(cyc))) return {std::move(*t)};
    }
    return {};
}

} // namespace ecotour
