#include "ecotour/branch_and_bound.hpp"

#include "ecotour/shortest_paths.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <queue>

namespace ecotour {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kIntTol = 1e-6;

using Clock = std::chrono::steady_clock;

struct Node {
    double bound = -kInf;
    long long id = 0;
    std::vector<std::pair<int, int>> fixes; // (x variable, 0/1)
};

struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
        if (a.bound != b.bound) return a.bound > b.bound; // min-heap on bound
        return a.id < b.id; // plateau tie: newest first, so equal-bound runs dive
    }
};

struct Solver {
    const LineGraph& graph;
    const TimeWindowTable& windows;
    const ExactOptions& opts;
    MipModel model;
    LpProblem base;
    std::vector<LpRowSpec>* cuts;
    std::vector<LpRowSpec> local_cuts;
    std::vector<LpRowSpec> side_rows; // caller-imposed rows a tour must honor
    struct DenseRow {
        std::vector<double> coef;
        char sense = '<';
        double rhs = 0.0;
    };
    std::vector<DenseRow> side_dense;
    std::vector<std::vector<double>> timedist; // all-pairs fastest travel times
    double w_turns = 0.0, w_energy = 0.0;

    double best_obj = kInf;
    Tour best;
    bool found = false;
    double quantum = 0.0; // objective lattice spacing, 0 when none detected
    long long next_id = 0;
    long long popped = 0;
    long long lp_iters = 0;
    int cuts_added = 0;
    Clock::time_point t0 = Clock::now();

    Solver(const LineGraph& g, const TimeWindowTable& w, int cap, double alpha, double beta,
           const ExactOptions& o, std::vector<LpRowSpec>* pool,
           const std::vector<LpRowSpec>& extra)
        : graph(g), windows(w), opts(o), side_rows(extra), w_turns(alpha), w_energy(beta) {
        model = build_model(g, w, cap, alpha, beta, o.order_rows);
        base = relaxation(model, false);
        for (const auto& r : extra) base.rows.push_back(r);
        cuts = pool ? pool : &local_cuts;
        quantum = objective_quantum();
        timedist.resize(model.num_nodes);
        for (int v = 0; v < model.num_nodes; ++v) timedist[v] = earliest_arrival_from(graph, v);
    }

    // greatest common spacing of the objective coefficients: every integral
    // point then has an objective on that lattice, so a fractional bound can
    // be lifted to the next lattice value before pruning
    double objective_quantum() const {
        double g = 0.0;
        for (const auto& v : model.vars) {
            double c = std::abs(v.obj);
            while (c > 1e-9) {
                double r = std::fmod(g, c);
                g = c;
                c = r;
            }
        }
        if (g < 1e-4) return 0.0;
        for (const auto& v : model.vars) {
            double q = v.obj / g;
            if (std::abs(q - std::round(q)) > 1e-6 * std::max(1.0, std::abs(q))) return 0.0;
        }
        return g;
    }

    double lift(double bound) const {
        return quantum > 0.0 ? quantum * std::ceil(bound / quantum - 1e-6) : bound;
    }

    double tour_objective(const Tour& t) const {
        return w_turns * t.cost.turns + w_energy * t.cost.energy;
    }

    // caller-imposed rows touch only x columns, so a concrete walk can be
    // checked against them by accumulating its traversals
    bool satisfies_side_rows(const std::vector<int>& xids) {
        if (side_dense.size() != side_rows.size()) {
            side_dense.clear();
            for (const auto& r : side_rows) {
                DenseRow d;
                d.coef.assign(model.vars.size(), 0.0);
                for (auto [j, c] : r.terms) d.coef[j] += c;
                d.sense = r.sense;
                d.rhs = r.rhs;
                side_dense.push_back(std::move(d));
            }
        }
        for (const auto& d : side_dense) {
            double lhs = 0.0;
            for (int id : xids) lhs += d.coef[id];
            if (d.sense == '<' && lhs > d.rhs + 1e-7) return false;
            if (d.sense == '>' && lhs < d.rhs - 1e-7) return false;
            if (d.sense == '=' && std::abs(lhs - d.rhs) > 1e-7) return false;
        }
        return true;
    }

    // greedy rounding: follow the heaviest departure copy by copy, heading
    // home once every terminal is covered. Steps that strand an uncovered
    // window (no fastest path can reach it in time any more) lose to lighter
    // steps that keep every window reachable; the evaluator (and any
    // caller-imposed row) decides whether the walk becomes the incumbent.
    void try_walk_incumbent(const LpSolution& sol) {
        const int K = model.copies;
        const int n = model.num_nodes;
        const int depot = graph.depot();
        std::vector<char> used(static_cast<std::size_t>(n) * K, 0);
        std::vector<char> missing_term(n, 0);
        int missing = 0;
        for (int v : graph.terminals())
            if (!missing_term[v] && v != depot) { missing_term[v] = 1; ++missing; }
        std::vector<int> walk{depot};
        std::vector<int> xids;
        int cur_v = depot, cur_i = 0;
        double clock = 0.0;
        used[cur_v * K] = 1;
        bool closed = false;
        for (int steps = 0; steps < n * K && !closed; ++steps) {
            int sel_id = -1, sel_head = -1, sel_j = -1, sel_arc = -1;
            bool sel_doomed = true;
            double best_w = 1e-9;
            bool home_only = missing == 0;
            for (int pass = 0; pass < (home_only ? 2 : 1) && sel_id < 0; ++pass) {
                bool restrict_home = home_only && pass == 0;
                for (int a : graph.out_arcs(cur_v)) {
                    const LineEdge& e = graph.edge(a);
                    int head = e.head;
                    if (restrict_home && head != depot) continue;
                    bool closing = head == depot && missing == 0;
                    double t2 = clock + e.time;
                    bool doomed = false;
                    if (missing_term[head]) {
                        TimeWindow tw = windows.at_or_open(head);
                        if (t2 > tw.end) doomed = true;
                        else if (t2 < tw.start) t2 = tw.start;
                    }
                    for (int u = 0; u < n && !doomed; ++u)
                        if (missing_term[u] && u != head &&
                            t2 + timedist[head][u] > windows.at_or_open(u).end)
                            doomed = true;
                    for (int j = 0; j < K; ++j) {
                        // closed walks re-enter the depot's start copy; any
                        // other stop needs a fresh copy
                        if (closing ? j != 0 : used[head * K + j] != 0) continue;
                        double wv = sol.x[model.x_id(a, cur_i, j)];
                        if (wv <= 1e-9) continue;
                        // a step that keeps all windows alive beats any that
                        // does not, regardless of weight
                        bool better = sel_doomed == doomed ? wv > best_w : !doomed;
                        if (better) {
                            best_w = wv;
                            sel_id = model.x_id(a, cur_i, j);
                            sel_head = head;
                            sel_j = j;
                            sel_arc = a;
                            sel_doomed = doomed;
                        }
                    }
                }
            }
            if (sel_id < 0) return; // dead end
            clock += graph.edge(sel_arc).time;
            if (missing_term[sel_head]) {
                TimeWindow tw = windows.at_or_open(sel_head);
                if (clock < tw.start) clock = tw.start;
                missing_term[sel_head] = 0;
                --missing;
            }
            xids.push_back(sel_id);
            walk.push_back(sel_head);
            used[sel_head * K + sel_j] = 1;
            cur_v = sel_head;
            cur_i = sel_j;
            closed = sel_head == depot && missing == 0;
        }
        if (!closed) return;
        offer_incumbent(walk, xids);
    }

    void offer_incumbent(const std::vector<int>& walk, const std::vector<int>& xids) {
        if (!satisfies_side_rows(xids)) return;
        Tour t = evaluate_tour(graph, windows, walk);
        if (t.penalty > 0) return;
        double obj = tour_objective(t);
        if (obj < best_obj - 1e-12) {
            best_obj = obj;
            best = std::move(t);
            found = true;
        }
    }

    // deadline-first construction: chase the tightest window over fastest
    // paths, then head home; covers the common case where rounding the
    // relaxation keeps missing a window and no incumbent ever appears
    void try_deadline_incumbent() {
        const int K = model.copies;
        const int depot = graph.depot();
        std::vector<std::pair<double, int>> order;
        for (int v : graph.terminals())
            if (v != depot) order.push_back({windows.at_or_open(v).end, v});
        std::sort(order.begin(), order.end());
        std::vector<int> walk{depot};
        for (auto [dl, v] : order) {
            if (walk.back() == v) continue;
            TimedPath p = shortest_time_path(graph, walk.back(), v);
            if (!p.reachable) return;
            walk.insert(walk.end(), p.nodes.begin() + 1, p.nodes.end());
        }
        if (walk.back() != depot) {
            TimedPath back = shortest_time_path(graph, walk.back(), depot);
            if (!back.reachable) return;
            walk.insert(walk.end(), back.nodes.begin() + 1, back.nodes.end());
        } else if (walk.size() == 1) {
            return; // no terminal away from the depot and nowhere to go
        }
        // representable only while every node fits its copy budget
        std::vector<int> seen(model.num_nodes, 0);
        for (std::size_t i = 0; i + 1 < walk.size(); ++i)
            if (++seen[walk[i]] > K) return;
        std::vector<int> xids;
        for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
            int arc = -1;
            for (int a : graph.out_arcs(walk[i]))
                if (graph.edge(a).head == walk[i + 1]) { arc = a; break; }
            if (arc < 0) return;
            xids.push_back(model.x_id(arc, 0, 0)); // costs do not depend on the copy
        }
        offer_incumbent(walk, xids);
    }

    // a binary sitting at a bound with reduced cost z moves the objective by
    // at least |z| when flipped, so once an incumbent exists any flip that
    // would cross it can be ruled out for the whole subtree
    void fix_by_reduced_cost(Node& nd, const LpSolution& sol) {
        std::vector<char> fixed(model.vars.size(), 0);
        for (auto [j, v] : nd.fixes) fixed[j] = 1;
        auto sweep = [&](int lo, int hi) {
            for (int j = lo; j < hi; ++j) {
                if (fixed[j]) continue;
                if (sol.x[j] <= 1e-9 && sol.z[j] > 0 &&
                    lift(sol.objective + sol.z[j]) >= best_obj - 1e-9)
                    nd.fixes.push_back({j, 0});
                else if (sol.x[j] >= 1.0 - 1e-9 && sol.z[j] < 0 &&
                         lift(sol.objective - sol.z[j]) >= best_obj - 1e-9)
                    nd.fixes.push_back({j, 1});
            }
        };
        sweep(0, model.x_count());
        sweep(model.w_base, model.w_base + model.num_w);
    }

    bool out_of_time() const {
        return opts.time_limit_s > 0 &&
               std::chrono::duration<double>(Clock::now() - t0).count() > opts.time_limit_s;
    }

    LpProblem work;             // base plus every cut seen so far
    std::size_t synced_cuts = 0;

    LpSolution solve_node(const Node& nd) {
        if (synced_cuts == 0 && work.rows.empty()) work = base;
        for (; synced_cuts < cuts->size(); ++synced_cuts) work.rows.push_back((*cuts)[synced_cuts]);
        for (auto [j, v] : nd.fixes) {
            work.lower[j] = v;
            work.upper[j] = v;
        }
        LpSolution sol = solve_lp(work, opts.lp_iters);
        for (auto [j, v] : nd.fixes) {
            work.lower[j] = base.lower[j];
            work.upper[j] = base.upper[j];
        }
        return sol;
    }

    // split integral x into the walk from the start copy plus any detached
    // cycles; copies are (node, copy) encoded as node * K + copy
    struct Decomposition {
        std::vector<int> walk;               // node sequence, depot to depot
        std::vector<std::vector<int>> stray; // x-variable ids of detached cycles
        bool ok = false;
    };

    Decomposition decompose(const std::vector<double>& x) {
        Decomposition d;
        const int K = model.copies;
        std::map<int, std::pair<int, int>> out; // copy key -> (x id, head key)
        for (int a = 0; a < model.num_arcs; ++a) {
            const LineEdge& e = graph.edge(a);
            for (int i = 0; i < K; ++i)
                for (int j = 0; j < K; ++j) {
                    int id = model.x_id(a, i, j);
                    if (x[id] > 0.5) {
                        int from = e.tail * K + i, to = e.head * K + j;
                        if (out.count(from)) return d; // two departures from one copy
                        out[from] = {id, to};
                    }
                }
        }
        const int start = graph.depot() * K;
        if (!out.count(start)) return d;
        std::map<int, char> used;
        d.walk.push_back(graph.depot());
        int at = start;
        while (true) {
            auto it = out.find(at);
            if (it == out.end()) return d; // walk dead-ends
            if (used.count(at)) return d;
            used[at] = 1;
            at = it->second.second;
            d.walk.push_back(at / K);
            if (at == start) break;
        }
        for (auto& [from, arc] : out) {
            if (used.count(from)) continue;
            std::vector<int> cyc;
            std::map<int, char> local;
            int c = from;
            while (true) {
                if (used.count(c)) return d; // runs into the walk: not a clean cycle
                if (local.count(c)) {
                    if (c != from) return d; // lasso shape, give up on cycle cuts
                    break;
                }
                local[c] = 1;
                auto it = out.find(c);
                if (it == out.end()) return d;
                cyc.push_back(it->second.first);
                c = it->second.second;
            }
            for (auto& [k, v] : local) used[k] = 1;
            d.stray.push_back(std::move(cyc));
        }
        d.ok = true;
        return d;
    }

    // detached positive-cost cycles can be dropped from any solution without
    // raising the objective, so forbidding their full arc set never loses
    // the optimum
    void add_cycle_cut(const std::vector<int>& ids) {
        LpRowSpec r;
        for (int id : ids) r.terms.push_back({id, 1.0});
        r.sense = '<';
        r.rhs = static_cast<double>(ids.size()) - 1.0;
        cuts->push_back(std::move(r));
        ++cuts_added;
    }

    // excludes exactly this binary x point and nothing else
    void add_no_good(const std::vector<double>& x) {
        LpRowSpec r;
        int support = 0;
        for (int j = 0; j < model.x_count(); ++j) {
            if (x[j] > 0.5) {
                r.terms.push_back({j, 1.0});
                ++support;
            } else {
                r.terms.push_back({j, -1.0});
            }
        }
        r.sense = '<';
        r.rhs = static_cast<double>(support) - 1.0;
        cuts->push_back(std::move(r));
        ++cuts_added;
    }

    // returns true if the node is closed, false if it should be re-solved
    bool handle_integral(const LpSolution& sol) {
        Decomposition d = decompose(sol.x);
        if (!d.ok) {
            add_no_good(sol.x);
            return false;
        }
        if (!d.stray.empty()) {
            for (const auto& cyc : d.stray) add_cycle_cut(cyc);
            return false;
        }
        Tour t = evaluate_tour(graph, windows, d.walk);
        if (t.penalty > 0) {
            add_no_good(sol.x);
            return false;
        }
        if (sol.objective < best_obj - 1e-12) {
            best_obj = sol.objective;
            best = std::move(t);
            found = true;
        }
        return true; // relaxation bound met by a feasible tour: subtree done
    }

    ExactResult run() {
        try_deadline_incumbent();
        std::priority_queue<Node, std::vector<Node>, NodeOrder> pq;
        pq.push(Node{-kInf, next_id++, {}});
        bool complete = true;
        while (!pq.empty()) {
            if (out_of_time() || (opts.node_limit >= 0 && popped >= opts.node_limit)) {
                complete = false;
                break;
            }
            Node nd = pq.top();
            pq.pop();
            if (lift(nd.bound) >= best_obj - 1e-9) continue;

            // plunge: follow the relaxation's preferred child in place,
            // handing only the sibling to the queue, until the chain closes;
            // reaching integral leaves early is what arms the bound pruning
            bool closed = false;
            while (!closed) {
                if (out_of_time() || (opts.node_limit >= 0 && popped >= opts.node_limit)) {
                    complete = false;
                    break;
                }
                ++popped;
                LpSolution sol = solve_node(nd);
                lp_iters += sol.iterations;
                if (sol.status == LpStatus::Infeasible) {
                    closed = true;
                    break;
                }
                if (sol.status != LpStatus::Optimal) {
                    // cannot trust the solve; split on the first free binary
                    int j = first_free_fractionalish(nd);
                    if (j >= 0) {
                        push_child(pq, nd, j, 0);
                        push_child(pq, nd, j, 1);
                    }
                    closed = true;
                    break;
                }
                if (lift(sol.objective) >= best_obj - 1e-9) {
                    closed = true;
                    break;
                }
                try_walk_incumbent(sol);
                if (lift(sol.objective) >= best_obj - 1e-9) {
                    closed = true;
                    break;
                }
                if (found) fix_by_reduced_cost(nd, sol);
                // x first (the branching rule proper); with x settled, a
                // fractional window flag can still hide a missed deadline at
                // a terminal visited more than once, so w is branched too
                int j = most_fractional(sol.x, 0, model.x_count());
                if (j < 0) j = most_fractional(sol.x, model.w_base, model.w_base + model.num_w);
                if (j < 0) {
                    closed = handle_integral(sol);
                } else {
                    nd.bound = sol.objective;
                    int pv = sol.x[j] > 0.5 ? 1 : 0;
                    push_child(pq, nd, j, 1 - pv);
                    nd.fixes.push_back({j, pv});
                }
            }
        }
        ExactResult res;
        res.found = found;
        res.proven = complete;
        res.best = best;
        res.objective = best_obj;
        res.nodes = popped;
        res.lp_iterations = lp_iters;
        res.cuts_added = cuts_added;
        return res;
    }

    // most fractional binary in [lo, hi), ties to the largest objective
    // weight then lowest id
    int most_fractional(const std::vector<double>& x, int lo, int hi) {
        int pick = -1;
        double best_frac = kIntTol;
        for (int j = lo; j < hi; ++j) {
            double f = std::abs(x[j] - std::round(x[j]));
            if (f <= kIntTol) continue;
            bool better = f > best_frac + 1e-12;
            bool tied = !better && f > best_frac - 1e-12 && pick >= 0 &&
                        model.vars[j].obj > model.vars[pick].obj + 1e-15;
            if (better || tied) {
                best_frac = std::max(best_frac, f);
                pick = j;
            }
        }
        return pick;
    }

    int first_free_fractionalish(const Node& nd) {
        std::vector<char> fixed(model.x_count(), 0);
        for (auto [j, v] : nd.fixes)
            if (j < model.x_count()) fixed[j] = 1;
        for (int j = 0; j < model.x_count(); ++j)
            if (!fixed[j]) return j;
        return -1;
    }

    void push_child(std::priority_queue<Node, std::vector<Node>, NodeOrder>& pq, const Node& nd,
                    int j, int v) {
        Node child;
        child.bound = nd.bound;
        child.id = next_id++;
        child.fixes = nd.fixes;
        child.fixes.push_back({j, v});
        pq.push(std::move(child));
    }
};

} // namespace

ExactResult solve_scalarized_exact(const LineGraph& graph, const TimeWindowTable& windows, int cap,
                                   double alpha, double beta, const ExactOptions& opts,
                                   std::vector<LpRowSpec>* cut_pool,
                                   const std::vector<LpRowSpec>& extra_rows) {
    Solver s(graph, windows, cap, alpha, beta, opts, cut_pool, extra_rows);
    return s.run();
}

} // namespace ecotour
