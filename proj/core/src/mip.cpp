#include "ecotour/mip.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ecotour/biobjective.hpp"
#include "ecotour/errors.hpp"
#include "ecotour/shortest_paths.hpp"

namespace ecotour {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
} // namespace

BigM compute_big_m(const LineGraph& graph, const TimeWindowTable& windows, int copies) {
    BigM m;
    const int n = graph.node_count();
    m.earliest = earliest_arrival_from(graph, graph.depot());
    for (int v = 0; v < n; ++v)
        if (m.earliest[v] == kInf)
            throw UnreachableError("node " + std::to_string(v) + " unreachable from the depot");

    // open-ended deadlines would make every constant infinite; a tour of K+1
    // full sweeps past the latest release bounds any useful departure instead
    double sum_t = 0.0;
    for (int a = 0; a < graph.edge_count(); ++a) sum_t += graph.edge(a).time;
    double max_start = 0.0;
    for (int v : graph.terminals()) max_start = std::max(max_start, windows.at_or_open(v).start);
    const double horizon = max_start + (copies + 1) * sum_t;

    double latest_deadline = 0.0;
    for (int v : graph.terminals()) {
        TimeWindow w = windows.at_or_open(v);
        latest_deadline = std::max(latest_deadline, std::min(w.end, horizon));
    }

    double longest_return = 0.0;
    for (int v : graph.terminals()) {
        BiobjectiveResult res = biobjective_paths(graph, v, graph.depot(), 5.0);
        for (const auto& p : res.paths) longest_return = std::max(longest_return, p.duration);
    }
    m.latest = latest_deadline + longest_return;

    m.arc.resize(graph.edge_count());
    for (int a = 0; a < graph.edge_count(); ++a) {
        const LineEdge& e = graph.edge(a);
        m.arc[a] = std::max(0.0, m.latest + e.time - m.earliest[e.head]);
    }

    m.tw_upper.assign(n, 0.0);
    m.tw_lower.assign(n, 0.0);
    for (int v : graph.terminals()) {
        TimeWindow w = windows.at_or_open(v);
        if (w.end < kInf) m.tw_upper[v] = std::max(0.0, m.latest - w.end);
        m.tw_lower[v] = std::max(0.0, w.start - m.earliest[v]);
    }
    return m;
}

MipModel build_model(const LineGraph& graph, const TimeWindowTable& windows, int cap, double alpha,
                     double beta, bool order_rows) {
    if (cap < 1) throw SchemaError("revisit cap must be at least 1");
    const int n = graph.node_count();
    const int na = graph.edge_count();
    const int nt = static_cast<int>(graph.terminals().size());
    const int K = std::min(nt, cap);
    const int depot = graph.depot();

    MipModel md;
    md.name = "tour_k" + std::to_string(K);
    md.copies = K;
    md.num_nodes = n;
    md.num_arcs = na;
    md.has_commodity = nt >= 2;

    auto arc_tag = [&](int a, int i, int j) {
        const LineEdge& e = graph.edge(a);
        return std::to_string(e.tail) + "_" + std::to_string(i + 1) + "_" + std::to_string(e.head) +
               "_" + std::to_string(j + 1);
    };
    auto node_tag = [&](int v, int i) { return std::to_string(v) + "_" + std::to_string(i + 1); };

    // variables: x, w, y, t in fixed blocks
    md.x_base = 0;
    for (int a = 0; a < na; ++a) {
        const LineEdge& e = graph.edge(a);
        double c = alpha * e.turns + beta * e.energy;
        for (int i = 0; i < K; ++i)
            for (int j = 0; j < K; ++j)
                md.vars.push_back({"x_" + arc_tag(a, i, j), 0.0, 1.0, 'B', c});
    }
    md.w_base = static_cast<int>(md.vars.size());
    md.w_off.assign(n, -1);
    for (int v : graph.terminals()) {
        md.w_off[v] = static_cast<int>(md.vars.size());
        for (int i = 0; i < K; ++i) md.vars.push_back({"w_" + node_tag(v, i), 0.0, 1.0, 'B', 0.0});
    }
    md.num_w = static_cast<int>(md.vars.size()) - md.w_base;
    md.y_base = static_cast<int>(md.vars.size());
    if (md.has_commodity)
        for (int a = 0; a < na; ++a)
            for (int i = 0; i < K; ++i)
                for (int j = 0; j < K; ++j)
                    md.vars.push_back(
                        {"y_" + arc_tag(a, i, j), 0.0, static_cast<double>(nt - 1), 'C', 0.0});
    md.t_base = static_cast<int>(md.vars.size());
    BigM bm = compute_big_m(graph, windows, K);
    for (int v = 0; v < n; ++v)
        for (int i = 0; i < K; ++i)
            md.vars.push_back({"t_" + node_tag(v, i), 0.0, bm.latest, 'C', 0.0});

    auto out_degree_terms = [&](MipRow& r, int v, int i, double sign) {
        for (int a : graph.out_arcs(v))
            for (int j = 0; j < K; ++j) r.terms.push_back({md.x_id(a, i, j), sign});
    };

    // ---- structural rows ----

    { // exactly one departure from the start copy
        MipRow r{"depot_out", {}, '=', 1.0};
        out_degree_terms(r, depot, 0, 1.0);
        md.rows.push_back(std::move(r));
    }

    // continuity: arcs into a copy match arcs out of it
    for (int v = 0; v < n; ++v)
        for (int i = 0; i < K; ++i) {
            MipRow r{"flw_" + node_tag(v, i), {}, '=', 0.0};
            for (int a : graph.in_arcs(v))
                for (int p = 0; p < K; ++p) r.terms.push_back({md.x_id(a, p, i), 1.0});
            out_degree_terms(r, v, i, -1.0);
            md.rows.push_back(std::move(r));
        }

    if (md.has_commodity) {
        // node-level commodity balance; the depot has no row, so it is the
        // implicit source of one unit per other terminal
        auto add_net_flow = [&](MipRow& r, int v) {
            for (int a : graph.in_arcs(v))
                for (int p = 0; p < K; ++p)
                    for (int i = 0; i < K; ++i) r.terms.push_back({md.y_id(a, p, i), 1.0});
            for (int a : graph.out_arcs(v))
                for (int i = 0; i < K; ++i)
                    for (int q = 0; q < K; ++q) r.terms.push_back({md.y_id(a, i, q), -1.0});
        };
        for (int v : graph.terminals()) {
            if (v == depot) continue;
            MipRow r{"dlv_" + std::to_string(v), {}, '=', 1.0};
            add_net_flow(r, v);
            md.rows.push_back(std::move(r));
        }
        for (int v = 0; v < n; ++v) {
            if (graph.is_terminal(v)) continue;
            MipRow r{"bal_" + std::to_string(v), {}, '=', 0.0};
            add_net_flow(r, v);
            md.rows.push_back(std::move(r));
        }
        for (int a = 0; a < na; ++a)
            for (int i = 0; i < K; ++i)
                for (int j = 0; j < K; ++j) {
                    MipRow r{"cap_" + arc_tag(a, i, j), {}, '<', 0.0};
                    r.terms.push_back({md.y_id(a, i, j), 1.0});
                    r.terms.push_back({md.x_id(a, i, j), -static_cast<double>(nt - 1)});
                    md.rows.push_back(std::move(r));
                }
    }

    // window flags: only a visited copy may carry a terminal's flag, and at
    // least one copy per terminal must
    for (int v : graph.terminals()) {
        for (int i = 0; i < K; ++i) {
            MipRow r{"wlk_" + node_tag(v, i), {}, '<', 0.0};
            r.terms.push_back({md.w_id(v, i), 1.0});
            out_degree_terms(r, v, i, -1.0);
            md.rows.push_back(std::move(r));
        }
        MipRow r{"wcv_" + std::to_string(v), {}, '>', 1.0};
        for (int i = 0; i < K; ++i) r.terms.push_back({md.w_id(v, i), 1.0});
        md.rows.push_back(std::move(r));
    }

    // copies of a node are interchangeable; requiring non-increasing use
    // along the copy index removes the permutation symmetry
    if (order_rows)
        for (int v = 0; v < n; ++v) {
            if (v == depot) continue;
            for (int i = 0; i + 1 < K; ++i) {
                MipRow r{"ord_" + node_tag(v, i + 1), {}, '>', 0.0};
                out_degree_terms(r, v, i, 1.0);
                out_degree_terms(r, v, i + 1, -1.0);
                md.rows.push_back(std::move(r));
            }
        }

    md.num_structural_rows = static_cast<int>(md.rows.size());

    // ---- clock propagation and window rows ----

    for (int a = 0; a < na; ++a) {
        const LineEdge& e = graph.edge(a);
        for (int i = 0; i < K; ++i)
            for (int j = 0; j < K; ++j) {
                if (e.head == depot && j == 0) continue; // closing the tour, no propagation
                MipRow r{"tpr_" + arc_tag(a, i, j), {}, '<', bm.arc[a] - e.time};
                r.terms.push_back({md.t_id(e.tail, i), 1.0});
                r.terms.push_back({md.t_id(e.head, j), -1.0});
                r.terms.push_back({md.x_id(a, i, j), bm.arc[a]});
                md.rows.push_back(std::move(r));
            }
    }

    // a flagged copy's departure must fall inside the terminal's window;
    // unflagged copies get big-M relief
    for (int v : graph.terminals()) {
        TimeWindow w = windows.at_or_open(v);
        if (w.end < kInf)
            for (int i = 0; i < K; ++i) {
                MipRow r{"twu_" + node_tag(v, i), {}, '<', w.end + bm.tw_upper[v]};
                r.terms.push_back({md.t_id(v, i), 1.0});
                r.terms.push_back({md.w_id(v, i), bm.tw_upper[v]});
                md.rows.push_back(std::move(r));
            }
        if (w.start > 0.0)
            for (int i = 0; i < K; ++i) {
                MipRow r{"twl_" + node_tag(v, i), {}, '>', w.start - bm.tw_lower[v]};
                r.terms.push_back({md.t_id(v, i), 1.0});
                r.terms.push_back({md.w_id(v, i), -bm.tw_lower[v]});
                md.rows.push_back(std::move(r));
            }
    }

    return md;
}

LpProblem relaxation(const MipModel& model, bool structural_only) {
    LpProblem lp;
    lp.num_vars = static_cast<int>(model.vars.size());
    lp.obj.resize(lp.num_vars);
    lp.lower.resize(lp.num_vars);
    lp.upper.resize(lp.num_vars);
    for (int j = 0; j < lp.num_vars; ++j) {
        lp.obj[j] = model.vars[j].obj;
        lp.lower[j] = model.vars[j].lower;
        lp.upper[j] = model.vars[j].upper;
    }
    int nrows = structural_only ? model.num_structural_rows : static_cast<int>(model.rows.size());
    lp.rows.reserve(nrows);
    for (int i = 0; i < nrows; ++i)
        lp.rows.push_back({model.rows[i].terms, model.rows[i].sense, model.rows[i].rhs});
    return lp;
}

} // namespace ecotour
