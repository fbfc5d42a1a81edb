#include "ecotour/scalarization.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace ecotour {

namespace {

struct Dichotomy {
    const LineGraph& graph;
    const TimeWindowTable& windows;
    int cap;
    const ScalarizeOptions& opts;
    MipModel ref; // variable layout only depends on the graph and cap
    std::vector<LpRowSpec> cuts;
    ScalarizationOutcome out;

    Dichotomy(const LineGraph& g, const TimeWindowTable& w, int c, const ScalarizeOptions& o)
        : graph(g), windows(w), cap(c), opts(o), ref(build_model(g, w, c, 0.0, 1.0, o.exact.order_rows)) {}

    LpRowSpec value_cap(double ca, double cb, double bound) {
        LpRowSpec r;
        r.sense = '<';
        r.rhs = bound;
        for (int a = 0; a < ref.num_arcs; ++a) {
            const LineEdge& e = graph.edge(a);
            double c = ca * e.turns + cb * e.energy;
            if (c == 0.0) continue;
            for (int i = 0; i < ref.copies; ++i)
                for (int j = 0; j < ref.copies; ++j) r.terms.push_back({ref.x_id(a, i, j), c});
        }
        return r;
    }

    // minimize (a1,b1), then among its optima minimize (a2,b2)
    std::optional<Tour> lex_solve(double a1, double b1, double a2, double b2, bool int_primary) {
        ExactResult r1 = solve_scalarized_exact(graph, windows, cap, a1, b1, opts.exact, &cuts);
        ++out.solves;
        out.nodes += r1.nodes;
        if (!r1.proven) out.proven = false;
        if (!r1.found) return std::nullopt;
        double slack = int_primary ? 0.5 : opts.value_tol * std::max(1.0, std::abs(r1.objective));
        std::vector<LpRowSpec> extra{value_cap(a1, b1, r1.objective + slack)};
        ExactResult r2 =
            solve_scalarized_exact(graph, windows, cap, a2, b2, opts.exact, &cuts, extra);
        ++out.solves;
        out.nodes += r2.nodes;
        if (!r2.proven) out.proven = false;
        if (!r2.found) return r1.best; // refinement failed; the primary optimum still stands
        return r2.best;
    }

    void rec(const Tour& A, const Tour& B, int depth) {
        if (depth <= 0) return;
        double dl = static_cast<double>(B.cost.turns - A.cost.turns);
        double dh = A.cost.energy - B.cost.energy;
        if (dl <= 0 || dh <= 0) return;
        double omega = dh / dl;
        double alpha = omega / (1.0 + omega), beta = 1.0 / (1.0 + omega);
        auto C = lex_solve(alpha, beta, 1.0, 0.0, false);
        if (!C) return;
        double vseg = alpha * A.cost.turns + beta * A.cost.energy;
        double vc = alpha * C->cost.turns + beta * C->cost.energy;
        if (vc >= vseg - opts.value_tol * std::max(1.0, std::abs(vseg))) return;
        out.frontier.push_back(*C);
        rec(A, *C, depth - 1);   // left interval first
        rec(*C, B, depth - 1);
    }

    void run() {
        auto ta = lex_solve(1.0, 0.0, 0.0, 1.0, true);
        if (!ta) {
            out.feasible = false;
            return;
        }
        out.frontier.push_back(*ta);
        auto tb = lex_solve(0.0, 1.0, 1.0, 0.0, false);
        if (!tb) return;
        if (!(tb->cost == ta->cost)) {
            out.frontier.push_back(*tb);
            rec(*ta, *tb, opts.max_depth);
        }
    }
};

bool near_equal(const CostVector& a, const CostVector& b) {
    return a.turns == b.turns &&
           std::abs(a.energy - b.energy) <= 1e-9 * std::max(1.0, std::abs(a.energy));
}

} // namespace

ScalarizationOutcome supported_frontier(const LineGraph& graph, const TimeWindowTable& windows,
                                        int cap, const ScalarizeOptions& opts) {
    Dichotomy d(graph, windows, cap, opts);
    d.run();
    auto& fr = d.out.frontier;
    std::sort(fr.begin(), fr.end(),
              [](const Tour& a, const Tour& b) { return cost_less(a.cost, b.cost); });
    fr.erase(std::unique(fr.begin(), fr.end(),
                         [](const Tour& a, const Tour& b) { return near_equal(a.cost, b.cost); }),
             fr.end());
    d.out.feasible = !fr.empty();
    return d.out;
}

} // namespace ecotour
