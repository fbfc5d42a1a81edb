#include "ecotour/initial_solution.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <set>

#include "ecotour/tsp.hpp"

namespace ecotour {

namespace {

using Clock = std::chrono::steady_clock;

struct Seeder {
    const LineGraph& graph;
    const TimeWindowTable& windows;
    Rng& rng;
    SeedOptions opts;
    Clock::time_point t0 = Clock::now();
    long long solves = 0;

    std::vector<Tour> tours;
    std::set<std::vector<int>> seen;

    bool exhausted() const {
        if (opts.max_solves >= 0 && solves >= opts.max_solves) return true;
        if (opts.budget_s > 0) {
            double el = std::chrono::duration<double>(Clock::now() - t0).count();
            if (el >= opts.budget_s) return true;
        }
        return false;
    }

    // returns the seed's cost vector, or nullopt when out of budget
    std::optional<CostVector> solve(double alpha, double beta) {
        if (exhausted()) return std::nullopt;
        ++solves;
        TspReduction red = reduce_to_tsp(graph, alpha, beta);
        std::vector<int> order = tsp_order(red.cost, red.depot_index, rng);
        std::vector<int> nodes = expand_permutation(red, order);
        Tour t = evaluate_tour(graph, windows, nodes);
        CostVector c = t.cost;
        if (seen.insert(t.nodes).second) tours.push_back(std::move(t));
        return c;
    }

    void bisect(double lo, double hi, CostVector clo, CostVector chi, int depth) {
        if (depth <= 0 || clo == chi) return;
        double mid = std::sqrt(lo * hi); // geometric midpoint of the ratio
        double alpha = mid / (1.0 + mid), beta = 1.0 / (1.0 + mid);
        auto cm = solve(alpha, beta);
        if (!cm) return;
        bisect(lo, mid, clo, *cm, depth - 1);
        bisect(mid, hi, *cm, chi, depth - 1);
    }

    void run() {
        // extremes first so both ends of the tradeoff are always represented
        solve(1.0, 0.0);
        solve(0.0, 1.0);
        std::vector<std::pair<double, CostVector>> ladder;
        for (int k = opts.sweep_lo; k <= opts.sweep_hi; ++k) {
            double omega = std::ldexp(1.0, k);
            auto c = solve(omega / (1.0 + omega), 1.0 / (1.0 + omega));
            if (!c) break;
            ladder.emplace_back(omega, *c);
        }
        for (std::size_t i = 0; i + 1 < ladder.size(); ++i)
            bisect(ladder[i].first, ladder[i + 1].first, ladder[i].second, ladder[i + 1].second,
                   opts.bisection_depth);
    }
};

} // namespace

std::vector<Tour> initial_tours(const LineGraph& graph, const TimeWindowTable& windows, Rng& rng,
                                const SeedOptions& opts) {
    Seeder s{graph, windows, rng, opts};
    s.run();
    return std::move(s.tours);
}

} // namespace ecotour
