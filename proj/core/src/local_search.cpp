#include "ecotour/local_search.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <ostream>

namespace ecotour {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

enum OpId {
    kThreeCut = 0,
    kPermFrontier,
    kRandomPerm,
    kQuadCut,
    kThreeCutWindow,
    kWindowRepair,
    kPermFeasible,
};

constexpr const char* kOpNames[7] = {
    "three_cut",         "fixed_permutation_frontier",
    "random_permutation", "quad_cut",
    "three_cut_window",  "window_repair",
    "fixed_permutation_feasible",
};

// mean per-edge cost over the frontier tours
void refresh_frontier_means(OperatorContext& ctx, const SearchState& state) {
    long long edges = 0;
    long long turns = 0;
    double energy = 0.0;
    for (const Tour& t : state.z.items()) {
        edges += t.length();
        turns += t.cost.turns;
        energy += t.cost.energy;
    }
    ctx.frontier_mean_turns = edges > 0 ? static_cast<double>(turns) / edges : 0.0;
    ctx.frontier_mean_energy = edges > 0 ? energy / edges : 0.0;
}

void write_progress(std::ostream& os, long long iteration, const SearchState& state,
                    const std::array<OperatorStats, 7>& ops) {
    int best_turns = -1;
    double best_energy = std::numeric_limits<double>::quiet_NaN();
    for (const Tour& t : state.z.items()) {
        if (best_turns < 0 || t.cost.turns < best_turns) best_turns = t.cost.turns;
        if (!(best_energy <= t.cost.energy)) best_energy = t.cost.energy;
    }
    os << "{\"iteration\":" << iteration << ",\"x\":" << state.x.size()
       << ",\"y\":" << state.y.size() << ",\"z\":" << state.z.size();
    if (!state.z.empty()) os << ",\"best_turns\":" << best_turns
                             << ",\"best_energy\":" << best_energy;
    os << ",\"ops\":{";
    for (int i = 0; i < 7; ++i) {
        if (i) os << ',';
        os << '"' << ops[i].name << "\":{\"calls\":" << ops[i].calls
           << ",\"emitted\":" << ops[i].emitted << ",\"admitted\":" << ops[i].admitted << '}';
    }
    os << "}}\n";
}

} // namespace

SearchResult local_search(const LineGraph& graph, const TimeWindowTable& windows,
                          const SearchOptions& opts) {
    const bool timed = opts.max_iterations < 0;
    const auto t0 = Clock::now();

    SearchResult result;
    for (int i = 0; i < 7; ++i) result.ops[i].name = kOpNames[i];

    SearchState& state = result.state;
    state.theta = opts.theta;

    Rng rng(opts.seed);
    PathBank bank(timed ? opts.bank_budget_s : 0.0);

    // starting tours from scalarized reductions
    SeedOptions seed_opts;
    if (timed) {
        seed_opts.budget_s = opts.budget_s * opts.init_frac;
    } else {
        seed_opts.budget_s = 0.0;
        seed_opts.max_solves = 64;
    }
    Rng seed_rng = rng.fork();
    for (Tour& t : initial_tours(graph, windows, seed_rng, seed_opts))
        update_sets(state, std::move(t), rng);

    OperatorContext ctx{graph, windows, bank, rng};
    ctx.filter_any_attribute = opts.filter_any_attribute;

    std::array<double, 7> op_spent{}; // cumulative seconds, wall mode only

    auto run_op = [&](int id, auto&& fn, int rounds) {
        for (int r = 0; r < rounds; ++r) {
            if (timed && op_spent[id] >= opts.op_cap_s) return;
            const auto ts = timed ? Clock::now() : Clock::time_point{};
            std::vector<Tour> candidates = fn();
            ++result.ops[id].calls;
            result.ops[id].emitted += static_cast<long long>(candidates.size());
            for (Tour& c : candidates)
                if (update_sets(state, std::move(c), rng) == SetOutcome::Frontier)
                    ++result.ops[id].admitted;
            if (timed) op_spent[id] += seconds_since(ts);
        }
    };

    long long iteration = 0;
    while (true) {
        if (timed) {
            if (seconds_since(t0) >= opts.budget_s) break;
        } else if (iteration >= opts.max_iterations) {
            break;
        }
        ++iteration;

        refresh_frontier_means(ctx, state);
        run_op(kThreeCut, [&] { return op_three_cut(ctx, state); }, 1);
        run_op(kPermFrontier, [&] { return op_fixed_permutation(ctx, state, false); },
               state.theta.perm_rounds);
        run_op(kRandomPerm, [&] { return op_random_permutation(ctx, state); }, 1);
        run_op(kQuadCut, [&] { return op_quad_cut(ctx, state); }, state.theta.quad_rounds);
        run_op(kThreeCutWindow, [&] { return op_three_cut_window(ctx, state); }, 1);
        run_op(kWindowRepair, [&] { return op_window_repair(ctx, state); },
               state.theta.repair_rounds);
        run_op(kPermFeasible, [&] { return op_fixed_permutation(ctx, state, true); },
               state.theta.perm_rounds);

        if (opts.progress) write_progress(*opts.progress, iteration, state, result.ops);
    }

    result.iterations = iteration;
    result.frontier = state.z.items();
    return result;
}

} // namespace ecotour
