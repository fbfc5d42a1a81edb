#include "ecotour/search_state.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace ecotour {

namespace {

void dedup_by_nodes(std::vector<Tour>& pool) {
    std::set<std::vector<int>> seen;
    std::vector<Tour> kept;
    kept.reserve(pool.size());
    for (auto& t : pool)
        if (seen.insert(t.nodes).second) kept.push_back(std::move(t));
    pool = std::move(kept);
}

void settle_y(std::vector<Tour>& y, int cap, Rng& rng) {
    const bool by_turns = rng.bernoulli(0.5);
    std::stable_sort(y.begin(), y.end(), [&](const Tour& a, const Tour& b) {
        return by_turns ? a.cost.turns < b.cost.turns : a.cost.energy < b.cost.energy;
    });
    dedup_by_nodes(y);
    if (static_cast<int>(y.size()) > cap) y.resize(cap);
}

void settle_x(std::vector<Tour>& x, int cap) {
    std::stable_sort(x.begin(), x.end(), [](const Tour& a, const Tour& b) {
        return a.penalty + a.wait < b.penalty + b.wait;
    });
    dedup_by_nodes(x);
    if (static_cast<int>(x.size()) > cap) x.resize(cap);
}

} // namespace

SetOutcome update_sets(SearchState& state, Tour candidate, Rng& rng) {
    const int cap = state.theta.pool_cap;
    if (candidate.tw_feasible()) {
        if (!state.z.would_admit(candidate.cost)) {
            state.y.push_back(std::move(candidate));
            settle_y(state.y, cap, rng);
            return SetOutcome::Feasible;
        }
        ParetoArchive::Update up = state.z.update(std::move(candidate));
        for (auto& t : up.displaced) state.y.push_back(std::move(t));
        if (!up.displaced.empty()) settle_y(state.y, cap, rng);
        return SetOutcome::Frontier;
    }
    double worst = 0.0;
    for (const Tour& t : state.x) worst = std::max(worst, t.penalty);
    if (static_cast<int>(state.x.size()) >= cap && candidate.penalty >= worst)
        return SetOutcome::Dropped;
    state.x.push_back(std::move(candidate));
    settle_x(state.x, cap);
    return SetOutcome::Penalized;
}

std::vector<double> kde_densities(const std::vector<CostVector>& points) {
    const std::size_t n = points.size();
    std::vector<double> out(n, 0.0);
    if (n == 0) return out;
    double mt = 0, me = 0;
    for (const auto& p : points) {
        mt += p.turns;
        me += p.energy;
    }
    mt /= n;
    me /= n;
    double st = 0, se = 0;
    for (const auto& p : points) {
        st += (p.turns - mt) * (p.turns - mt);
        se += (p.energy - me) * (p.energy - me);
    }
    st = std::sqrt(st / n);
    se = std::sqrt(se / n);
    if (st == 0.0) st = 1.0;
    if (se == 0.0) se = 1.0;
    const double h = std::pow(static_cast<double>(n), -1.0 / 6.0);
    const double inv2h2 = 1.0 / (2.0 * h * h);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double dt = (points[i].turns - points[j].turns) / st;
            double de = (points[i].energy - points[j].energy) / se;
            sum += std::exp(-(dt * dt + de * de) * inv2h2);
        }
        out[i] = sum / n;
    }
    return out;
}

int kde_weighted_pick(const std::vector<CostVector>& points, Rng& rng) {
    const std::size_t n = points.size();
    if (n == 0) return -1;
    if (n == 1) return 0;
    std::vector<double> d = kde_densities(points);
    double total = 0.0;
    for (double v : d) total += v;
    double wsum = 0.0;
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = 1.0 - d[i] / total;
        wsum += w[i];
    }
    if (wsum <= 0.0) return rng.index(n);
    double r = rng.uniform01() * wsum;
    for (std::size_t i = 0; i < n; ++i) {
        r -= w[i];
        if (r <= 0.0) return static_cast<int>(i);
    }
    return static_cast<int>(n - 1);
}

} // namespace ecotour
