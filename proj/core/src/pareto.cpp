#include "ecotour/pareto.hpp"

#include <algorithm>
#include <limits>

namespace ecotour {

ParetoArchive::Update ParetoArchive::update(Tour candidate) {
    Update res;
    for (const Tour& t : items_)
        if (dominates(t.cost, candidate.cost)) return res; // weakly dominated: rejected
    auto mid = std::stable_partition(items_.begin(), items_.end(), [&](const Tour& t) {
        return !dominates(candidate.cost, t.cost);
    });
    res.displaced.assign(std::make_move_iterator(mid), std::make_move_iterator(items_.end()));
    items_.erase(mid, items_.end());
    auto at = std::lower_bound(items_.begin(), items_.end(), candidate,
                               [](const Tour& a, const Tour& b) { return cost_less(a.cost, b.cost); });
    items_.insert(at, std::move(candidate));
    res.admitted = true;
    return res;
}

bool ParetoArchive::would_admit(const CostVector& c) const {
    for (const Tour& t : items_)
        if (dominates(t.cost, c)) return false;
    return true;
}

double staircase_area(std::vector<CostVector> points, double corner_turns, double corner_energy) {
    if (points.empty()) return 0.0;
    std::sort(points.begin(), points.end(), cost_less);
    // sweep left to right keeping only the lower staircase
    double area = 0.0;
    double prev_energy = corner_energy;
    for (const CostVector& p : points) {
        if (p.energy >= prev_energy) continue; // dominated in the sweep
        area += (corner_turns - p.turns) * (prev_energy - p.energy);
        prev_energy = p.energy;
    }
    return area;
}

GainScorer::GainScorer(const std::vector<CostVector>& base,
                       const std::vector<CostVector>& candidates) {
    double mt = 0.0, me = 0.0;
    bool any = false;
    auto absorb = [&](const CostVector& c) {
        mt = any ? std::max(mt, static_cast<double>(c.turns)) : c.turns;
        me = any ? std::max(me, c.energy) : c.energy;
        any = true;
    };
    for (const auto& c : base) absorb(c);
    for (const auto& c : candidates) absorb(c);
    corner_turns_ = mt + 1.0;
    corner_energy_ = me + 1.0;

    for (const auto& c : base) {
        bool dominated = false;
        for (const auto& d : base)
            if (!(d == c) && dominates(d, c)) { dominated = true; break; }
        if (!dominated) front_.push_back(c);
    }
    std::sort(front_.begin(), front_.end(), cost_less);
    front_.erase(std::unique(front_.begin(), front_.end()), front_.end());
    base_area_ = staircase_area(front_, corner_turns_, corner_energy_);
}

double GainScorer::gain(const CostVector& c) const {
    for (const auto& b : front_) {
        if (b == c) return 0.0;
        if (dominates(b, c)) return -std::numeric_limits<double>::infinity();
    }
    std::vector<CostVector> with = front_;
    with.push_back(c);
    return staircase_area(std::move(with), corner_turns_, corner_energy_) - base_area_;
}

} // namespace ecotour
