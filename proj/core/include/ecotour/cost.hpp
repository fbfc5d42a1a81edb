#pragma once

#include <compare>

namespace ecotour {

// objective vector of a path or tour: left turns and energy (kWh)
struct CostVector {
    int turns = 0;
    double energy = 0.0;

    friend bool operator==(const CostVector&, const CostVector&) = default;
};

// a dominates b: no worse in both objectives (duration never participates)
inline bool dominates(const CostVector& a, const CostVector& b) {
    return a.turns <= b.turns && a.energy <= b.energy;
}

inline bool strictly_dominates(const CostVector& a, const CostVector& b) {
    return dominates(a, b) && (a.turns < b.turns || a.energy < b.energy);
}

// strict weak order used for canonical sorting of frontiers
inline bool cost_less(const CostVector& a, const CostVector& b) {
    if (a.turns != b.turns) return a.turns < b.turns;
    return a.energy < b.energy;
}

} // namespace ecotour
