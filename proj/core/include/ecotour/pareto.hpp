#pragma once

#include <vector>

#include "ecotour/tour.hpp"

namespace ecotour {

// Non-dominated set of feasible tours, kept sorted by cost. Admission is
// strict: a candidate weakly dominated by (or equal in cost to) a member is
// rejected.
class ParetoArchive {
  public:
    struct Update {
        bool admitted = false;
        std::vector<Tour> displaced; // members the candidate pushed out
    };

    Update update(Tour candidate);
    bool would_admit(const CostVector& c) const;
    const std::vector<Tour>& items() const { return items_; }
    bool empty() const { return items_.empty(); }
    std::size_t size() const { return items_.size(); }

  private:
    std::vector<Tour> items_; // sorted by cost_less, mutually non-dominated
};

// Area a candidate adds to the non-dominated staircase of `base`, measured
// against a reference corner just beyond the worst turn count (+1) and worst
// energy (+1.0) over base and every candidate scored by this instance.
// Candidates weakly dominated by the base score -infinity; candidates whose
// cost equals a base point score 0.
class GainScorer {
  public:
    GainScorer(const std::vector<CostVector>& base, const std::vector<CostVector>& candidates);
    double gain(const CostVector& c) const;

  private:
    std::vector<CostVector> front_; // non-dominated subset of base, sorted
    double corner_turns_ = 0.0, corner_energy_ = 0.0;
    double base_area_ = 0.0;
};

// staircase area dominated by `points` relative to the corner
double staircase_area(std::vector<CostVector> points, double corner_turns, double corner_energy);

} // namespace ecotour
