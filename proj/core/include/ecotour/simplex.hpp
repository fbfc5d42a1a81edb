#pragma once

#include <vector>

namespace ecotour {

// Dense two-phase primal simplex with explicit variable bounds. Small and
// deterministic; intended for the modest LPs that arise from relaxations of
// routing models, not for general-purpose use.

struct LpRowSpec {
    std::vector<std::pair<int, double>> terms; // (variable, coefficient)
    char sense = '<';                          // '<', '>', '='
    double rhs = 0.0;
};

struct LpProblem {
    int num_vars = 0;
    std::vector<double> obj;   // minimized
    std::vector<double> lower; // per-variable bounds; upper may be +inf
    std::vector<double> upper;
    std::vector<LpRowSpec> rows;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterLimit };

struct LpSolution {
    LpStatus status = LpStatus::IterLimit;
    double objective = 0.0;
    std::vector<double> x;
    std::vector<double> z; // reduced costs per structural column, set when Optimal
    int iterations = 0;
};

LpSolution solve_lp(const LpProblem& prob, int max_iters = 200000);

} // namespace ecotour
