#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ecotour/search_state.hpp"

namespace ecotour::cli {

struct RunConfig {
    std::string command;  // solve | exact | bench
    std::string instance; // file for solve/exact, directory for bench
    double budget_s = 120.0;
    long long budget_iters = -1; // >= 0 switches to the clock-free mode
    double init_frac = 0.25;
    std::uint64_t seed = 0;
    Theta theta;
    int revisit_cap = 0; // <= 0 means min(#terminals, 4)
    std::string backend = "builtin"; // builtin | lp-export
    std::string out = ".";
    int jobs = 1;
    std::vector<double> scenarios{0.1, 0.2};
    double spb_fraction = 0.1;       // terminal share when the instance is a travel-time file
    bool filter_any_attribute = false; // relaxed three-cut segment filter
    bool order_cuts = true;            // copy-ordering cuts in exact models
    bool echo_progress = false;        // mirror the progress log to stderr
};

// exit codes: 0 success, 1 input error, 2 no feasible tour
int cmd_solve(const RunConfig& cfg);
int cmd_exact(const RunConfig& cfg);
int cmd_bench(const RunConfig& cfg);

int run_cli(int argc, const char* const* argv);

} // namespace ecotour::cli
