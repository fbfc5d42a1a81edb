#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <vector>

#include "ecotour/biobjective.hpp"

namespace ecotour {

struct BankEntry {
    std::vector<BankPath> paths;
    bool complete = true;
};

// Memoized Pareto path sets between terminal pairs. Entries are computed at
// most once: a cached entry is returned as-is even when its search timed out
// (incomplete frontiers are still usable). Thread-safe.
class PathBank {
  public:
    explicit PathBank(double budget_s = 30.0) : budget_s_(budget_s) {}

    const BankEntry& get_or_compute(const LineGraph& graph, int src, int dst);

    bool contains(int src, int dst) const;
    std::uint64_t search_count() const { return searches_; }
    void set_budget(double budget_s) { budget_s_ = budget_s; }

  private:
    mutable std::mutex mu_;
    std::map<std::pair<int, int>, BankEntry> entries_;
    double budget_s_;
    std::uint64_t searches_ = 0;
};

} // namespace ecotour
