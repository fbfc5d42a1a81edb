#include "ecotour/path_bank.hpp"

namespace ecotour {

const BankEntry& PathBank::get_or_compute(const LineGraph& graph, int src, int dst) {
    {
        std::lock_guard lock(mu_);
        auto it = entries_.find({src, dst});
        if (it != entries_.end()) return it->second;
    }
    // compute outside the lock; concurrent duplicates allowed, first insert wins
    BiobjectiveResult r = biobjective_paths(graph, src, dst, budget_s_);
    std::lock_guard lock(mu_);
    ++searches_;
    auto [it, inserted] = entries_.try_emplace({src, dst});
    if (inserted) {
        it->second.paths = std::move(r.paths);
        it->second.complete = r.complete;
    }
    return it->second;
}

bool PathBank::contains(int src, int dst) const {
    std::lock_guard lock(mu_);
    return entries_.count({src, dst}) > 0;
}

} // namespace ecotour
