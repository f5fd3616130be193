#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tips/trajectory.hpp"

namespace tips {

// Cap on exhaustive k-subset enumeration, shared by both exact solvers.
inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

// Outcome of one solver run. `objective` is MI(selected, gamma) for the
// max-detour problem and TI(selected) for the total-detour problem, always
// recomputed from `profile` (never a heuristic's internal estimate).
struct SolverResult {
    std::vector<NodeId> selected; // chosen sites, ascending, disjoint from F
    Cost objective = kInfinity;
    InconvenienceProfile profile; // over selected ∪ facilities
    std::string algorithm;
    double wall_time = 0; // seconds; excluded from determinism comparisons
    std::uint64_t seed = 0;

    // Algorithm-specific effort counter: subsets evaluated (exact), iterations
    // (mif), coverage queries (netclus), candidate evaluations (great),
    // scanned swaps (hcc). Comparable only within one algorithm.
    std::uint64_t work = 0;

    // Set only by the coverage binary search when even the largest indexed
    // radius cannot serve the required trajectory count.
    bool infeasible_at_tau_max = false;
};

} // namespace tips
