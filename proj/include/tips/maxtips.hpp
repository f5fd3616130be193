#pragma once

#include <cstdint>

#include "tips/matrix.hpp"
#include "tips/solver_result.hpp"
#include "tips/trajectory.hpp"

namespace tips {

inline constexpr int kDefaultMifRestarts = 3;

// Optimal gamma-quantile placement by exhaustive k-subset enumeration over
// the candidate sites (the verification oracle and desk-scale optimum).
// Ties resolve to the lexicographically smallest site set. Throws
// BudgetError when C(n, k) exceeds `budget` subsets; enumeration runs in
// parallel over rank ranges with a deterministic merge.
SolverResult exact_maxtips(const PlacementInstance& inst, std::size_t k, double gamma,
                           std::uint64_t budget = kDefaultEnumerationBudget);

// Most-Inconvenient-First greedy: k rounds, each locating the trajectory at
// the gamma serve-count rank of the current nearest-facility ordering
// (distance then trajectory id), then adding the unchosen site with the
// smallest detour to it (smallest id on ties). With no existing facilities
// the first round targets a seeded random trajectory instead, and the best
// of `restarts` such runs is returned; with facilities present every run is
// identical, so exactly one runs regardless of `restarts`.
SolverResult mif(const PlacementInstance& inst, std::size_t k, double gamma,
                 std::uint64_t seed, int restarts = kDefaultMifRestarts);

} // namespace tips
