#pragma once

#include <cstdint>

#include "tips/matrix.hpp"
#include "tips/solver_result.hpp"
#include "tips/trajectory.hpp"

namespace tips {

struct HccParams {
    int trials = 3;             // independent restarts, best kept
    int max_iterations = 50;    // swap rounds per trial
    double swap_fraction = 0.05; // share of the k·(n−k) swap pairs scanned per round
    std::uint64_t seed = 0;
};

// Optimal total-detour placement by exhaustive k-subset enumeration;
// lexicographically smallest optimum, BudgetError past `budget` subsets.
SolverResult exact_avgtips(const PlacementInstance& inst, std::size_t k,
                           std::uint64_t budget = kDefaultEnumerationBudget);

// Marginal-gain greedy: k rounds, each adding the site whose addition yields
// the lowest total detour (smallest id on ties), with per-trajectory nearest
// distances maintained incrementally. Candidate evaluation is parallel with
// a deterministic reduction.
SolverResult great(const PlacementInstance& inst, const DistanceMatrix& matrix,
                   std::size_t k);

// Randomized medoid local search: per trial, k seeded-random initial sites;
// each round scans ceil(sf·k·(n−k)) seeded-random distinct (selected,
// unselected) swap pairs — never swapping out an existing facility, they are
// not medoids — and executes the scanned swap with the lowest total detour
// if it strictly improves; stops at a local minimum or after max_iterations.
// Best trial wins (earliest on ties). Swap evaluation is parallel with a
// deterministic reduction; work counts scanned swaps.
SolverResult hcc(const PlacementInstance& inst, const DistanceMatrix& matrix,
                 std::size_t k, const HccParams& params);

} // namespace tips
