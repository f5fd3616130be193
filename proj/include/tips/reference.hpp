#pragma once

#include "tips/avgtips.hpp"
#include "tips/matrix.hpp"
#include "tips/maxtips.hpp"
#include "tips/netclus.hpp"
#include "tips/solver_result.hpp"

namespace tips::reference {

// Plain single-threaded twins of every parallel kernel. They reuse the same
// per-element primitives (detour rows, subset scores, RNG streams) but none
// of the parallel orchestration, and serve as the equality baseline for
// tests and the parallel benchmark. Results — selected sites, objectives,
// profiles, work counters, serialized bytes — must match the parallel
// versions exactly; only wall_time may differ.

DistanceMatrix build_distance_matrix(const PlacementInstance& inst);

SolverResult exact_maxtips(const PlacementInstance& inst, std::size_t k, double gamma,
                           std::uint64_t budget = kDefaultEnumerationBudget);

SolverResult exact_avgtips(const PlacementInstance& inst, std::size_t k,
                           std::uint64_t budget = kDefaultEnumerationBudget);

SolverResult great(const PlacementInstance& inst, const DistanceMatrix& matrix,
                   std::size_t k);

SolverResult hcc(const PlacementInstance& inst, const DistanceMatrix& matrix,
                 std::size_t k, const HccParams& params);

NetClusIndex build_index(const PlacementInstance& inst, Cost tau_min, Cost tau_max,
                         double epsilon, std::uint64_t seed);

} // namespace tips::reference
