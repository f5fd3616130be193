#pragma once

#include <cstddef>
#include <vector>

#include "tips/trajectory.hpp"

namespace tips {

// Dense trajectory × candidate-site detour matrix: at(j, i) is the detour of
// trajectory j to sites[i] (column order equals inst.sites). Entries are
// >= 0; infinity marks an unreachable pair. Immutable after build and shared
// read-only by the subset/medoid solvers.
struct DistanceMatrix {
    std::size_t rows = 0; // m trajectories
    std::size_t cols = 0; // n candidate sites
    std::vector<NodeId> site_ids;
    std::vector<Cost> entries; // row-major, rows*cols

    Cost at(std::size_t j, std::size_t i) const { return entries[j * cols + i]; }
};

// Builds the full matrix, one forward + one reverse shortest-path tree per
// distinct trajectory node (each pair of trees fills that node's share of a
// whole row). Rows are independent and computed in parallel.
DistanceMatrix build_distance_matrix(const PlacementInstance& inst);

} // namespace tips
