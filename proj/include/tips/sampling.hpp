#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tips/trajectory.hpp"

namespace tips {

// Result of the radius-R randomized network covering: every node belongs to
// exactly one cluster; each cluster keeps at most one candidate site (the
// one with the smallest round-trip to the center, smallest id on ties).
struct SiteSample {
    Cost radius = 0;
    std::vector<std::uint32_t> clusters;            // node -> cluster id
    std::vector<NodeId> centers;                    // cluster id -> center node
    std::vector<std::optional<NodeId>> representatives; // cluster id -> site
    std::vector<NodeId> sampled_sites;              // defined representatives, ascending
};

// Trajectory thinning by agglomerating the coarse (cluster-center set)
// signatures under Jaccard similarity until `target_size` groups remain;
// each group is represented by one of its original trajectories.
struct TrajectorySample {
    std::size_t target_size = 0;
    std::vector<std::vector<NodeId>> coarse; // per trajectory: sorted center set
    std::vector<Trajectory> representatives; // min(target_size, m) originals
    bool truncated = false; // target_size exceeded m; all m returned
};

// Repeated covering: a seeded-random unclustered node becomes a center and
// absorbs every unclustered node that can reach it within one-way distance R
// (d(node, center) <= R; the round-trip is what center_dist records).
SiteSample sample_sites(const PlacementInstance& inst, Cost radius, std::uint64_t seed);

// Agglomerates from m singletons, each step fusing the pair of group
// representatives with maximal Jaccard similarity of their center sets
// (ties: smallest id pair); the longer representative survives a fusion
// (smaller trajectory id on equal length) and keeps its own coarse
// signature. `seed` is accepted for interface symmetry; the procedure is
// deterministic and never draws from it.
TrajectorySample sample_trajectories(const PlacementInstance& inst,
                                     const SiteSample& site_sample, std::size_t target_size,
                                     std::uint64_t seed);

// Convenience: the reduced instance (sampled sites, representative
// trajectories, same network and facilities) ready for any solver.
PlacementInstance reduced_instance(const PlacementInstance& inst, const SiteSample& sites,
                                   const TrajectorySample& trajectories);

} // namespace tips
