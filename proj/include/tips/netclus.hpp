#pragma once

#include <algorithm>
#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "tips/solver_result.hpp"
#include "tips/trajectory.hpp"

namespace tips {

// One covering clustering of the node set at a fixed radius, with all the
// per-trajectory lookups the coverage query needs precomputed.
struct ClusterInstance {
    Cost radius = 0;
    std::vector<std::uint32_t> assignment; // node -> cluster id
    std::vector<NodeId> centers;           // cluster id -> center node
    std::vector<Cost> center_dist;         // node -> round-trip distance to own center

    // Per cluster: the candidate site in the cluster with the smallest
    // round-trip distance to the center (smallest id on ties); kNoSite when
    // the cluster contains no candidate.
    static constexpr NodeId kNoSite = static_cast<NodeId>(-1);
    std::vector<NodeId> representative;

    // Per trajectory, ascending by cluster id: the clusters it traverses and
    // min over its nodes in that cluster of center_dist (the trajectory's
    // round-trip estimate to that center).
    std::vector<std::vector<std::pair<std::uint32_t, Cost>>> traj_clusters;
};

// Multi-resolution family of covering clusterings with radii
// tau_min·(1+epsilon)^i, i = 0..t-1, t = floor(log_{1+eps}(tau_max/tau_min))+1.
struct NetClusIndex {
    Cost tau_min = 0;
    Cost tau_max = 0;
    double epsilon = 0;
    std::uint64_t seed = 0;
    std::vector<ClusterInstance> instances; // radii strictly increasing
};

struct CoverageResult {
    std::vector<NodeId> selected; // ascending site ids, |selected| <= k
    std::size_t covered = 0;      // trajectories within tau, existing facilities included
};

// Builds the full index. Instances build independently (parallel); each one's
// randomized covering draws from its own (seed, instance) stream.
NetClusIndex build_index(const PlacementInstance& inst, Cost tau_min, Cost tau_max,
                         double epsilon, std::uint64_t seed);

// Greedy max-coverage at threshold tau using the instance with the largest
// radius <= tau. A cluster representative covers a trajectory when the
// index estimate — trajectory-to-center + center-to-representative round
// trips — is <= tau; trajectories estimated within tau of an existing
// facility count as covered before any pick. k picks, max marginal coverage,
// smallest site id on ties.
CoverageResult tops_query(const NetClusIndex& index, const PlacementInstance& inst,
                          std::size_t k, Cost tau);

// Binary search on tau in [tau_min, tau_max], halving until the bracket is
// narrower than `precision`, keeping the site set of the smallest feasible
// tau (coverage >= the gamma serve count). The reported objective is the
// exact gamma-quantile recomputed on the road network, not the tau estimate.
SolverResult netclus_maxtips(const NetClusIndex& index, const PlacementInstance& inst,
                             std::size_t k, double gamma, Cost precision);

inline Cost default_precision(Cost tau_min) { return std::max<Cost>(1.0, 0.005 * tau_min); }
inline constexpr Cost kDefaultTauMin = 100.0;
inline constexpr Cost kDefaultTauMax = 20000.0;
inline constexpr double kDefaultEpsilon = 0.5;

// Versioned line-oriented text serialization, so building and querying can
// run as separate processes. read_index validates shape against nothing but
// itself; callers must pair it with the same instance it was built from.
void write_index(std::ostream& out, const NetClusIndex& index);
NetClusIndex read_index(std::istream& in);

} // namespace tips
