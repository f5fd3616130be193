#pragma once

// Internal helpers shared across the solver translation units. Not installed,
// not part of the public API.

#include <chrono>
#include <cstdint>
#include <span>
#include <vector>

#include "tips/core.hpp"
#include "tips/io.hpp"
#include "tips/matrix.hpp"
#include "tips/netclus.hpp"
#include "tips/road_network.hpp"
#include "tips/solver_result.hpp"
#include "tips/trajectory.hpp"

namespace tips::detail {

struct Stopwatch {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

// ---------------------------------------------------------------------------
// Lexicographic k-subset enumeration (combinatorial number system).
// ---------------------------------------------------------------------------

// C(n, k), saturating at `cap` (cap+1 means "more than cap"); never overflows.
std::uint64_t comb_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap);

// The rank-th k-subset of {0..n-1} in lexicographic order, ascending indices.
// Requires rank < C(n, k) and C(n, k) representable (callers budget-check).
std::vector<std::uint32_t> unrank_combination(std::uint32_t n, std::uint32_t k,
                                              std::uint64_t rank);

// Advances `idx` to its lexicographic successor; returns false after the last.
bool next_combination(std::span<std::uint32_t> idx, std::uint32_t n);

// Budget-checked C(n, k); throws on k > n and on blowing the subset budget.
std::uint64_t checked_subset_count(std::size_t n, std::size_t k, std::uint64_t budget);

// ---------------------------------------------------------------------------
// Detour evaluation building blocks (defined in trajectory.cpp / matrix.cpp).
// ---------------------------------------------------------------------------

// Detour of trajectory j given full distance fields around one site:
// to_s[u] = d(u, s), from_s[u] = d(s, u).
Cost detour_against(const PlacementInstance& inst, std::size_t j,
                    std::span<const Cost> to_s, std::span<const Cost> from_s);

// Detours of trajectory j to every candidate site (one matrix row).
std::vector<Cost> detour_row(const PlacementInstance& inst, std::size_t j);

// Detours of every trajectory to one node (one matrix column, but valid for
// any node, not just candidates).
std::vector<Cost> detour_column(const PlacementInstance& inst, NodeId s);

// ---------------------------------------------------------------------------
// Per-subset objective evaluation against the detour matrix plus the fixed
// existing-facility floor. `scratch` must be a reusable buffer of size m.
// ---------------------------------------------------------------------------

Cost subset_mi(const DistanceMatrix& m, std::span<const Cost> baseline,
               std::span<const std::uint32_t> subset, std::size_t rank_count,
               std::vector<Cost>& scratch);

Cost subset_ti(const DistanceMatrix& m, std::span<const Cost> baseline,
               std::span<const std::uint32_t> subset);

// ---------------------------------------------------------------------------
// Radius-R randomized covering of the node set, the common core of the
// coverage index and the site sampler. Each round draws a uniformly random
// still-unclustered node (in id order) as a center; the new cluster absorbs
// every unclustered node whose one-way distance INTO the center is at most
// R. center_dist is the full round trip node -> center -> node.
// ---------------------------------------------------------------------------

struct Covering {
    std::vector<std::uint32_t> assignment; // node -> cluster id
    std::vector<NodeId> centers;
    std::vector<Cost> center_dist;
};

Covering build_covering(const RoadNetwork& net, Cost radius, SplitMix64& rng);

// Per cluster, the candidate site assigned to it with the smallest
// (center_dist, id); `no_site` where a cluster holds no candidate.
std::vector<NodeId> cluster_representatives(const Covering& cov,
                                            std::span<const NodeId> sites, NodeId no_site);

// ---------------------------------------------------------------------------
// Seeded sampling without replacement: `count` distinct values from
// [0, pool_size), in draw order (partial Fisher–Yates).
// ---------------------------------------------------------------------------
std::vector<std::uint64_t> sample_distinct(std::uint64_t count, std::uint64_t pool_size,
                                           SplitMix64& rng);

// ---------------------------------------------------------------------------
// Medoid local-search kernel (defined in avgtips.cpp): total detour after
// swapping selected column `out_col` for unselected column `in_col`, given
// per-trajectory best/second-best over {baseline} ∪ selected columns.
// b1_src holds the best's column, or kBaselineSrc when the floor wins.
// ---------------------------------------------------------------------------
inline constexpr std::uint32_t kBaselineSrc = static_cast<std::uint32_t>(-1);
Cost hcc_swap_ti(const DistanceMatrix& m, std::span<const Cost> b1_val,
                 std::span<const std::uint32_t> b1_src, std::span<const Cost> b2_val,
                 std::uint32_t out_col, std::uint32_t in_col);

// Best / second-best per trajectory over {facility floor} ∪ selected columns;
// the floor is a pseudo-column (kBaselineSrc) that is never swapped out.
struct BestTwo {
    std::vector<Cost> b1_val, b2_val;
    std::vector<std::uint32_t> b1_src;
};

BestTwo best_two(const DistanceMatrix& m, std::span<const Cost> baseline,
                 std::span<const std::uint32_t> cols);

// One covering-index level at a fixed radius (defined in netclus.cpp);
// shared by the parallel and the serial index builders.
ClusterInstance build_cluster_instance(const PlacementInstance& inst, Cost radius,
                                       SplitMix64& rng);

// ---------------------------------------------------------------------------
// Result assembly: exact profile recomputation on the road network, so every
// reported objective is independent of solver-internal estimates.
// ---------------------------------------------------------------------------

// Callers stamp wall_time themselves once their clock stops.
SolverResult finish_result(const PlacementInstance& inst, std::vector<NodeId> selected,
                           std::string algorithm, Problem problem, double gamma,
                           std::uint64_t seed, std::uint64_t work);

} // namespace tips::detail
