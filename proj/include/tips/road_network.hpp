#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tips/core.hpp"

namespace tips {

struct Edge {
    NodeId from = 0;
    NodeId to = 0;
    Cost length = 0; // meters, >= 0, finite
};

// Directed road graph. A two-way road appears as two edges. Immutable after
// load_network and safe to share across threads; queries allocate their own
// working state.
struct RoadNetwork {
    std::uint32_t node_count = 0;
    std::vector<Edge> edges;

    // CSR adjacency, forward and reverse, built by load_network. Parallel
    // edges are kept as-is; relaxation naturally uses the shortest.
    std::vector<std::uint32_t> fwd_offsets, rev_offsets;
    std::vector<NodeId> fwd_to, rev_to;
    std::vector<Cost> fwd_len, rev_len;

    // Out-neighbors of u, deduplicated and sorted by node id (used by the
    // synthetic walk generator; derived once at load).
    std::vector<std::uint32_t> nbr_offsets;
    std::vector<NodeId> nbr_ids;

    std::span<const NodeId> out_neighbors(NodeId u) const {
        return {nbr_ids.data() + nbr_offsets[u], nbr_ids.data() + nbr_offsets[u + 1]};
    }
};

// One-to-all shortest path distances from a fixed source.
struct DistanceVector {
    NodeId source = 0;
    std::vector<Cost> dist; // dist[v] = d(source, v); infinity = unreachable
};

// Builds the network from raw records. node_count = 1 + max endpoint id.
// Throws NegativeLengthError / InputError on invalid records.
RoadNetwork load_network(const std::vector<Edge>& records);

// Exact directed single-source shortest paths (Dijkstra, binary heap).
DistanceVector sssp(const RoadNetwork& net, NodeId source);

// Shortest paths INTO source: result.dist[v] = d(v, source).
DistanceVector sssp_reverse(const RoadNetwork& net, NodeId source);

// d(source, t) for each t in targets, computed with early termination once
// every target is settled. Order of results matches targets.
std::vector<Cost> sssp_to_targets(const RoadNetwork& net, NodeId source,
                                  std::span<const NodeId> targets);

// Round-trip distance d(u,v) + d(v,u); the symmetric pseudometric every
// detour evaluation is built on. Infinity if either leg is unreachable.
Cost round_trip(const RoadNetwork& net, NodeId u, NodeId v);

// All nodes v with one-way distance d(v, target) <= limit, with those
// distances, sorted by node id. Backs the radius-R covering clusterings.
std::vector<std::pair<NodeId, Cost>> nodes_within_reverse(const RoadNetwork& net,
                                                          NodeId target, Cost limit);

} // namespace tips
