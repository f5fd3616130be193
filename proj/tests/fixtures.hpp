#pragma once

// Shared hand-checked fixture: a 12-node town with one existing facility
// (node 0), four candidate sites (nodes 1..4) and six short trajectories.
// Every frozen table below was verified against an independent
// Floyd-Warshall / pair-enumeration brute force before being pinned, and the
// suites re-derive the same numbers with in-test oracles where practical.

#include <cstddef>
#include <numeric>
#include <vector>

#include "tips/road_network.hpp"
#include "tips/trajectory.hpp"

namespace fixture {

using tips::Cost;
using tips::Edge;
using tips::NodeId;

inline void two_way(std::vector<Edge>& edges, NodeId a, NodeId b, Cost len) {
    edges.push_back({a, b, len});
    edges.push_back({b, a, len});
}

// The demo town: 13 two-way street segments, lengths in meters.
inline std::vector<Edge> demo_edges() {
    std::vector<Edge> e;
    two_way(e, 0, 5, 1);
    two_way(e, 0, 1, 2);
    two_way(e, 5, 1, 2);
    two_way(e, 1, 2, 7);
    two_way(e, 2, 6, 1);
    two_way(e, 6, 3, 5);
    two_way(e, 2, 7, 4);
    two_way(e, 3, 8, 3);
    two_way(e, 3, 9, 1);
    two_way(e, 3, 11, 9);
    two_way(e, 11, 4, 4);
    two_way(e, 11, 10, 3);
    two_way(e, 10, 1, 8);
    return e;
}

inline std::vector<tips::Trajectory> demo_trajectories() {
    return {
        {1, {5, 1}}, {2, {2, 6}}, {3, {7, 2}},
        {4, {3, 8}}, {5, {9}},    {6, {10, 11}},
    };
}

// Candidate sites 1..4 with facility 0 already in operation.
inline tips::PlacementInstance demo_instance() {
    return tips::make_instance(tips::load_network(demo_edges()), demo_trajectories(),
                               {1, 2, 3, 4}, {0});
}

// Same town, same candidates, nothing built yet (exercises the F = empty paths).
inline tips::PlacementInstance demo_instance_open() {
    return tips::make_instance(tips::load_network(demo_edges()), demo_trajectories(),
                               {1, 2, 3, 4}, {});
}

// Rebuilds an instance over the same network and trajectories with every node
// a candidate except the given facilities.
inline tips::PlacementInstance with_facilities(const tips::PlacementInstance& inst,
                                               std::vector<NodeId> facilities) {
    std::vector<NodeId> sites(inst.network.node_count);
    std::iota(sites.begin(), sites.end(), NodeId{0});
    return tips::make_instance(inst.network, inst.trajectories, std::move(sites),
                               std::move(facilities));
}

// Detour of trajectory row (T1..T6 = rows 0..5) to node column (0..4).
inline constexpr double kDetour[6][5] = {
    {1, 0, 14, 26, 30},  //
    {18, 14, 0, 10, 36}, //
    {18, 14, 0, 12, 38}, //
    {30, 26, 12, 0, 26}, //
    {32, 28, 14, 2, 28}, //
    {20, 16, 27, 18, 8}, //
};

// Inconvenience against the existing facility alone (kDetour column 0).
inline constexpr double kBaseline[6] = {1, 18, 18, 30, 32, 20};

// Every k = 2 candidate pair, scored together with the facility: the
// gamma = 1 quantile, the gamma = 0.8 quantile, and the total.
struct PairScore {
    NodeId a, b;
    double mi_full, mi_08, ti;
};
inline constexpr PairScore kPairs[6] = {
    {1, 2, 16, 14, 42}, {1, 3, 16, 12, 40}, {1, 4, 28, 26, 90},
    {2, 3, 18, 2, 21},  {2, 4, 14, 12, 35}, {3, 4, 12, 10, 33},
};

// Every single candidate, scored with the facility.
struct SingleScore {
    NodeId s;
    double mi_full, ti;
};
inline constexpr SingleScore kSingles[4] = {
    {1, 28, 98}, {2, 20, 47}, {3, 18, 43}, {4, 28, 99}};

// Brute-force detour oracle: scans every ordered node pair of the trajectory
// (including a node with itself) over full shortest-path trees, skipping
// pairs whose base leg is unreachable.
inline Cost detour_oracle(const tips::RoadNetwork& net, const tips::Trajectory& t,
                          NodeId s) {
    const std::vector<Cost> to_s = tips::sssp_reverse(net, s).dist;
    const std::vector<Cost> from_s = tips::sssp(net, s).dist;
    Cost best = tips::kInfinity;
    for (NodeId a : t.nodes) {
        const std::vector<Cost> base = tips::sssp(net, a).dist;
        for (NodeId b : t.nodes) {
            if (to_s[a] == tips::kInfinity || from_s[b] == tips::kInfinity ||
                base[b] == tips::kInfinity)
                continue;
            best = std::min(best, to_s[a] + from_s[b] - base[b]);
        }
    }
    return best < 0 ? 0 : best;
}

} // namespace fixture
