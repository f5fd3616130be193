#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tips/core.hpp"
#include "tips/road_network.hpp"

namespace tips {

// An ordered node sequence one user travels along. A single node is a valid
// trajectory (a static user).
struct Trajectory {
    std::int64_t id = 0;
    std::vector<NodeId> nodes; // nonempty, no two consecutive nodes equal
};

// One placement problem: a network, the trajectories to serve, the candidate
// sites S and the existing facilities F. Candidates overlapping F are treated
// as facilities, so sites and facilities are disjoint after construction.
//
// base_dist caches, per trajectory, the pairwise shortest-path distances
// between its own nodes (row-major l×l, d(nodes[a], nodes[b])). Every detour
// evaluation needs those, so they are computed once at construction; all
// evaluators stay pure functions of an immutable instance.
struct PlacementInstance {
    RoadNetwork network;
    std::vector<Trajectory> trajectories; // m >= 1
    std::vector<NodeId> sites;            // S, sorted ascending, disjoint from F
    std::vector<NodeId> facilities;       // F, sorted ascending, possibly empty
    std::vector<std::vector<Cost>> base_dist;

    std::size_t m() const { return trajectories.size(); }
    std::size_t n() const { return sites.size(); }
    Cost base(std::size_t traj, std::size_t a, std::size_t b) const {
        return base_dist[traj][a * trajectories[traj].nodes.size() + b];
    }
};

// Validates and assembles an instance (sorts/dedupes S and F, removes S∩F
// from S, precomputes base_dist). Throws InputError on any invariant breach.
PlacementInstance make_instance(RoadNetwork network, std::vector<Trajectory> trajectories,
                                std::vector<NodeId> sites, std::vector<NodeId> facilities);

// Per-trajectory inconvenience against one evaluated site set: values[j] is
// the least detour of trajectory j to any of the sites, serving_site[j] the
// site attaining it (smallest node id on ties; nullopt when unreachable).
struct InconvenienceProfile {
    std::vector<Cost> values;
    std::vector<std::optional<NodeId>> serving_site;
};

// Least extra distance the user of T pays to leave the trajectory at some
// node v_a, visit s, and rejoin at some node v_b:
//
//     min over node pairs (v_a, v_b) of  d(v_a,s) + d(s,v_b) − d(v_a,v_b)
//
// The pair ranges over ALL ordered pairs including v_a = v_b (a pure
// round-trip from one node); pairs whose base leg d(v_a,v_b) is unreachable
// do not define a detour and are skipped. Always >= 0 by the directed
// triangle inequality; 0 whenever s lies on T.
Cost detour_distance(const RoadNetwork& net, const Trajectory& t, NodeId s);

// Smallest round-trip distance between any node of T_i and any node of T_j;
// 0 if they share a node.
Cost trajectory_pair_distance(const RoadNetwork& net, const Trajectory& ti,
                              const Trajectory& tj);

// Inconvenience of every trajectory against Q ∪ F. Throws
// EmptyFacilitySetError when Q ∪ F is empty. Q must be a subset of S.
InconvenienceProfile inconvenience_profile(const PlacementInstance& inst,
                                           std::span<const NodeId> q);

// Number of trajectories that must be served at user-fraction gamma:
// ceil(gamma * m), clamped to [1, m]. Guarded against floating error so an
// exactly-integer product never rounds up.
std::size_t serve_count(double gamma, std::size_t m);

// The gamma-quantile objective: the serve_count(gamma,m)-th smallest
// inconvenience, i.e. the maximum over the best-served ceil(gamma*m)
// trajectories. gamma must be in (0, 1].
Cost max_inconvenience(const InconvenienceProfile& profile, double gamma);

// Sum / mean of all inconveniences.
Cost total_inconvenience(const InconvenienceProfile& profile);
Cost avg_inconvenience(const InconvenienceProfile& profile);

// Inconvenience of every trajectory against F alone; all-infinity when F is
// empty. Shared by the solvers as the fixed part of every evaluation.
std::vector<Cost> facility_baseline(const PlacementInstance& inst);

} // namespace tips
