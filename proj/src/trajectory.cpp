#include "tips/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <utility>

#include "detail.hpp"

namespace tips {

namespace {

std::vector<NodeId> sorted_unique(std::vector<NodeId> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

void check_nodes_valid(std::span<const NodeId> ids, const RoadNetwork& net,
                       const char* what) {
    for (NodeId v : ids) {
        if (v >= net.node_count) {
            throw InputError(fmt::format("{} references node {} outside the network "
                                         "(node count {})",
                                         what, v, net.node_count));
        }
    }
}

// Distinct nodes of a trajectory plus, per original position, the index of
// its node in that distinct list.
struct DistinctNodes {
    std::vector<NodeId> nodes;
    std::vector<std::size_t> position;
};

DistinctNodes distinct_nodes(const Trajectory& t) {
    DistinctNodes d;
    d.nodes = sorted_unique(t.nodes);
    d.position.reserve(t.nodes.size());
    for (NodeId v : t.nodes) {
        d.position.push_back(static_cast<std::size_t>(
            std::lower_bound(d.nodes.begin(), d.nodes.end(), v) - d.nodes.begin()));
    }
    return d;
}

} // namespace

namespace detail {

// Detour of trajectory j given full distance fields toward and away from the
// site: to_s[u] = d(u, s), from_s[u] = d(s, u). Pairs with unreachable base
// legs define no detour; the diagonal (base 0) is always present.
Cost detour_against(const PlacementInstance& inst, std::size_t j,
                    std::span<const Cost> to_s, std::span<const Cost> from_s) {
    const auto& nodes = inst.trajectories[j].nodes;
    const std::size_t l = nodes.size();
    Cost best = kInfinity;
    for (std::size_t a = 0; a < l; ++a) {
        const Cost ta = to_s[nodes[a]];
        if (ta == kInfinity) continue;
        for (std::size_t b = 0; b < l; ++b) {
            const Cost fb = from_s[nodes[b]];
            if (fb == kInfinity) continue;
            const Cost base = inst.base(j, a, b);
            if (base == kInfinity) continue;
            best = std::min(best, ta + fb - base);
        }
    }
    return best < 0 ? 0 : best; // guard against rounding slightly below zero
}

std::vector<Cost> detour_column(const PlacementInstance& inst, NodeId s) {
    const std::vector<Cost> to_s = sssp_reverse(inst.network, s).dist;
    const std::vector<Cost> from_s = sssp(inst.network, s).dist;
    std::vector<Cost> col(inst.m());
    for (std::size_t j = 0; j < inst.m(); ++j)
        col[j] = detour_against(inst, j, to_s, from_s);
    return col;
}

} // namespace detail

namespace {

// Profile of every trajectory against an explicit evaluation set (ascending
// ids); empty set yields the all-unreachable profile. Strict improvement on
// an ascending scan realizes the smallest-id tie-break.
InconvenienceProfile profile_against(const PlacementInstance& inst,
                                     std::span<const NodeId> eval_set) {
    const std::size_t m = inst.m();
    InconvenienceProfile profile;
    profile.values.assign(m, kInfinity);
    profile.serving_site.assign(m, std::nullopt);
    for (NodeId s : eval_set) {
        const std::vector<Cost> col = detail::detour_column(inst, s);
        for (std::size_t j = 0; j < m; ++j) {
            if (col[j] < profile.values[j]) {
                profile.values[j] = col[j];
                profile.serving_site[j] = s;
            }
        }
    }
    return profile;
}

} // namespace

PlacementInstance make_instance(RoadNetwork network, std::vector<Trajectory> trajectories,
                                std::vector<NodeId> sites, std::vector<NodeId> facilities) {
    if (trajectories.empty()) {
        throw InputError("instance requires at least one trajectory");
    }
    for (const Trajectory& t : trajectories) {
        if (t.nodes.empty()) {
            throw InputError(fmt::format("trajectory {} has no nodes", t.id));
        }
        check_nodes_valid(t.nodes, network, "trajectory");
        for (std::size_t i = 1; i < t.nodes.size(); ++i) {
            if (t.nodes[i] == t.nodes[i - 1]) {
                throw InputError(fmt::format("trajectory {} repeats node {} consecutively",
                                             t.id, t.nodes[i]));
            }
        }
    }
    check_nodes_valid(sites, network, "site set");
    check_nodes_valid(facilities, network, "facility set");

    PlacementInstance inst;
    inst.facilities = sorted_unique(std::move(facilities));
    std::vector<NodeId> s = sorted_unique(std::move(sites));
    inst.sites.clear();
    std::set_difference(s.begin(), s.end(), inst.facilities.begin(), inst.facilities.end(),
                        std::back_inserter(inst.sites)); // candidates that already host a facility count as F
    if (inst.sites.empty()) {
        throw InputError("instance requires at least one candidate site not already "
                         "hosting a facility");
    }
    inst.network = std::move(network);
    inst.trajectories = std::move(trajectories);

    inst.base_dist.reserve(inst.trajectories.size());
    for (const Trajectory& t : inst.trajectories) {
        const DistinctNodes d = distinct_nodes(t);
        std::vector<std::vector<Cost>> rows;
        rows.reserve(d.nodes.size());
        for (NodeId u : d.nodes) {
            rows.push_back(sssp_to_targets(inst.network, u, d.nodes));
        }
        const std::size_t l = t.nodes.size();
        std::vector<Cost> flat(l * l);
        for (std::size_t a = 0; a < l; ++a) {
            for (std::size_t b = 0; b < l; ++b) {
                flat[a * l + b] = rows[d.position[a]][d.position[b]];
            }
        }
        inst.base_dist.push_back(std::move(flat));
    }
    return inst;
}

Cost detour_distance(const RoadNetwork& net, const Trajectory& t, NodeId s) {
    if (t.nodes.empty()) throw InputError("detour_distance: empty trajectory");
    check_nodes_valid(t.nodes, net, "trajectory");
    check_nodes_valid(std::span<const NodeId>(&s, 1), net, "site");

    const DistinctNodes d = distinct_nodes(t);
    const std::vector<Cost> to_s = sssp_reverse(net, s).dist;
    const std::vector<Cost> from_s = sssp(net, s).dist;
    std::vector<std::vector<Cost>> base;
    base.reserve(d.nodes.size());
    for (NodeId u : d.nodes) {
        base.push_back(sssp_to_targets(net, u, d.nodes));
    }
    Cost best = kInfinity;
    for (std::size_t a = 0; a < d.nodes.size(); ++a) {
        const Cost ta = to_s[d.nodes[a]];
        if (ta == kInfinity) continue;
        for (std::size_t b = 0; b < d.nodes.size(); ++b) {
            const Cost fb = from_s[d.nodes[b]];
            if (fb == kInfinity) continue;
            if (base[a][b] == kInfinity) continue;
            best = std::min(best, ta + fb - base[a][b]);
        }
    }
    return best < 0 ? 0 : best;
}

Cost trajectory_pair_distance(const RoadNetwork& net, const Trajectory& ti,
                              const Trajectory& tj) {
    if (ti.nodes.empty() || tj.nodes.empty()) {
        throw InputError("trajectory_pair_distance: empty trajectory");
    }
    check_nodes_valid(ti.nodes, net, "trajectory");
    check_nodes_valid(tj.nodes, net, "trajectory");
    const std::vector<NodeId> ui = sorted_unique(ti.nodes);
    const std::vector<NodeId> uj = sorted_unique(tj.nodes);
    Cost best = kInfinity;
    for (NodeId u : ui) {
        const std::vector<Cost> fwd = sssp_to_targets(net, u, uj);
        // d(v, u) for v in uj equals a reverse-graph search from u.
        const std::vector<Cost> rev_all = sssp_reverse(net, u).dist;
        for (std::size_t idx = 0; idx < uj.size(); ++idx) {
            const Cost out = fwd[idx];
            const Cost back = rev_all[uj[idx]];
            if (out == kInfinity || back == kInfinity) continue;
            best = std::min(best, out + back);
        }
        if (best == 0) break; // shared node; cannot improve
    }
    return best;
}

InconvenienceProfile inconvenience_profile(const PlacementInstance& inst,
                                           std::span<const NodeId> q) {
    for (NodeId s : q) {
        if (!std::binary_search(inst.sites.begin(), inst.sites.end(), s)) {
            throw InputError(fmt::format("evaluated site {} is not a candidate site", s));
        }
    }
    std::vector<NodeId> eval(q.begin(), q.end());
    eval.insert(eval.end(), inst.facilities.begin(), inst.facilities.end());
    eval = sorted_unique(std::move(eval));
    if (eval.empty()) {
        throw EmptyFacilitySetError("inconvenience is undefined for an empty site set "
                                    "(no candidates evaluated and no existing facilities)");
    }
    return profile_against(inst, eval);
}

std::size_t serve_count(double gamma, std::size_t m) {
    const auto c = static_cast<std::size_t>(
        std::ceil(gamma * static_cast<double>(m) - 1e-9));
    return std::clamp<std::size_t>(c, 1, m);
}

Cost max_inconvenience(const InconvenienceProfile& profile, double gamma) {
    if (!(gamma > 0.0) || !(gamma <= 1.0)) {
        throw InputError(fmt::format("gamma must lie in (0, 1], got {}", gamma));
    }
    const std::size_t m = profile.values.size();
    if (m == 0) throw InputError("max_inconvenience: empty profile");
    const std::size_t c = serve_count(gamma, m);
    std::vector<Cost> copy = profile.values;
    std::nth_element(copy.begin(), copy.begin() + static_cast<std::ptrdiff_t>(c - 1),
                     copy.end());
    return copy[c - 1];
}

Cost total_inconvenience(const InconvenienceProfile& profile) {
    Cost total = 0;
    for (Cost v : profile.values) total += v;
    return total;
}

Cost avg_inconvenience(const InconvenienceProfile& profile) {
    if (profile.values.empty()) throw InputError("avg_inconvenience: empty profile");
    return total_inconvenience(profile) / static_cast<Cost>(profile.values.size());
}

std::vector<Cost> facility_baseline(const PlacementInstance& inst) {
    return profile_against(inst, inst.facilities).values;
}

} // namespace tips
