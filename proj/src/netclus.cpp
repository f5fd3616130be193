#include "tips/netclus.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "detail.hpp"

namespace tips {

namespace detail {

ClusterInstance build_cluster_instance(const PlacementInstance& inst, Cost radius,
                                       SplitMix64& rng) {
    Covering cov = build_covering(inst.network, radius, rng);
    ClusterInstance ci;
    ci.radius = radius;
    ci.assignment = std::move(cov.assignment);
    ci.centers = std::move(cov.centers);
    ci.center_dist = std::move(cov.center_dist);
    Covering view{ci.assignment, ci.centers, ci.center_dist};
    ci.representative = cluster_representatives(view, inst.sites, ClusterInstance::kNoSite);

    ci.traj_clusters.resize(inst.m());
    for (std::size_t j = 0; j < inst.m(); ++j) {
        std::map<std::uint32_t, Cost> acc; // cluster -> min round trip to its center
        for (NodeId v : inst.trajectories[j].nodes) {
            const std::uint32_t c = ci.assignment[v];
            const auto [it, fresh] = acc.emplace(c, ci.center_dist[v]);
            if (!fresh) it->second = std::min(it->second, ci.center_dist[v]);
        }
        ci.traj_clusters[j].assign(acc.begin(), acc.end()); // ascending cluster id
    }
    return ci;
}

} // namespace detail

NetClusIndex build_index(const PlacementInstance& inst, Cost tau_min, Cost tau_max,
                         double epsilon, std::uint64_t seed) {
    if (!(tau_min > 0) || !(tau_min < tau_max))
        throw InputError(fmt::format("invalid radius range [{}, {}]", tau_min, tau_max));
    if (!(epsilon > 0)) throw InputError("epsilon must be positive");

    // t = floor(log_{1+eps}(tau_max/tau_min)) + 1, with a guard so an exact
    // power does not round down.
    const double steps = std::log(tau_max / tau_min) / std::log1p(epsilon);
    const int t = static_cast<int>(std::floor(steps + 1e-9)) + 1;

    NetClusIndex index;
    index.tau_min = tau_min;
    index.tau_max = tau_max;
    index.epsilon = epsilon;
    index.seed = seed;
    index.instances.resize(t);

#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < t; ++i) {
        SplitMix64 rng = rng_stream(seed, 3000 + static_cast<std::uint64_t>(i));
        const Cost radius = tau_min * std::pow(1.0 + epsilon, i);
        index.instances[i] = detail::build_cluster_instance(inst, radius, rng);
    }
    return index;
}

CoverageResult tops_query(const NetClusIndex& index, const PlacementInstance& inst,
                          std::size_t k, Cost tau) {
    if (index.instances.empty()) throw InputError("empty index");
    if (!(tau >= index.tau_min) || !(tau <= index.tau_max))
        throw InputError(fmt::format("tau = {} outside the indexed range [{}, {}]", tau,
                                     index.tau_min, index.tau_max));
    // Largest-radius instance still within tau (radii are increasing).
    std::size_t pick = 0;
    for (std::size_t i = 0; i < index.instances.size(); ++i)
        if (index.instances[i].radius <= tau) pick = i;
    const ClusterInstance& ci = index.instances[pick];
    const std::size_t m = inst.m();

    std::vector<char> covered(m, 0);

    // Trajectories already estimated within tau of an existing facility are
    // covered before any pick; the estimate is the same center-hop bound
    // used for representatives.
    const auto estimate = [&](std::size_t j, std::uint32_t cluster, NodeId site) {
        const auto& tc = ci.traj_clusters[j];
        const auto it = std::lower_bound(
            tc.begin(), tc.end(), cluster,
            [](const std::pair<std::uint32_t, Cost>& e, std::uint32_t c) {
                return e.first < c;
            });
        if (it == tc.end() || it->first != cluster) return kInfinity;
        return it->second + ci.center_dist[site];
    };
    for (NodeId f : inst.facilities) {
        const std::uint32_t cf = ci.assignment[f];
        for (std::size_t j = 0; j < m; ++j)
            if (!covered[j] && estimate(j, cf, f) <= tau) covered[j] = 1;
    }

    // Candidates: per-cluster representatives; rep of cluster c covers j iff
    // the estimate through c's center is within tau.
    const std::size_t cluster_count = ci.centers.size();
    std::vector<std::vector<std::uint32_t>> covers(cluster_count);
    for (std::size_t j = 0; j < m; ++j) {
        for (const auto& [c, dist_to_center] : ci.traj_clusters[j]) {
            const NodeId rep = ci.representative[c];
            if (rep == ClusterInstance::kNoSite) continue;
            if (dist_to_center + ci.center_dist[rep] <= tau)
                covers[c].push_back(static_cast<std::uint32_t>(j));
        }
    }

    std::vector<std::uint32_t> candidates; // clusters with a representative
    for (std::uint32_t c = 0; c < cluster_count; ++c)
        if (ci.representative[c] != ClusterInstance::kNoSite) candidates.push_back(c);

    CoverageResult result;
    std::vector<char> used(cluster_count, 0);
    for (std::size_t round = 0; round < k; ++round) {
        std::size_t best_gain = 0;
        std::uint32_t best_cluster = 0;
        NodeId best_site = 0;
        bool found = false;
        for (std::uint32_t c : candidates) {
            if (used[c]) continue;
            std::size_t gain = 0;
            for (std::uint32_t j : covers[c])
                if (!covered[j]) ++gain;
            const NodeId site = ci.representative[c];
            if (!found || gain > best_gain || (gain == best_gain && site < best_site)) {
                found = true;
                best_gain = gain;
                best_cluster = c;
                best_site = site;
            }
        }
        if (!found) break; // no representatives left; |Q| < k
        used[best_cluster] = 1;
        result.selected.push_back(best_site);
        for (std::uint32_t j : covers[best_cluster]) covered[j] = 1;
    }
    std::sort(result.selected.begin(), result.selected.end());
    result.covered = static_cast<std::size_t>(
        std::count(covered.begin(), covered.end(), static_cast<char>(1)));
    return result;
}

SolverResult netclus_maxtips(const NetClusIndex& index, const PlacementInstance& inst,
                             std::size_t k, double gamma, Cost precision) {
    detail::Stopwatch watch;
    if (!(gamma > 0.0) || !(gamma <= 1.0))
        throw InputError(fmt::format("gamma must lie in (0, 1], got {}", gamma));
    if (!(precision > 0)) throw InputError("precision must be positive");

    const std::size_t need = serve_count(gamma, inst.m());
    std::uint64_t work = 0;

    CoverageResult at_max = tops_query(index, inst, k, index.tau_max);
    ++work;
    if (at_max.covered < need) {
        SolverResult result =
            detail::finish_result(inst, std::move(at_max.selected), "netclus",
                                  Problem::MaxTips, gamma, index.seed, work);
        result.infeasible_at_tau_max = true;
        result.wall_time = watch.seconds();
        return result;
    }

    std::vector<NodeId> feasible = std::move(at_max.selected);
    Cost lo = index.tau_min;
    Cost hi = index.tau_max;
    while (hi - lo >= precision) {
        const Cost mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break; // bracket no longer splittable
        CoverageResult r = tops_query(index, inst, k, mid);
        ++work;
        if (r.covered < need) {
            lo = mid;
        } else {
            hi = mid;
            feasible = std::move(r.selected);
        }
    }

    SolverResult result = detail::finish_result(inst, std::move(feasible), "netclus",
                                                Problem::MaxTips, gamma, index.seed, work);
    result.wall_time = watch.seconds();
    return result;
}

// ---------------------------------------------------------------------------
// Text serialization, version 1. Doubles round-trip through fmt::format's
// shortest representation; infinity prints as "inf".
// ---------------------------------------------------------------------------

namespace {

constexpr const char* kMagic = "tips-netclus-index";
constexpr int kVersion = 1;

std::string fmt(Cost v) { return fmt::format("{}", v); }

[[noreturn]] void bad_index(std::size_t line, const std::string& what) {
    throw InputError(fmt::format("index file line {}: {}", line, what));
}

} // namespace

void write_index(std::ostream& out, const NetClusIndex& index) {
    out << kMagic << ' ' << kVersion << '\n';
    out << "tau_min " << fmt(index.tau_min) << '\n';
    out << "tau_max " << fmt(index.tau_max) << '\n';
    out << "epsilon " << fmt::format("{}", index.epsilon) << '\n';
    out << "seed " << index.seed << '\n';
    out << "instances " << index.instances.size() << '\n';
    for (const ClusterInstance& ci : index.instances) {
        out << "instance radius " << fmt(ci.radius) << " clusters " << ci.centers.size()
            << " nodes " << ci.assignment.size() << " trajectories "
            << ci.traj_clusters.size() << '\n';
        out << "centers";
        for (NodeId c : ci.centers) out << ' ' << c;
        out << '\n';
        out << "assignment";
        for (std::uint32_t a : ci.assignment) out << ' ' << a;
        out << '\n';
        out << "center_dist";
        for (Cost d : ci.center_dist) out << ' ' << fmt(d);
        out << '\n';
        out << "representatives";
        for (NodeId r : ci.representative)
            if (r == ClusterInstance::kNoSite) out << " -";
            else out << ' ' << r;
        out << '\n';
        for (const auto& tc : ci.traj_clusters) {
            out << "traj " << tc.size();
            for (const auto& [c, d] : tc) out << ' ' << c << ':' << fmt(d);
            out << '\n';
        }
    }
}

NetClusIndex read_index(std::istream& in) {
    std::size_t lineno = 0;
    std::string line;
    const auto next_line = [&]() -> std::istringstream {
        if (!std::getline(in, line)) bad_index(lineno, "unexpected end of file");
        ++lineno;
        return std::istringstream(line);
    };
    const auto expect_key = [&](std::istringstream& ls, const std::string& key) {
        std::string word;
        if (!(ls >> word) || word != key)
            bad_index(lineno, fmt::format("expected '{}'", key));
    };

    NetClusIndex index;
    {
        auto ls = next_line();
        std::string magic;
        int version = 0;
        if (!(ls >> magic >> version) || magic != kMagic)
            bad_index(lineno, "not an index file");
        if (version != kVersion)
            bad_index(lineno, fmt::format("unsupported version {}", version));
    }
    const auto scalar_line = [&](const char* key) {
        auto ls = next_line();
        expect_key(ls, key);
        std::string value;
        if (!(ls >> value)) bad_index(lineno, "missing value");
        return value;
    };
    index.tau_min = std::stod(scalar_line("tau_min"));
    index.tau_max = std::stod(scalar_line("tau_max"));
    index.epsilon = std::stod(scalar_line("epsilon"));
    index.seed = std::stoull(scalar_line("seed"));
    const std::size_t t = std::stoull(scalar_line("instances"));
    index.instances.resize(t);

    for (std::size_t i = 0; i < t; ++i) {
        ClusterInstance& ci = index.instances[i];
        std::size_t clusters = 0, nodes = 0, trajs = 0;
        {
            auto ls = next_line();
            expect_key(ls, "instance");
            expect_key(ls, "radius");
            std::string radius;
            ls >> radius;
            ci.radius = std::stod(radius);
            expect_key(ls, "clusters");
            ls >> clusters;
            expect_key(ls, "nodes");
            ls >> nodes;
            expect_key(ls, "trajectories");
            ls >> trajs;
            if (!ls) bad_index(lineno, "malformed instance header");
        }
        {
            auto ls = next_line();
            expect_key(ls, "centers");
            ci.centers.resize(clusters);
            for (auto& c : ci.centers)
                if (!(ls >> c)) bad_index(lineno, "short centers line");
        }
        {
            auto ls = next_line();
            expect_key(ls, "assignment");
            ci.assignment.resize(nodes);
            for (auto& a : ci.assignment)
                if (!(ls >> a)) bad_index(lineno, "short assignment line");
        }
        {
            auto ls = next_line();
            expect_key(ls, "center_dist");
            ci.center_dist.resize(nodes);
            for (auto& d : ci.center_dist) {
                std::string v;
                if (!(ls >> v)) bad_index(lineno, "short center_dist line");
                d = std::stod(v);
            }
        }
        {
            auto ls = next_line();
            expect_key(ls, "representatives");
            ci.representative.resize(clusters);
            for (auto& r : ci.representative) {
                std::string v;
                if (!(ls >> v)) bad_index(lineno, "short representatives line");
                r = v == "-" ? ClusterInstance::kNoSite
                             : static_cast<NodeId>(std::stoul(v));
            }
        }
        ci.traj_clusters.resize(trajs);
        for (auto& tc : ci.traj_clusters) {
            auto ls = next_line();
            expect_key(ls, "traj");
            std::size_t count = 0;
            if (!(ls >> count)) bad_index(lineno, "missing cluster count");
            tc.resize(count);
            for (auto& [c, d] : tc) {
                std::string tok;
                if (!(ls >> tok)) bad_index(lineno, "short traj line");
                const auto colon = tok.find(':');
                if (colon == std::string::npos) bad_index(lineno, "expected cluster:dist");
                c = static_cast<std::uint32_t>(std::stoul(tok.substr(0, colon)));
                d = std::stod(tok.substr(colon + 1));
            }
        }
    }
    return index;
}

} // namespace tips
