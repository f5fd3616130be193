#include "detail.hpp"

#include <algorithm>
#include <cassert>
#include <fmt/format.h>
#include <utility>

namespace tips::detail {

std::uint64_t comb_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 c = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        c = c * (n - k + i) / i; // exact: product of i consecutive ints divisible by i!
        if (c > cap) return cap + 1;
    }
    return static_cast<std::uint64_t>(c);
}

std::vector<std::uint32_t> unrank_combination(std::uint32_t n, std::uint32_t k,
                                              std::uint64_t rank) {
    std::vector<std::uint32_t> idx(k);
    std::uint32_t x = 0;
    for (std::uint32_t pos = 0; pos < k; ++pos) {
        for (;; ++x) {
            assert(x < n);
            // Subsets whose element at this position is x: C(n-1-x, k-1-pos).
            // Saturating at rank is enough: saturation implies "take x".
            const std::uint64_t with_x = comb_capped(n - 1 - x, k - 1 - pos, rank);
            if (rank < with_x) break;
            rank -= with_x;
        }
        idx[pos] = x++;
    }
    return idx;
}

std::uint64_t checked_subset_count(std::size_t n, std::size_t k, std::uint64_t budget) {
    if (k > n)
        throw InputError(
            fmt::format("k = {} exceeds the {} available candidate sites", k, n));
    const std::uint64_t total = comb_capped(n, k, budget);
    if (total > budget)
        throw BudgetError(fmt::format(
            "enumerating C({}, {}) k-subsets exceeds the budget of {}", n, k, budget));
    return total;
}

bool next_combination(std::span<std::uint32_t> idx, std::uint32_t n) {
    const std::uint32_t k = static_cast<std::uint32_t>(idx.size());
    std::int64_t i = static_cast<std::int64_t>(k) - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + static_cast<std::uint32_t>(i))
        --i;
    if (i < 0) return false;
    ++idx[static_cast<std::size_t>(i)];
    for (std::size_t j = static_cast<std::size_t>(i) + 1; j < k; ++j)
        idx[j] = idx[j - 1] + 1;
    return true;
}

Cost subset_mi(const DistanceMatrix& m, std::span<const Cost> baseline,
               std::span<const std::uint32_t> subset, std::size_t rank_count,
               std::vector<Cost>& scratch) {
    const std::size_t rows = m.rows;
    scratch.resize(rows);
    for (std::size_t j = 0; j < rows; ++j) {
        Cost v = baseline[j];
        for (std::uint32_t i : subset) v = std::min(v, m.at(j, i));
        scratch[j] = v;
    }
    auto nth = scratch.begin() + static_cast<std::ptrdiff_t>(rank_count - 1);
    std::nth_element(scratch.begin(), nth, scratch.end());
    return *nth;
}

Cost subset_ti(const DistanceMatrix& m, std::span<const Cost> baseline,
               std::span<const std::uint32_t> subset) {
    Cost total = 0;
    for (std::size_t j = 0; j < m.rows; ++j) {
        Cost v = baseline[j];
        for (std::uint32_t i : subset) v = std::min(v, m.at(j, i));
        total += v;
    }
    return total;
}

std::vector<std::uint64_t> sample_distinct(std::uint64_t count, std::uint64_t pool_size,
                                           SplitMix64& rng) {
    assert(count <= pool_size);
    std::vector<std::uint64_t> pool(pool_size);
    for (std::uint64_t i = 0; i < pool_size; ++i) pool[i] = i;
    std::vector<std::uint64_t> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::uint64_t j = i + rng.bounded(pool_size - i);
        std::swap(pool[i], pool[j]);
        out.push_back(pool[i]);
    }
    return out;
}

Covering build_covering(const RoadNetwork& net, Cost radius, SplitMix64& rng) {
    if (!(radius > 0))
        throw InputError("covering radius must be positive");
    const std::uint32_t n = net.node_count;
    constexpr std::uint32_t kUnassigned = static_cast<std::uint32_t>(-1);
    Covering cov;
    cov.assignment.assign(n, kUnassigned);
    cov.center_dist.assign(n, kInfinity);
    std::uint32_t unclustered = n;
    std::vector<NodeId> members;
    while (unclustered > 0) {
        // The idx-th unclustered node in id order becomes the next center.
        std::uint64_t idx = rng.bounded(unclustered);
        NodeId center = 0;
        for (std::uint32_t v = 0; v < n; ++v) {
            if (cov.assignment[v] != kUnassigned) continue;
            if (idx == 0) {
                center = v;
                break;
            }
            --idx;
        }
        const std::uint32_t cluster = static_cast<std::uint32_t>(cov.centers.size());
        cov.centers.push_back(center);
        members.clear();
        std::vector<Cost> into_center; // d(v, center), aligned with members
        for (const auto& [v, d] : nodes_within_reverse(net, center, radius)) {
            if (cov.assignment[v] != kUnassigned) continue;
            cov.assignment[v] = cluster;
            members.push_back(v);
            into_center.push_back(d);
        }
        assert(!members.empty()); // the center itself is always absorbed
        unclustered -= static_cast<std::uint32_t>(members.size());
        const std::vector<Cost> out = sssp_to_targets(net, center, members);
        for (std::size_t i = 0; i < members.size(); ++i)
            cov.center_dist[members[i]] = into_center[i] + out[i];
    }
    return cov;
}

std::vector<NodeId> cluster_representatives(const Covering& cov,
                                            std::span<const NodeId> sites, NodeId no_site) {
    std::vector<NodeId> rep(cov.centers.size(), no_site);
    for (NodeId s : sites) { // ascending ids, so strict improvement keeps the smallest id
        const std::uint32_t c = cov.assignment[s];
        if (rep[c] == no_site || cov.center_dist[s] < cov.center_dist[rep[c]])
            rep[c] = s;
    }
    return rep;
}

SolverResult finish_result(const PlacementInstance& inst, std::vector<NodeId> selected,
                           std::string algorithm, Problem problem, double gamma,
                           std::uint64_t seed, std::uint64_t work) {
    std::sort(selected.begin(), selected.end());
    SolverResult r;
    r.profile = inconvenience_profile(inst, selected);
    r.objective = problem == Problem::MaxTips ? max_inconvenience(r.profile, gamma)
                                              : total_inconvenience(r.profile);
    r.selected = std::move(selected);
    r.algorithm = std::move(algorithm);
    r.seed = seed;
    r.work = work;
    return r;
}

} // namespace tips::detail
