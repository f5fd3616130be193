#include "tips/sampling.hpp"

#include <algorithm>
#include <cstddef>
#include <fmt/format.h>
#include <utility>
#include <vector>

#include "detail.hpp"

namespace tips {

SiteSample sample_sites(const PlacementInstance& inst, Cost radius, std::uint64_t seed) {
    SplitMix64 rng = rng_stream(seed, 4000);
    detail::Covering cov = detail::build_covering(inst.network, radius, rng);

    constexpr NodeId kNone = static_cast<NodeId>(-1);
    const std::vector<NodeId> reps = detail::cluster_representatives(cov, inst.sites, kNone);

    SiteSample sample;
    sample.radius = radius;
    sample.clusters = std::move(cov.assignment);
    sample.centers = std::move(cov.centers);
    sample.representatives.reserve(reps.size());
    for (NodeId r : reps) {
        if (r == kNone) {
            sample.representatives.emplace_back(std::nullopt);
        } else {
            sample.representatives.emplace_back(r);
            sample.sampled_sites.push_back(r);
        }
    }
    // Each representative lies inside its own cluster, so they are distinct.
    std::sort(sample.sampled_sites.begin(), sample.sampled_sites.end());
    return sample;
}

namespace {

struct FusionCandidate {
    double jaccard;
    std::int64_t id_lo, id_hi; // trajectory ids, ordered
    std::uint32_t idx_a, idx_b; // original indices, idx_a < idx_b

    // Max-heap order: higher similarity first, then the smallest id pair.
    bool operator<(const FusionCandidate& o) const {
        if (jaccard != o.jaccard) return jaccard < o.jaccard;
        if (id_lo != o.id_lo) return id_lo > o.id_lo;
        if (id_hi != o.id_hi) return id_hi > o.id_hi;
        if (idx_a != o.idx_a) return idx_a > o.idx_a;
        return idx_b > o.idx_b;
    }
};

double jaccard_of(const std::vector<NodeId>& a, const std::vector<NodeId>& b) {
    std::size_t inter = 0, i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (b[j] < a[i]) ++j;
        else { ++inter; ++i; ++j; }
    }
    const std::size_t uni = a.size() + b.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

} // namespace

TrajectorySample sample_trajectories(const PlacementInstance& inst,
                                     const SiteSample& site_sample, std::size_t target_size,
                                     std::uint64_t /*seed*/) {
    if (target_size < 1) throw InputError("target size must be at least 1");
    const std::size_t m = inst.m();

    TrajectorySample sample;
    sample.target_size = target_size;
    sample.coarse.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<NodeId>& centers = sample.coarse[j];
        for (NodeId v : inst.trajectories[j].nodes)
            centers.push_back(site_sample.centers[site_sample.clusters[v]]);
        std::sort(centers.begin(), centers.end());
        centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
    }

    if (target_size >= m) {
        sample.representatives = inst.trajectories;
        sample.truncated = target_size > m;
        return sample;
    }

    // All pairwise similarities up front; a fused group keeps the surviving
    // representative's signature, so no pair is ever re-scored — fusions
    // only invalidate entries mentioning the absorbed trajectory.
    const std::size_t pair_count = m * (m - 1) / 2;
    std::vector<FusionCandidate> heap(pair_count);
#pragma omp parallel for schedule(dynamic, 64)
    for (std::ptrdiff_t a = 0; a < static_cast<std::ptrdiff_t>(m) - 1; ++a) {
        // Rank of (a, a+1) among pairs in row-major order.
        std::size_t base = static_cast<std::size_t>(a) * m -
                           static_cast<std::size_t>(a) * (a + 1) / 2;
        for (std::size_t b = a + 1; b < m; ++b) {
            FusionCandidate& c = heap[base + (b - a - 1)];
            c.jaccard = jaccard_of(sample.coarse[a], sample.coarse[b]);
            const std::int64_t ia = inst.trajectories[a].id;
            const std::int64_t ib = inst.trajectories[b].id;
            c.id_lo = std::min(ia, ib);
            c.id_hi = std::max(ia, ib);
            c.idx_a = static_cast<std::uint32_t>(a);
            c.idx_b = static_cast<std::uint32_t>(b);
        }
    }
    std::make_heap(heap.begin(), heap.end());

    std::vector<char> alive(m, 1);
    std::size_t groups = m;
    while (groups > target_size) {
        // pair_count >= 1 whenever groups >= 2, so the heap cannot run dry.
        std::pop_heap(heap.begin(), heap.end());
        const FusionCandidate c = heap.back();
        heap.pop_back();
        if (!alive[c.idx_a] || !alive[c.idx_b]) continue;

        const Trajectory& ta = inst.trajectories[c.idx_a];
        const Trajectory& tb = inst.trajectories[c.idx_b];
        std::uint32_t absorbed = c.idx_b;
        if (tb.nodes.size() > ta.nodes.size() ||
            (tb.nodes.size() == ta.nodes.size() && tb.id < ta.id)) {
            absorbed = c.idx_a; // the longer (then smaller-id) one survives
        }
        alive[absorbed] = 0;
        --groups;
    }

    for (std::size_t j = 0; j < m; ++j)
        if (alive[j]) sample.representatives.push_back(inst.trajectories[j]);
    return sample;
}

PlacementInstance reduced_instance(const PlacementInstance& inst, const SiteSample& sites,
                                   const TrajectorySample& trajectories) {
    if (sites.sampled_sites.empty())
        throw InputError("site sample contains no candidate sites");
    return make_instance(inst.network, trajectories.representatives, sites.sampled_sites,
                         inst.facilities);
}

} // namespace tips
