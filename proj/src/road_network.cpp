#include "tips/road_network.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <utility>

namespace tips {

namespace {

// Builds one CSR direction from (key node -> (adjacent node, length)) pairs.
void build_csr(std::uint32_t node_count, const std::vector<Edge>& edges, bool forward,
               std::vector<std::uint32_t>& offsets, std::vector<NodeId>& to,
               std::vector<Cost>& len) {
    offsets.assign(node_count + 1, 0);
    for (const Edge& e : edges)
        ++offsets[(forward ? e.from : e.to) + 1];
    for (std::uint32_t i = 0; i < node_count; ++i)
        offsets[i + 1] += offsets[i];
    to.resize(edges.size());
    len.resize(edges.size());
    std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
    for (const Edge& e : edges) {
        const NodeId key = forward ? e.from : e.to;
        const std::uint32_t slot = cursor[key]++;
        to[slot] = forward ? e.to : e.from;
        len[slot] = e.length;
    }
}

struct HeapEntry {
    Cost dist;
    NodeId node;
    bool operator>(const HeapEntry& o) const {
        return dist > o.dist || (dist == o.dist && node > o.node);
    }
};

using MinHeap = std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>>;

// Core Dijkstra over one CSR direction. If settle_targets is non-null, stops
// as soon as all of them are settled.
std::vector<Cost> dijkstra(std::uint32_t node_count, const std::vector<std::uint32_t>& offsets,
                           const std::vector<NodeId>& to, const std::vector<Cost>& len,
                           NodeId source, const std::vector<NodeId>* settle_targets = nullptr) {
    std::vector<Cost> dist(node_count, kInfinity);
    dist[source] = 0;
    MinHeap heap;
    heap.push({0, source});
    std::size_t remaining = 0;
    std::vector<char> want;
    if (settle_targets) {
        want.assign(node_count, 0);
        for (NodeId t : *settle_targets)
            if (!want[t]) {
                want[t] = 1;
                ++remaining;
            }
    }
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u])
            continue; // stale entry
        if (settle_targets && want[u]) {
            want[u] = 0;
            if (--remaining == 0)
                break;
        }
        for (std::uint32_t i = offsets[u]; i < offsets[u + 1]; ++i) {
            const Cost nd = d + len[i];
            if (nd < dist[to[i]]) {
                dist[to[i]] = nd;
                heap.push({nd, to[i]});
            }
        }
    }
    return dist;
}

} // namespace

RoadNetwork load_network(const std::vector<Edge>& records) {
    if (records.empty())
        throw InputError("load_network: empty edge record set");
    std::uint32_t max_node = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const Edge& e = records[i];
        if (!(e.length >= 0) || !std::isfinite(e.length))
            throw NegativeLengthError("load_network: record " + std::to_string(i) +
                                      " has negative or non-finite length");
        max_node = std::max({max_node, e.from, e.to});
    }
    RoadNetwork net;
    net.node_count = max_node + 1;
    net.edges = records;
    build_csr(net.node_count, net.edges, true, net.fwd_offsets, net.fwd_to, net.fwd_len);
    build_csr(net.node_count, net.edges, false, net.rev_offsets, net.rev_to, net.rev_len);

    // Deduplicated, sorted out-neighbor lists.
    net.nbr_offsets.assign(net.node_count + 1, 0);
    net.nbr_ids.reserve(net.edges.size());
    for (std::uint32_t u = 0; u < net.node_count; ++u) {
        std::vector<NodeId> nbrs(net.fwd_to.begin() + net.fwd_offsets[u],
                                 net.fwd_to.begin() + net.fwd_offsets[u + 1]);
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
        net.nbr_ids.insert(net.nbr_ids.end(), nbrs.begin(), nbrs.end());
        net.nbr_offsets[u + 1] = static_cast<std::uint32_t>(net.nbr_ids.size());
    }
    return net;
}

DistanceVector sssp(const RoadNetwork& net, NodeId source) {
    if (source >= net.node_count)
        throw InputError("sssp: invalid source node " + std::to_string(source));
    return {source, dijkstra(net.node_count, net.fwd_offsets, net.fwd_to, net.fwd_len, source)};
}

DistanceVector sssp_reverse(const RoadNetwork& net, NodeId source) {
    if (source >= net.node_count)
        throw InputError("sssp_reverse: invalid source node " + std::to_string(source));
    return {source, dijkstra(net.node_count, net.rev_offsets, net.rev_to, net.rev_len, source)};
}

std::vector<Cost> sssp_to_targets(const RoadNetwork& net, NodeId source,
                                  std::span<const NodeId> targets) {
    if (source >= net.node_count)
        throw InputError("sssp_to_targets: invalid source node " + std::to_string(source));
    std::vector<NodeId> want(targets.begin(), targets.end());
    const std::vector<Cost> dist =
        dijkstra(net.node_count, net.fwd_offsets, net.fwd_to, net.fwd_len, source, &want);
    std::vector<Cost> out;
    out.reserve(targets.size());
    for (NodeId t : targets)
        out.push_back(dist[t]);
    return out;
}

std::vector<std::pair<NodeId, Cost>> nodes_within_reverse(const RoadNetwork& net,
                                                          NodeId target, Cost limit) {
    if (target >= net.node_count)
        throw InputError("nodes_within_reverse: invalid node " + std::to_string(target));
    std::vector<Cost> dist(net.node_count, kInfinity);
    dist[target] = 0;
    MinHeap heap;
    heap.push({0, target});
    std::vector<std::pair<NodeId, Cost>> out;
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u])
            continue;
        if (d > limit)
            break; // heap is monotone; nothing closer remains
        out.emplace_back(u, d);
        for (std::uint32_t i = net.rev_offsets[u]; i < net.rev_offsets[u + 1]; ++i) {
            const Cost nd = d + net.rev_len[i];
            if (nd < dist[net.rev_to[i]]) {
                dist[net.rev_to[i]] = nd;
                heap.push({nd, net.rev_to[i]});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Cost round_trip(const RoadNetwork& net, NodeId u, NodeId v) {
    if (u >= net.node_count || v >= net.node_count)
        throw InputError("round_trip: invalid node id");
    if (u == v)
        return 0;
    const std::vector<NodeId> tv{v};
    const std::vector<NodeId> tu{u};
    const Cost out = sssp_to_targets(net, u, tv)[0];
    const Cost back = sssp_to_targets(net, v, tu)[0];
    return out + back; // inf + finite = inf, as intended
}

} // namespace tips
