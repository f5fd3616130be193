#include "tips/matrix.hpp"

#include <algorithm>
#include <cstdint>

#include "detail.hpp"

namespace tips {

namespace detail {

// Detour of trajectory j to every candidate site (one matrix row). One
// forward and one reverse shortest-path tree per distinct trajectory node;
// the (leave, rejoin) pair minimization then runs per column.
std::vector<Cost> detour_row(const PlacementInstance& inst, std::size_t j) {
    const std::size_t cols = inst.n();
    const auto& nodes = inst.trajectories[j].nodes;
    std::vector<NodeId> distinct(nodes.begin(), nodes.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<std::size_t> pos(nodes.size());
    for (std::size_t a = 0; a < nodes.size(); ++a)
        pos[a] = static_cast<std::size_t>(
            std::lower_bound(distinct.begin(), distinct.end(), nodes[a]) - distinct.begin());

    // from_node[d][s] = d(distinct[d], s); to_node[d][s] = d(s, distinct[d]).
    std::vector<std::vector<Cost>> from_node, to_node;
    from_node.reserve(distinct.size());
    to_node.reserve(distinct.size());
    for (NodeId u : distinct) {
        from_node.push_back(sssp(inst.network, u).dist);
        to_node.push_back(sssp_reverse(inst.network, u).dist);
    }

    const std::size_t l = nodes.size();
    std::vector<Cost> row(cols);
    for (std::size_t i = 0; i < cols; ++i) {
        const NodeId s = inst.sites[i];
        Cost best = kInfinity;
        for (std::size_t a = 0; a < l; ++a) {
            const Cost leave = from_node[pos[a]][s]; // d(v_a, s)
            if (leave == kInfinity) continue;
            for (std::size_t b = 0; b < l; ++b) {
                const Cost rejoin = to_node[pos[b]][s]; // d(s, v_b)
                if (rejoin == kInfinity) continue;
                const Cost base = inst.base(j, a, b);
                if (base == kInfinity) continue;
                best = std::min(best, leave + rejoin - base);
            }
        }
        row[i] = best < 0 ? 0 : best;
    }
    return row;
}

} // namespace detail

DistanceMatrix build_distance_matrix(const PlacementInstance& inst) {
    DistanceMatrix m;
    m.rows = inst.m();
    m.cols = inst.n();
    m.site_ids = inst.sites;
    m.entries.assign(m.rows * m.cols, kInfinity);

    const std::int64_t rows = static_cast<std::int64_t>(m.rows);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t j = 0; j < rows; ++j) {
        const std::vector<Cost> row =
            detail::detour_row(inst, static_cast<std::size_t>(j));
        std::copy(row.begin(), row.end(),
                  m.entries.begin() + static_cast<std::ptrdiff_t>(j) * m.cols);
    }
    return m;
}

} // namespace tips
