#include "tips/avgtips.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "detail.hpp"

namespace tips {

namespace detail {

Cost hcc_swap_ti(const DistanceMatrix& m, std::span<const Cost> b1_val,
                 std::span<const std::uint32_t> b1_src, std::span<const Cost> b2_val,
                 std::uint32_t out_col, std::uint32_t in_col) {
    Cost total = 0;
    for (std::size_t j = 0; j < m.rows; ++j) {
        const Cost kept = b1_src[j] == out_col ? b2_val[j] : b1_val[j];
        total += std::min(kept, m.at(j, in_col));
    }
    return total;
}

BestTwo best_two(const DistanceMatrix& m, std::span<const Cost> baseline,
                 std::span<const std::uint32_t> cols) {
    const std::size_t rows = m.rows;
    BestTwo b;
    b.b1_val.assign(rows, kInfinity);
    b.b2_val.assign(rows, kInfinity);
    b.b1_src.assign(rows, kBaselineSrc);
    for (std::size_t j = 0; j < rows; ++j) {
        Cost v1 = baseline[j], v2 = kInfinity;
        std::uint32_t src = kBaselineSrc;
        for (std::uint32_t c : cols) {
            const Cost v = m.at(j, c);
            if (v < v1) {
                v2 = v1;
                v1 = v;
                src = c;
            } else {
                v2 = std::min(v2, v);
            }
        }
        b.b1_val[j] = v1;
        b.b2_val[j] = v2;
        b.b1_src[j] = src;
    }
    return b;
}

} // namespace detail

namespace {

void check_matrix(const PlacementInstance& inst, const DistanceMatrix& matrix) {
    if (matrix.rows != inst.m() || matrix.cols != inst.n() || matrix.site_ids != inst.sites)
        throw InputError("distance matrix does not cover this instance");
}

Cost total_of(std::span<const Cost> vals) {
    Cost t = 0;
    for (Cost v : vals) t += v;
    return t;
}

} // namespace

SolverResult exact_avgtips(const PlacementInstance& inst, std::size_t k,
                           std::uint64_t budget) {
    detail::Stopwatch watch;
    const std::size_t n = inst.n();
    const std::uint64_t total = detail::checked_subset_count(n, k, budget);

    const DistanceMatrix matrix = build_distance_matrix(inst);
    const std::vector<Cost> baseline = facility_baseline(inst);

    int chunks = 1;
#ifdef _OPENMP
    chunks = std::max(1, omp_get_max_threads() * 4);
#endif
    if (static_cast<std::uint64_t>(chunks) > total)
        chunks = static_cast<int>(std::max<std::uint64_t>(total, 1));

    std::vector<Cost> chunk_obj(chunks, kInfinity);
    std::vector<std::vector<std::uint32_t>> chunk_combo(chunks);

#pragma omp parallel for schedule(dynamic)
    for (int c = 0; c < chunks; ++c) {
        const std::uint64_t lo = total * static_cast<std::uint64_t>(c) / chunks;
        const std::uint64_t hi = total * (static_cast<std::uint64_t>(c) + 1) / chunks;
        if (lo >= hi) continue;
        std::vector<std::uint32_t> idx = detail::unrank_combination(
            static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(k), lo);
        Cost best = kInfinity;
        std::vector<std::uint32_t> best_idx;
        for (std::uint64_t r = lo; r < hi; ++r) {
            const Cost v = detail::subset_ti(matrix, baseline, idx);
            if (r == lo || v < best) {
                best = v;
                best_idx = idx;
            }
            detail::next_combination(idx, static_cast<std::uint32_t>(n));
        }
        chunk_obj[c] = best;
        chunk_combo[c] = std::move(best_idx);
    }

    int winner = -1;
    for (int c = 0; c < chunks; ++c) {
        const std::uint64_t lo = total * static_cast<std::uint64_t>(c) / chunks;
        const std::uint64_t hi = total * (static_cast<std::uint64_t>(c) + 1) / chunks;
        if (lo >= hi) continue;
        if (winner < 0 || chunk_obj[c] < chunk_obj[winner]) winner = c;
    }

    std::vector<NodeId> selected;
    if (winner >= 0)
        for (std::uint32_t i : chunk_combo[winner]) selected.push_back(inst.sites[i]);

    SolverResult result = detail::finish_result(inst, std::move(selected), "exact",
                                                Problem::AvgTips, 1.0, 0, total);
    result.wall_time = watch.seconds();
    return result;
}

SolverResult great(const PlacementInstance& inst, const DistanceMatrix& matrix,
                   std::size_t k) {
    detail::Stopwatch watch;
    check_matrix(inst, matrix);
    const std::size_t n = inst.n();
    const std::size_t m = inst.m();
    if (k > n)
        throw InputError(fmt::format("k = {} exceeds the {} available candidate sites", k, n));

    std::vector<Cost> cur = facility_baseline(inst);
    std::vector<char> chosen(n, 0);
    std::vector<std::uint32_t> picked;
    std::uint64_t work = 0;

    for (std::size_t it = 0; it < k; ++it) {
        const std::int64_t nn = static_cast<std::int64_t>(n);
        Cost best_ti = kInfinity;
        std::int64_t best_col = -1;
        // Candidate evaluations are independent; the reduction key (TI, col)
        // is a total order, so the parallel argmin is deterministic.
#pragma omp parallel
        {
            Cost local_ti = kInfinity;
            std::int64_t local_col = -1;
#pragma omp for schedule(static) nowait
            for (std::int64_t i = 0; i < nn; ++i) {
                if (chosen[static_cast<std::size_t>(i)]) continue;
                Cost ti = 0;
                for (std::size_t j = 0; j < m; ++j)
                    ti += std::min(cur[j], matrix.at(j, static_cast<std::size_t>(i)));
                if (local_col < 0 || ti < local_ti || (ti == local_ti && i < local_col)) {
                    local_ti = ti; // first candidate unconditionally: ∞ TI is still a pick
                    local_col = i;
                }
            }
#pragma omp critical(great_merge)
            {
                if (local_col >= 0 &&
                    (best_col < 0 || local_ti < best_ti ||
                     (local_ti == best_ti && local_col < best_col))) {
                    best_ti = local_ti;
                    best_col = local_col;
                }
            }
        }
        work += static_cast<std::uint64_t>(n - it);
        const auto col = static_cast<std::size_t>(best_col);
        chosen[col] = 1;
        picked.push_back(static_cast<std::uint32_t>(best_col));
        for (std::size_t j = 0; j < m; ++j) cur[j] = std::min(cur[j], matrix.at(j, col));
    }

    std::vector<NodeId> selected;
    for (std::uint32_t i : picked) selected.push_back(inst.sites[i]);
    SolverResult result = detail::finish_result(inst, std::move(selected), "great",
                                                Problem::AvgTips, 1.0, 0, work);
    result.wall_time = watch.seconds();
    return result;
}

SolverResult hcc(const PlacementInstance& inst, const DistanceMatrix& matrix,
                 std::size_t k, const HccParams& params) {
    detail::Stopwatch watch;
    check_matrix(inst, matrix);
    const std::size_t n = inst.n();
    if (k > n)
        throw InputError(fmt::format("k = {} exceeds the {} available candidate sites", k, n));
    if (params.trials < 1) throw InputError("hcc requires at least one trial");
    if (params.max_iterations < 1) throw InputError("hcc requires at least one iteration");
    if (!(params.swap_fraction > 0.0) || !(params.swap_fraction <= 1.0))
        throw InputError(fmt::format("swap fraction must lie in (0, 1], got {}",
                                     params.swap_fraction));

    const std::vector<Cost> baseline = facility_baseline(inst);
    const std::uint64_t pair_count = static_cast<std::uint64_t>(k) * (n - k);

    Cost best_ti = kInfinity;
    std::vector<std::uint32_t> best_cols;
    bool have_best = false;
    std::uint64_t work = 0;

    for (int trial = 0; trial < params.trials; ++trial) {
        SplitMix64 rng = rng_stream(params.seed, 5000 + static_cast<std::uint64_t>(trial));

        // k seeded-random initial medoids, kept sorted (the pair-index
        // mapping below depends on the sorted order).
        std::vector<std::uint32_t> medoids;
        for (std::uint64_t v : detail::sample_distinct(k, n, rng))
            medoids.push_back(static_cast<std::uint32_t>(v));
        std::sort(medoids.begin(), medoids.end());

        detail::BestTwo bt = detail::best_two(matrix, baseline, medoids);
        Cost cur_ti = total_of(bt.b1_val);

        for (int iter = 0; iter < params.max_iterations && pair_count > 0; ++iter) {
            // ceil(sf·k·(n−k)), guarded against an exact product rounding up.
            const std::uint64_t scan = std::clamp<std::uint64_t>(
                static_cast<std::uint64_t>(std::ceil(
                    params.swap_fraction * static_cast<double>(pair_count) - 1e-9)),
                1, pair_count);
            const std::vector<std::uint64_t> picks =
                detail::sample_distinct(scan, pair_count, rng);

            std::vector<std::uint32_t> non_medoids;
            non_medoids.reserve(n - k);
            for (std::uint32_t c = 0, mi = 0; c < n; ++c) {
                if (mi < medoids.size() && medoids[mi] == c) ++mi;
                else non_medoids.push_back(c);
            }

            // Scan the sampled swaps; keep the best by (TI, scan position),
            // a total order, so the parallel scan matches a serial one.
            const std::int64_t sc = static_cast<std::int64_t>(scan);
            Cost swap_ti = kInfinity;
            std::int64_t swap_pos = -1;
#pragma omp parallel
            {
                Cost local_ti = kInfinity;
                std::int64_t local_pos = -1;
#pragma omp for schedule(static) nowait
                for (std::int64_t p = 0; p < sc; ++p) {
                    const std::uint64_t pair = picks[static_cast<std::size_t>(p)];
                    const std::uint32_t out_col =
                        medoids[static_cast<std::size_t>(pair / (n - k))];
                    const std::uint32_t in_col =
                        non_medoids[static_cast<std::size_t>(pair % (n - k))];
                    const Cost ti = detail::hcc_swap_ti(matrix, bt.b1_val, bt.b1_src,
                                                        bt.b2_val, out_col, in_col);
                    if (ti < local_ti || (ti == local_ti && p < local_pos)) {
                        local_ti = ti;
                        local_pos = p;
                    }
                }
#pragma omp critical(hcc_merge)
                {
                    if (local_pos >= 0 &&
                        (swap_pos < 0 || local_ti < swap_ti ||
                         (local_ti == swap_ti && local_pos < swap_pos))) {
                        swap_ti = local_ti;
                        swap_pos = local_pos;
                    }
                }
            }
            work += scan;

            if (swap_pos < 0 || !(swap_ti < cur_ti)) break; // local minimum reached
            const std::uint64_t pair = picks[static_cast<std::size_t>(swap_pos)];
            const std::uint32_t out_col = medoids[static_cast<std::size_t>(pair / (n - k))];
            const std::uint32_t in_col =
                non_medoids[static_cast<std::size_t>(pair % (n - k))];
            medoids.erase(std::find(medoids.begin(), medoids.end(), out_col));
            medoids.insert(std::upper_bound(medoids.begin(), medoids.end(), in_col),
                           in_col);
            bt = detail::best_two(matrix, baseline, medoids);
            cur_ti = total_of(bt.b1_val);
        }

        if (!have_best || cur_ti < best_ti) { // earliest trial wins ties
            have_best = true;
            best_ti = cur_ti;
            best_cols = medoids;
        }
    }

    std::vector<NodeId> selected;
    for (std::uint32_t i : best_cols) selected.push_back(inst.sites[i]);
    SolverResult result = detail::finish_result(inst, std::move(selected), "hcc",
                                                Problem::AvgTips, 1.0, params.seed, work);
    result.wall_time = watch.seconds();
    return result;
}

} // namespace tips
