#include "tips/maxtips.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <optional>
#include <unordered_map>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "detail.hpp"

namespace tips {

namespace {

void check_gamma(double gamma) {
    if (!(gamma > 0.0) || !(gamma <= 1.0))
        throw InputError(fmt::format("gamma must lie in (0, 1], got {}", gamma));
}

} // namespace

SolverResult exact_maxtips(const PlacementInstance& inst, std::size_t k, double gamma,
                           std::uint64_t budget) {
    detail::Stopwatch watch;
    check_gamma(gamma);
    const std::size_t n = inst.n();
    const std::uint64_t total = detail::checked_subset_count(n, k, budget);
    const std::size_t rank_count = serve_count(gamma, inst.m());

    const DistanceMatrix matrix = build_distance_matrix(inst);
    const std::vector<Cost> baseline = facility_baseline(inst);

    // Deterministic parallel argmin: contiguous rank ranges, merged in range
    // order, strict improvement — yields the lowest-rank (lexicographically
    // smallest) optimal subset regardless of thread count.
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
        std::vector<Cost> scratch;
        Cost best = kInfinity;
        std::vector<std::uint32_t> best_idx;
        for (std::uint64_t r = lo; r < hi; ++r) {
            const Cost v = detail::subset_mi(matrix, baseline, idx, rank_count, scratch);
            if (r == lo || v < best) { // unconditional first: an all-∞ range still has a combo
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
        if (winner < 0 || chunk_obj[c] < chunk_obj[winner]) winner = c; // range order = rank order
    }

    std::vector<NodeId> selected;
    if (winner >= 0)
        for (std::uint32_t i : chunk_combo[winner]) selected.push_back(inst.sites[i]);

    SolverResult result = detail::finish_result(inst, std::move(selected), "exact",
                                                Problem::MaxTips, gamma, 0, total);
    result.wall_time = watch.seconds();
    return result;
}

SolverResult mif(const PlacementInstance& inst, std::size_t k, double gamma,
                 std::uint64_t seed, int restarts) {
    detail::Stopwatch watch;
    check_gamma(gamma);
    if (restarts < 1) throw InputError("mif requires at least one restart");
    const std::size_t n = inst.n();
    const std::size_t m = inst.m();
    if (k > n)
        throw InputError(fmt::format("k = {} exceeds the {} available candidate sites", k, n));

    const std::vector<Cost> baseline = facility_baseline(inst);
    const std::size_t rank = serve_count(gamma, m);
    const bool no_facilities = inst.facilities.empty();

    // Detours of a trajectory to every site, computed lazily and shared by
    // all restarts (the values do not depend on the run).
    std::unordered_map<std::size_t, std::vector<Cost>> rows;
    const auto row_of = [&](std::size_t j) -> const std::vector<Cost>& {
        auto it = rows.find(j);
        if (it == rows.end()) it = rows.emplace(j, detail::detour_row(inst, j)).first;
        return it->second;
    };

    struct Run {
        Cost mi = kInfinity;
        std::vector<std::uint32_t> cols;
    };

    const auto run_once = [&](std::optional<SplitMix64> rng) {
        Run run;
        std::vector<Cost> cur = baseline;
        std::vector<char> chosen(n, 0);
        std::vector<std::pair<Cost, std::size_t>> order(m);
        for (std::size_t it = 0; it < k; ++it) {
            // Target trajectory: the one at the serve-count rank of the
            // current nearest-facility ordering (distance, then id) — except
            // that with no facilities yet at all, the first round has no
            // meaningful ordering and a seeded random trajectory is used.
            std::size_t target;
            if (it == 0 && rng.has_value()) {
                target = static_cast<std::size_t>(rng->bounded(m));
            } else {
                for (std::size_t j = 0; j < m; ++j) order[j] = {cur[j], j};
                auto nth = order.begin() + static_cast<std::ptrdiff_t>(rank - 1);
                std::nth_element(order.begin(), nth, order.end());
                target = nth->second;
            }
            // Nearest unchosen site to the target (detour, then site id).
            const std::vector<Cost>& row = row_of(target);
            std::size_t pick = n; // always overwritten: k <= n unchosen remain
            for (std::size_t i = 0; i < n; ++i) {
                if (chosen[i]) continue;
                if (pick == n || row[i] < row[pick]) pick = i;
            }
            chosen[pick] = 1;
            run.cols.push_back(static_cast<std::uint32_t>(pick));
            const std::vector<Cost> col = detail::detour_column(inst, inst.sites[pick]);
            for (std::size_t j = 0; j < m; ++j) cur[j] = std::min(cur[j], col[j]);
        }
        std::vector<Cost> vals = cur;
        auto nth = vals.begin() + static_cast<std::ptrdiff_t>(rank - 1);
        std::nth_element(vals.begin(), nth, vals.end());
        run.mi = *nth;
        return run;
    };

    Run best;
    std::uint64_t work = 0;
    const int runs = no_facilities ? restarts : 1; // with F fixed, every run is identical
    for (int r = 0; r < runs; ++r) {
        std::optional<SplitMix64> rng;
        if (no_facilities) rng = rng_stream(seed, 1000 + static_cast<std::uint64_t>(r));
        Run run = run_once(rng);
        work += k;
        if (r == 0 || run.mi < best.mi) best = std::move(run); // earliest run wins ties
    }

    std::vector<NodeId> selected;
    for (std::uint32_t i : best.cols) selected.push_back(inst.sites[i]);
    SolverResult result = detail::finish_result(inst, std::move(selected), "mif",
                                                Problem::MaxTips, gamma, seed, work);
    result.wall_time = watch.seconds();
    return result;
}

} // namespace tips
