#include "tips/reference.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <utility>

#include "detail.hpp"

namespace tips::reference {

DistanceMatrix build_distance_matrix(const PlacementInstance& inst) {
    DistanceMatrix mat;
    mat.rows = inst.m();
    mat.cols = inst.n();
    mat.site_ids = inst.sites;
    mat.entries.assign(mat.rows * mat.cols, kInfinity);
    for (std::size_t j = 0; j < mat.rows; ++j) {
        const std::vector<Cost> row = detail::detour_row(inst, j);
        std::copy(row.begin(), row.end(), mat.entries.begin() + j * mat.cols);
    }
    return mat;
}

namespace {

void check_gamma(double gamma) {
    if (!(gamma > 0.0) || !(gamma <= 1.0))
        throw InputError(fmt::format("gamma must lie in (0, 1], got {}", gamma));
}

void check_k(std::size_t k, std::size_t n) {
    if (k > n)
        throw InputError(
            fmt::format("k = {} exceeds the {} available candidate sites", k, n));
}

// One serial sweep over all C(n, k) subsets in rank order, scoring each with
// `score`; strict improvement keeps the lexicographically smallest optimum.
template <typename Score>
std::vector<NodeId> enumerate_best(const PlacementInstance& inst, std::size_t k,
                                   std::uint64_t total, Score&& score) {
    const std::size_t n = inst.n();
    std::vector<std::uint32_t> idx = detail::unrank_combination(
        static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(k), 0);
    Cost best = kInfinity;
    std::vector<std::uint32_t> best_idx;
    for (std::uint64_t r = 0; r < total; ++r) {
        const Cost v = score(idx);
        if (r == 0 || v < best) {
            best = v;
            best_idx = idx;
        }
        detail::next_combination(idx, static_cast<std::uint32_t>(n));
    }
    std::vector<NodeId> selected;
    for (std::uint32_t i : best_idx) selected.push_back(inst.sites[i]);
    return selected;
}

Cost total_of(std::span<const Cost> vals) {
    Cost t = 0;
    for (Cost v : vals) t += v;
    return t;
}

} // namespace

SolverResult exact_maxtips(const PlacementInstance& inst, std::size_t k, double gamma,
                           std::uint64_t budget) {
    detail::Stopwatch watch;
    check_gamma(gamma);
    const std::uint64_t total = detail::checked_subset_count(inst.n(), k, budget);
    const std::size_t rank_count = serve_count(gamma, inst.m());

    const DistanceMatrix matrix = tips::reference::build_distance_matrix(inst);
    const std::vector<Cost> baseline = facility_baseline(inst);

    std::vector<Cost> scratch;
    std::vector<NodeId> selected =
        enumerate_best(inst, k, total, [&](std::span<const std::uint32_t> idx) {
            return detail::subset_mi(matrix, baseline, idx, rank_count, scratch);
        });

    SolverResult result = detail::finish_result(inst, std::move(selected), "exact",
                                                Problem::MaxTips, gamma, 0, total);
    result.wall_time = watch.seconds();
    return result;
}

SolverResult exact_avgtips(const PlacementInstance& inst, std::size_t k,
                           std::uint64_t budget) {
    detail::Stopwatch watch;
    const std::uint64_t total = detail::checked_subset_count(inst.n(), k, budget);

    const DistanceMatrix matrix = tips::reference::build_distance_matrix(inst);
    const std::vector<Cost> baseline = facility_baseline(inst);

    std::vector<NodeId> selected =
        enumerate_best(inst, k, total, [&](std::span<const std::uint32_t> idx) {
            return detail::subset_ti(matrix, baseline, idx);
        });

    SolverResult result = detail::finish_result(inst, std::move(selected), "exact",
                                                Problem::AvgTips, 1.0, 0, total);
    result.wall_time = watch.seconds();
    return result;
}

SolverResult great(const PlacementInstance& inst, const DistanceMatrix& matrix,
                   std::size_t k) {
    detail::Stopwatch watch;
    if (matrix.rows != inst.m() || matrix.cols != inst.n() ||
        matrix.site_ids != inst.sites)
        throw InputError("distance matrix does not cover this instance");
    const std::size_t n = inst.n();
    const std::size_t m = inst.m();
    check_k(k, n);

    std::vector<Cost> cur = facility_baseline(inst);
    std::vector<char> chosen(n, 0);
    std::vector<std::uint32_t> picked;
    std::uint64_t work = 0;

    for (std::size_t it = 0; it < k; ++it) {
        Cost best_ti = kInfinity;
        std::int64_t best_col = -1;
        for (std::size_t i = 0; i < n; ++i) {
            if (chosen[i]) continue;
            Cost ti = 0;
            for (std::size_t j = 0; j < m; ++j) ti += std::min(cur[j], matrix.at(j, i));
            if (best_col < 0 || ti < best_ti) { // ascending i: ties keep the first
                best_ti = ti;
                best_col = static_cast<std::int64_t>(i);
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
    if (matrix.rows != inst.m() || matrix.cols != inst.n() ||
        matrix.site_ids != inst.sites)
        throw InputError("distance matrix does not cover this instance");
    const std::size_t n = inst.n();
    check_k(k, n);
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

        std::vector<std::uint32_t> medoids;
        for (std::uint64_t v : detail::sample_distinct(k, n, rng))
            medoids.push_back(static_cast<std::uint32_t>(v));
        std::sort(medoids.begin(), medoids.end());

        detail::BestTwo bt = detail::best_two(matrix, baseline, medoids);
        Cost cur_ti = total_of(bt.b1_val);

        for (int iter = 0; iter < params.max_iterations && pair_count > 0; ++iter) {
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

            Cost swap_ti = kInfinity;
            std::int64_t swap_pos = -1;
            for (std::size_t p = 0; p < scan; ++p) {
                const std::uint64_t pair = picks[p];
                const std::uint32_t out_col =
                    medoids[static_cast<std::size_t>(pair / (n - k))];
                const std::uint32_t in_col =
                    non_medoids[static_cast<std::size_t>(pair % (n - k))];
                const Cost ti = detail::hcc_swap_ti(matrix, bt.b1_val, bt.b1_src,
                                                    bt.b2_val, out_col, in_col);
                if (ti < swap_ti) { // ascending p: ties keep the first
                    swap_ti = ti;
                    swap_pos = static_cast<std::int64_t>(p);
                }
            }
            work += scan;

            if (swap_pos < 0 || !(swap_ti < cur_ti)) break;
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

        if (!have_best || cur_ti < best_ti) {
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

NetClusIndex build_index(const PlacementInstance& inst, Cost tau_min, Cost tau_max,
                         double epsilon, std::uint64_t seed) {
    if (!(tau_min > 0) || !(tau_min < tau_max))
        throw InputError(fmt::format("invalid radius range [{}, {}]", tau_min, tau_max));
    if (!(epsilon > 0)) throw InputError("epsilon must be positive");

    const double steps = std::log(tau_max / tau_min) / std::log1p(epsilon);
    const int t = static_cast<int>(std::floor(steps + 1e-9)) + 1;

    NetClusIndex index;
    index.tau_min = tau_min;
    index.tau_max = tau_max;
    index.epsilon = epsilon;
    index.seed = seed;
    index.instances.resize(t);
    for (int i = 0; i < t; ++i) {
        SplitMix64 rng = rng_stream(seed, 3000 + static_cast<std::uint64_t>(i));
        const Cost radius = tau_min * std::pow(1.0 + epsilon, i);
        index.instances[i] = detail::build_cluster_instance(inst, radius, rng);
    }
    return index;
}

} // namespace tips::reference
