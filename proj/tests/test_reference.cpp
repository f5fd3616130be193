#include <doctest.h>

#include <sstream>
#include <vector>

#include "fixtures.hpp"
#include "tips/io.hpp"
#include "tips/reference.hpp"

using namespace tips;

namespace {

void check_equal(const SolverResult& a, const SolverResult& b) {
    CHECK(a.selected == b.selected);
    CHECK(a.objective == b.objective);
    CHECK(a.algorithm == b.algorithm);
    CHECK(a.seed == b.seed);
    CHECK(a.work == b.work);
    CHECK(a.profile.values == b.profile.values);
    CHECK(a.profile.serving_site == b.profile.serving_site);
    CHECK(a.infeasible_at_tau_max == b.infeasible_at_tau_max);
}

std::string index_bytes(const NetClusIndex& index) {
    std::ostringstream out;
    write_index(out, index);
    return out.str();
}

// The parallel kernels must agree with their serial twins on every output
// field — identical arithmetic in a reordered schedule, with deterministic
// reductions covering the ties.
void check_instance(const PlacementInstance& inst, Cost tau_min, Cost tau_max) {
    const DistanceMatrix par_mat = build_distance_matrix(inst);
    const DistanceMatrix ser_mat = reference::build_distance_matrix(inst);
    CHECK(par_mat.rows == ser_mat.rows);
    CHECK(par_mat.cols == ser_mat.cols);
    CHECK(par_mat.site_ids == ser_mat.site_ids);
    CHECK(par_mat.entries == ser_mat.entries);

    for (const double gamma : {1.0, 0.8})
        check_equal(exact_maxtips(inst, 2, gamma), reference::exact_maxtips(inst, 2, gamma));
    check_equal(exact_avgtips(inst, 2), reference::exact_avgtips(inst, 2));

    const std::size_t k = std::min<std::size_t>(3, inst.n());
    check_equal(great(inst, par_mat, k), reference::great(inst, ser_mat, k));

    HccParams params;
    params.trials = 2;
    params.max_iterations = 10;
    params.swap_fraction = 0.3;
    params.seed = 5;
    check_equal(hcc(inst, par_mat, k, params), reference::hcc(inst, ser_mat, k, params));

    const NetClusIndex par_idx = build_index(inst, tau_min, tau_max, 0.75, 9);
    const NetClusIndex ser_idx = reference::build_index(inst, tau_min, tau_max, 0.75, 9);
    CHECK(index_bytes(par_idx) == index_bytes(ser_idx));
    check_equal(netclus_maxtips(par_idx, inst, 2, 1.0, default_precision(tau_min)),
                netclus_maxtips(ser_idx, inst, 2, 1.0, default_precision(tau_min)));
}

} // namespace

TEST_CASE("serial twins agree on the town fixture") {
    check_instance(fixture::demo_instance(), 1.0, 64.0);
}

TEST_CASE("serial twins agree on a synthetic city with facilities") {
    const PlacementInstance city = fixture::with_facilities(
        generate_synthetic(7, 6, 20.0, 14, 6, 3), {0, 5});
    check_instance(city, 50.0, 800.0);
}

TEST_CASE("serial twins agree on an open synthetic city") {
    check_instance(generate_synthetic(5, 5, 10.0, 10, 5, 21), 30.0, 400.0);
}
