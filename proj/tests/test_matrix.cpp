#include <doctest.h>

#include <vector>

#include "fixtures.hpp"
#include "tips/io.hpp"
#include "tips/matrix.hpp"
#include "tips/reference.hpp"

using namespace tips;

TEST_CASE("distance matrix reproduces the town detour table") {
    const PlacementInstance inst = fixture::demo_instance();
    const DistanceMatrix m = build_distance_matrix(inst);
    REQUIRE(m.rows == 6);
    REQUIRE(m.cols == 4);
    CHECK(m.site_ids == std::vector<NodeId>{1, 2, 3, 4});
    for (std::size_t j = 0; j < m.rows; ++j)
        for (std::size_t i = 0; i < m.cols; ++i)
            CHECK(m.at(j, i) == fixture::kDetour[j][i + 1]);
}

TEST_CASE("matrix entries equal the direct per-pair evaluator") {
    // The matrix builds whole rows from per-node trees; detour_distance walks
    // one (trajectory, site) pair at a time. They must agree bit for bit.
    const PlacementInstance inst = generate_synthetic(6, 5, 2.5, 12, 6, 21);
    const DistanceMatrix m = build_distance_matrix(inst);
    REQUIRE(m.rows == inst.m());
    REQUIRE(m.cols == inst.n());
    for (std::size_t j = 0; j < m.rows; ++j)
        for (std::size_t i = 0; i < m.cols; ++i)
            CHECK(m.at(j, i) ==
                  detour_distance(inst.network, inst.trajectories[j], inst.sites[i]));
}

TEST_CASE("matrix handles directed asymmetry and unreachable pairs") {
    // 0 -> 1 -> 2 -> 0 one-way ring plus a stranded two-node island {3, 4}.
    const RoadNetwork net = load_network({
        {0, 1, 1.0}, {1, 2, 2.0}, {2, 0, 3.0}, {3, 4, 1.0}, {4, 3, 1.0},
    });
    const PlacementInstance inst =
        make_instance(net, {{0, {0, 1}}, {1, {3, 4}}}, {0, 1, 2, 3}, {});
    const DistanceMatrix m = build_distance_matrix(inst);

    // Ring trajectory to ring sites: asymmetric legs, still zero on the path.
    CHECK(m.at(0, 0) == 0.0);
    CHECK(m.at(0, 1) == 0.0);
    CHECK(m.at(0, 2) == detour_distance(net, inst.trajectories[0], 2));
    // Across the split: no detour exists in either direction.
    CHECK(m.at(0, 3) == kInfinity);
    CHECK(m.at(1, 0) == kInfinity);
    CHECK(m.at(1, 3) == 0.0);
}

TEST_CASE("serial reference matrix is bitwise identical") {
    for (std::uint64_t seed : {3, 11}) {
        const PlacementInstance inst = generate_synthetic(5, 5, 1.5, 10, 5, seed);
        const DistanceMatrix a = build_distance_matrix(inst);
        const DistanceMatrix b = reference::build_distance_matrix(inst);
        CHECK(a.rows == b.rows);
        CHECK(a.cols == b.cols);
        CHECK(a.site_ids == b.site_ids);
        CHECK(a.entries == b.entries);
    }
}
