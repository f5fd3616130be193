#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "tips/io.hpp"

using namespace tips;

namespace {

constexpr const char* kDemoDir = TIPS_TESTDATA_DIR "/demo";

InstancePaths demo_paths() {
    return {std::string(kDemoDir) + "/edges.txt",
            std::string(kDemoDir) + "/trajectories.txt",
            std::string(kDemoDir) + "/sites.txt",
            std::string(kDemoDir) + "/facilities.txt"};
}

// A file in the test working directory, removed on scope exit.
struct TempFile {
    std::string path;
    TempFile(std::string name, const std::string& content) : path(std::move(name)) {
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

std::size_t count_substr(const std::string& hay, const std::string& needle) {
    std::size_t count = 0;
    for (auto pos = hay.find(needle); pos != std::string::npos;
         pos = hay.find(needle, pos + needle.size()))
        ++count;
    return count;
}

std::string section(const std::string& text, const std::string& from,
                    const std::string& to) {
    const auto a = text.find(from);
    REQUIRE(a != std::string::npos);
    const auto b = text.find(to, a);
    REQUIRE(b != std::string::npos);
    return text.substr(a + from.size(), b - a - from.size());
}

} // namespace

TEST_CASE("edge files parse with comments and round-trip") {
    const auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return parse_edges(in, "e");
    };

    const std::vector<Edge> edges = parse("# demo\n0 5 1.0\n5 0 1  # back\n0 1 0.1\n\n");
    REQUIRE(edges.size() == 3);
    CHECK(edges[0].from == 0);
    CHECK(edges[0].to == 5);
    CHECK(edges[0].length == 1.0);
    CHECK(edges[2].length == 0.1);
    CHECK(parse("0 1 0\n")[0].length == 0.0); // zero-length streets are legal

    std::ostringstream first;
    write_edges(first, edges);
    std::istringstream back(first.str());
    std::ostringstream second;
    write_edges(second, parse_edges(back, "e"));
    CHECK(first.str() == second.str());

    CHECK_THROWS_WITH_AS(parse("0 1\n"), "e:1: expected 'from to length'", InputError);
    CHECK_THROWS_WITH_AS(parse("0 1 2\nx y z\n"), "e:2: expected 'from to length'",
                         InputError);
    CHECK_THROWS_WITH_AS(parse("0 1 2 junk\n"), "e:1: unexpected token 'junk'",
                         InputError);
    CHECK_THROWS_WITH_AS(parse("0 1 -2\n"),
                         "e:1: edge length -2 is not a non-negative number",
                         NegativeLengthError);
}

TEST_CASE("trajectory files parse with comments and round-trip") {
    const auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return parse_trajectories(in, "t");
    };

    const std::vector<Trajectory> trajs = parse("7: 1 2 3\n# x\n9: 4\n-3: 2 1 2\n");
    REQUIRE(trajs.size() == 3);
    CHECK(trajs[0].id == 7);
    CHECK(trajs[0].nodes == std::vector<NodeId>{1, 2, 3});
    CHECK(trajs[1].id == 9);
    CHECK(trajs[1].nodes == std::vector<NodeId>{4});
    CHECK(trajs[2].id == -3);
    CHECK(trajs[2].nodes == std::vector<NodeId>{2, 1, 2}); // revisits are fine

    std::ostringstream first;
    write_trajectories(first, trajs);
    std::istringstream back(first.str());
    std::ostringstream second;
    write_trajectories(second, parse_trajectories(back, "t"));
    CHECK(first.str() == second.str());

    CHECK_THROWS_WITH_AS(parse("1 2 3\n"), "t:1: expected 'id: n1 n2 ...'", InputError);
    CHECK_THROWS_WITH_AS(parse("x: 1\n"), "t:1: bad trajectory id", InputError);
    CHECK_THROWS_WITH_AS(parse("7 8: 1\n"), "t:1: unexpected token '8'", InputError);
    CHECK_THROWS_WITH_AS(parse("7: 1 x\n"), "t:1: bad node id", InputError);
    CHECK_THROWS_WITH_AS(parse("7: 1 1\n"), "t:1: consecutive duplicate node 1",
                         InputError);
    CHECK_THROWS_WITH_AS(parse("7:\n"), "t:1: trajectory has no nodes", InputError);
}

TEST_CASE("node-set files parse in file order and round-trip") {
    const auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return parse_node_set(in, "s");
    };

    CHECK(parse("3\n1\n# c\n 2\n") == std::vector<NodeId>{3, 1, 2});

    std::ostringstream first;
    write_node_set(first, {3, 1, 2});
    std::istringstream back(first.str());
    std::ostringstream second;
    write_node_set(second, parse_node_set(back, "s"));
    CHECK(first.str() == second.str());

    CHECK_THROWS_WITH_AS(parse("x\n"), "s:1: expected a node id", InputError);
    CHECK_THROWS_WITH_AS(parse("3 4\n"), "s:1: unexpected token '4'", InputError);
}

TEST_CASE("parse_instance loads the shipped demo town") {
    const PlacementInstance inst = parse_instance(demo_paths());
    CHECK(inst.m() == 6);
    CHECK(inst.sites == std::vector<NodeId>{1, 2, 3, 4});
    CHECK(inst.facilities == std::vector<NodeId>{0});
    CHECK(inst.network.node_count == 12);
    const std::vector<Cost> baseline = facility_baseline(inst);
    for (std::size_t j = 0; j < 6; ++j) CHECK(baseline[j] == fixture::kBaseline[j]);

    // Without a sites file every non-facility node is a candidate.
    InstancePaths open = demo_paths();
    open.sites.reset();
    const PlacementInstance all_sites = parse_instance(open);
    CHECK(all_sites.n() == 11); // 12 nodes minus the existing facility
    CHECK(!std::count(all_sites.sites.begin(), all_sites.sites.end(), NodeId{0}));

    // Without a facilities file the instance starts from scratch.
    InstancePaths fresh = demo_paths();
    fresh.facilities.reset();
    CHECK(parse_instance(fresh).facilities.empty());
}

TEST_CASE("parse_instance failure modes") {
    InstancePaths missing = demo_paths();
    missing.edges = "io_tmp_nonexistent.txt";
    CHECK_THROWS_WITH_AS(parse_instance(missing), "io_tmp_nonexistent.txt: cannot open",
                         InputError);

    const TempFile empty_edges("io_tmp_empty_edges.txt", "# nothing here\n");
    InstancePaths no_edges = demo_paths();
    no_edges.edges = empty_edges.path;
    CHECK_THROWS_WITH_AS(parse_instance(no_edges), "io_tmp_empty_edges.txt: no edges",
                         InputError);

    const TempFile edges("io_tmp_edges.txt", "0 1 2\n1 2 3\n");
    const TempFile bad_traj("io_tmp_traj.txt", "7: 0 99\n");
    InstancePaths stray{edges.path, bad_traj.path, std::nullopt, std::nullopt};
    CHECK_THROWS_WITH_AS(parse_instance(stray),
                         "io_tmp_traj.txt: trajectory 7 references node 99, but the "
                         "network has nodes 0..2",
                         InputError);

    const TempFile traj("io_tmp_traj_ok.txt", "7: 0 1\n");
    const TempFile bad_sites("io_tmp_sites.txt", "99\n");
    InstancePaths range{edges.path, traj.path, bad_sites.path, std::nullopt};
    CHECK_THROWS_WITH_AS(parse_instance(range),
                         "io_tmp_sites.txt: node 99 is not in the network (nodes are "
                         "0..2)",
                         InputError);
}

TEST_CASE("total-detour model export") {
    const PlacementInstance inst = fixture::demo_instance();
    const std::string lp = export_ilp(inst, Problem::AvgTips, 2, 0.0); // gamma unused

    CHECK(lp.rfind("\\ trajectory placement model: min-total detour, k = 2\n"
                   "\\ 5 sites (1 existing), 6 trajectories\n",
                   0) == 0);
    // First objective coefficient: the existing facility serving the first
    // trajectory at one meter.
    CHECK(lp.find("obj: 1.000 y_0_0 +") != std::string::npos);
    CHECK(lp.find("\n   + ") != std::string::npos); // long sums wrap
    CHECK(lp.find(" card: x_0 + x_1 + x_2 + x_3 + x_4 <= 3\n") != std::string::npos);
    CHECK(lp.find(" srv_5: y_0_5 + y_1_5 + y_2_5 + y_3_5 + y_4_5 = 1\n") !=
          std::string::npos);
    CHECK(lp.find(" opn_4_5: y_4_5 - x_4 <= 0\n") != std::string::npos);
    CHECK(lp.find(" fix_0: x_0 = 1\n") != std::string::npos);
    CHECK(lp.find("mz_") == std::string::npos);
    CHECK(lp.find(" cov: ") == std::string::npos);
    CHECK(lp.find(", gamma") == std::string::npos);

    // One binary per site plus one per (site, trajectory) pair.
    const std::string binaries = section(lp, "Binary\n", "End\n");
    CHECK(std::count(binaries.begin(), binaries.end(), '\n') == 5 + 5 * 6);
    CHECK(lp.substr(lp.size() - 4) == "End\n");
}

TEST_CASE("quantile model export") {
    const PlacementInstance inst = fixture::demo_instance();
    const std::string lp = export_ilp(inst, Problem::MaxTips, 2, 0.8);

    CHECK(lp.rfind("\\ trajectory placement model: min-max detour, k = 2, gamma = 0.8\n",
                   0) == 0);
    CHECK(lp.find("Minimize\n obj: Z\nSubject To\n") != std::string::npos);
    CHECK(count_substr(lp, " mz_") == 5);
    CHECK(lp.find(" mz_0: Z - z_0 >= 0\n") != std::string::npos);
    CHECK(count_substr(lp, " ld_") == 30);
    CHECK(lp.find(" ld_2_4: z_2 - 14.000 y_2_4 >= 0\n") != std::string::npos);
    CHECK(lp.find(" srv_0: y_0_0 + y_1_0 + y_2_0 + y_3_0 + y_4_0 <= 1\n") !=
          std::string::npos);
    // Service floor: at least gamma·m of the six users must be assigned.
    CHECK(lp.find(" cov: ") != std::string::npos);
    CHECK(lp.find(" >= 4.8") != std::string::npos);

    const std::string full = export_ilp(inst, Problem::MaxTips, 2, 1.0);
    CHECK(full.find(" >= 6\n") != std::string::npos);

    CHECK_THROWS_WITH_AS(export_ilp(inst, Problem::MaxTips, 2, 0.0),
                         "gamma must lie in (0, 1], got 0", InputError);
}

TEST_CASE("model export refuses unreachable pairs") {
    std::vector<Edge> edges = fixture::demo_edges();
    fixture::two_way(edges, 12, 13, 1.0);
    std::vector<Trajectory> trajectories = fixture::demo_trajectories();
    trajectories.push_back({7, {12, 13}});
    const PlacementInstance inst =
        make_instance(load_network(edges), trajectories, {1, 2, 3, 4}, {0});
    CHECK_THROWS_WITH_AS(
        export_ilp(inst, Problem::AvgTips, 2, 0.0),
        "trajectory 7 cannot reach site 0; prune the pair or repair the instance",
        InputError);
}

TEST_CASE("synthetic grid city") {
    const PlacementInstance one = generate_synthetic(1, 1, 2.5, 3, 4, 0);
    CHECK(one.network.node_count == 4);
    CHECK(one.network.edges.size() == 8); // 4 streets, both directions
    CHECK(one.sites.size() == 4);         // every node is a candidate
    CHECK(one.facilities.empty());
    CHECK(one.m() == 3);

    const PlacementInstance city = generate_synthetic(5, 4, 3.0, 10, 6, 9);
    CHECK(city.network.node_count == 6 * 5);
    const std::uint32_t W = 6;
    for (const Trajectory& t : city.trajectories) {
        CHECK(t.nodes.size() == 6); // grids have no dead ends: full length
        for (std::size_t i = 1; i < t.nodes.size(); ++i) {
            const std::uint32_t diff = t.nodes[i] > t.nodes[i - 1]
                                           ? t.nodes[i] - t.nodes[i - 1]
                                           : t.nodes[i - 1] - t.nodes[i];
            CHECK((diff == 1 || diff == W)); // every hop follows a street
        }
        for (std::size_t i = 2; i < t.nodes.size(); ++i)
            CHECK(t.nodes[i] != t.nodes[i - 2]); // never doubles straight back
    }

    // Same seed, same city, byte for byte.
    const PlacementInstance again = generate_synthetic(5, 4, 3.0, 10, 6, 9);
    std::ostringstream a, b;
    write_edges(a, city.network.edges);
    write_trajectories(a, city.trajectories);
    write_edges(b, again.network.edges);
    write_trajectories(b, again.trajectories);
    CHECK(a.str() == b.str());

    CHECK_THROWS_WITH_AS(generate_synthetic(0, 1, 1.0, 1, 1, 0),
                         "grid dimensions must be positive", InputError);
    CHECK_THROWS_WITH_AS(generate_synthetic(1, 1, 0.0, 1, 1, 0),
                         "edge length must be positive", InputError);
    CHECK_THROWS_WITH_AS(generate_synthetic(1, 1, 1.0, 0, 1, 0),
                         "need at least one trajectory", InputError);
    CHECK_THROWS_WITH_AS(generate_synthetic(1, 1, 1.0, 1, 0, 0),
                         "trajectories need at least one node", InputError);
}

TEST_CASE("random walks stop only at dead ends") {
    SplitMix64 rng = rng_stream(1, 0);

    // A single node with a self-loop leaves nowhere to go.
    const RoadNetwork loop = load_network({{0, 0, 1.0}});
    CHECK(random_walk(loop, 5, rng) == std::vector<NodeId>{0});

    // Every street leads into node 2, which has no way out.
    const RoadNetwork sink = load_network({{0, 2, 1.0}, {1, 2, 1.0}});
    for (int i = 0; i < 10; ++i) {
        const std::vector<NodeId> walk = random_walk(sink, 5, rng);
        CHECK(walk.size() <= 2);
        CHECK(walk.back() == 2);
    }

    const std::vector<NodeId> single = random_walk(sink, 1, rng);
    CHECK(single.size() == 1);

    CHECK_THROWS_WITH_AS(random_walk(sink, 0, rng), "walk length must be at least 1",
                         InputError);
    const RoadNetwork empty;
    CHECK_THROWS_WITH_AS(random_walk(empty, 3, rng), "cannot walk an empty network",
                         InputError);
}

TEST_CASE("experiment grid on the demo town") {
    ExperimentConfig config;
    config.problem = Problem::MaxTips;
    config.algorithms = {"exact", "mif"};
    config.ks = {1, 2};
    config.gammas = {1.0, 0.8};
    config.seeds = {3};
    config.paths = demo_paths();

    const std::vector<ResultRow> rows = run_experiments(config);
    REQUIRE(rows.size() == 8); // algo × k × gamma × seed, in that loop order
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(rows[i].algorithm == (i < 4 ? "exact" : "mif"));
        CHECK(rows[i].k == ((i / 2) % 2 == 0 ? 1 : 2));
        REQUIRE(rows[i].gamma.has_value());
        CHECK(*rows[i].gamma == (i % 2 == 0 ? 1.0 : 0.8));
        CHECK(rows[i].seed == 3);
        REQUIRE(rows[i].objective_m.has_value());
        CHECK(rows[i].work.find_first_not_of("0123456789") == std::string::npos);
    }
    CHECK(*rows[2].objective_m == 12.0); // exact, k=2, full service
    CHECK(*rows[3].objective_m == 2.0);  // exact, k=2, gamma 0.8
    CHECK(*rows[6].objective_m == 12.0); // mif matches the optimum here
    CHECK(*rows[7].objective_m == 2.0);
}

TEST_CASE("experiment rows record errors and keep going") {
    ExperimentConfig config;
    config.problem = Problem::MaxTips;
    config.algorithms = {"exact"};
    config.ks = {2};
    config.gammas = {1.0};
    config.seeds = {0};
    config.paths = demo_paths();
    config.enumeration_budget = 1; // C(4,2) = 6 blows through this

    const std::vector<ResultRow> rows = run_experiments(config);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].work == "error:BudgetError");
    CHECK_FALSE(rows[0].objective_m.has_value());
    CHECK(rows[0].wall_time_s == 0.0);
}

TEST_CASE("experiment grid for the total-detour problem") {
    ExperimentConfig config;
    config.problem = Problem::AvgTips;
    config.algorithms = {"exact", "great", "hcc"};
    config.ks = {2};
    config.seeds = {1};
    config.paths = demo_paths();
    // No gamma grid needed: the axis collapses for this problem.

    const std::vector<ResultRow> rows = run_experiments(config);
    REQUIRE(rows.size() == 3);
    for (const ResultRow& r : rows) {
        CHECK_FALSE(r.gamma.has_value());
        REQUIRE(r.objective_m.has_value());
        CHECK(*r.objective_m == 21.0); // all three land on the optimum
    }
    CHECK(rows[0].algorithm == "exact");
    CHECK(rows[1].algorithm == "great");
    CHECK(rows[2].algorithm == "hcc");
    CHECK(rows[0].work == "6");
    CHECK(rows[1].work == "7");
}

TEST_CASE("experiment configuration validation") {
    ExperimentConfig config;
    config.problem = Problem::MaxTips;
    config.algorithms = {"foo"};
    config.ks = {1};
    config.gammas = {1.0};
    config.seeds = {0};
    config.paths = demo_paths();
    CHECK_THROWS_WITH_AS(run_experiments(config),
                         "unknown algorithm 'foo' for this problem", InputError);
    config.algorithms = {"great"}; // a total-detour solver on the quantile problem
    CHECK_THROWS_WITH_AS(run_experiments(config),
                         "unknown algorithm 'great' for this problem", InputError);

    config.algorithms = {"exact"};
    config.ks = {};
    CHECK_THROWS_WITH_AS(run_experiments(config), "no k values configured", InputError);
    config.ks = {1};
    config.seeds = {};
    CHECK_THROWS_WITH_AS(run_experiments(config), "no seeds configured", InputError);
    config.seeds = {0};
    config.gammas = {};
    CHECK_THROWS_WITH_AS(run_experiments(config), "no gamma values configured",
                         InputError);

    config.gammas = {1.0};
    config.algorithms = {};
    CHECK(run_experiments(config).empty()); // nothing to run is not an error
}

TEST_CASE("result csv layout and quoting") {
    ResultRow a;
    a.algorithm = "exact";
    a.k = 2;
    a.gamma = 1.0;
    a.seed = 7;
    a.objective_m = 12.5;
    a.wall_time_s = 0.25;
    a.work = "42";

    ResultRow b;
    b.algorithm = "gr,eat\"x"; // forces RFC 4180 quoting
    b.k = 3;
    b.seed = 9;
    b.work = "err,or";

    std::ostringstream out;
    write_csv(out, {a, b});
    CHECK(out.str() ==
          "algorithm,k,gamma,seed,objective_m,wall_time_s,work\r\n"
          "exact,2,1,7,12.5,0.250000,42\r\n"
          "\"gr,eat\"\"x\",3,,9,,0.000000,\"err,or\"\r\n");

    std::ostringstream header_only;
    write_csv(header_only, {});
    CHECK(header_only.str() == "algorithm,k,gamma,seed,objective_m,wall_time_s,work\r\n");
}
