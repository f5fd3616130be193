// Benchmark of the OpenMP kernels against their serial reference twins on a
// synthetic grid instance. Every kernel's result must match the serial one
// exactly (wall time aside); any mismatch fails the run.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tips/avgtips.hpp"
#include "tips/io.hpp"
#include "tips/matrix.hpp"
#include "tips/maxtips.hpp"
#include "tips/netclus.hpp"
#include "tips/reference.hpp"

namespace {

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

bool same_result(const tips::SolverResult& a, const tips::SolverResult& b) {
    return a.algorithm == b.algorithm && a.selected == b.selected &&
           a.objective == b.objective && a.profile.values == b.profile.values &&
           a.seed == b.seed && a.work == b.work &&
           a.infeasible_at_tau_max == b.infeasible_at_tau_max;
}

struct Row {
    std::string kernel;
    double serial_s = 0, parallel_s = 0;
    bool match = false;
};

template <typename T>
Row compare(const std::string& kernel, const std::function<T()>& serial,
            const std::function<T()>& parallel,
            const std::function<bool(const T&, const T&)>& equal) {
    Row row;
    row.kernel = kernel;
    double t0 = now_seconds();
    const T s = serial();
    row.serial_s = now_seconds() - t0;
    t0 = now_seconds();
    const T p = parallel();
    row.parallel_s = now_seconds() - t0;
    row.match = equal(s, p);
    return row;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Serial-vs-OpenMP kernel benchmark"};
    std::size_t width = 14, height = 14, traj_count = 120, traj_len = 6, k = 4;
    std::size_t exact_k = 2;
    double gamma = 0.9;
    std::uint64_t seed = 1;
    app.add_option("--width", width, "Grid cells along x");
    app.add_option("--height", height, "Grid cells along y");
    app.add_option("--trajectories", traj_count, "Number of trajectories");
    app.add_option("--length", traj_len, "Nodes per trajectory");
    app.add_option("-k", k, "k for the heuristic solvers");
    app.add_option("--exact-k", exact_k, "k for the exact solvers (enumeration!)");
    app.add_option("--gamma", gamma, "Served fraction for the min-max solvers");
    app.add_option("--seed", seed, "Instance and solver seed");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

#ifdef _OPENMP
    std::cout << "OpenMP threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "OpenMP: compiled out\n";
#endif
    const tips::PlacementInstance inst =
        tips::generate_synthetic(width, height, 100.0, traj_count, traj_len, seed);
    std::cout << fmt::format("instance: {} nodes, {} trajectories, n = {} sites\n\n",
                             inst.network.node_count, inst.m(), inst.n());

    const auto same_matrix = [](const tips::DistanceMatrix& a,
                                const tips::DistanceMatrix& b) {
        return a.rows == b.rows && a.cols == b.cols && a.site_ids == b.site_ids &&
               a.entries == b.entries;
    };
    const auto same_index = [](const tips::NetClusIndex& a, const tips::NetClusIndex& b) {
        std::ostringstream sa, sb;
        tips::write_index(sa, a);
        tips::write_index(sb, b);
        return sa.str() == sb.str();
    };

    std::vector<Row> rows;
    rows.push_back(compare<tips::DistanceMatrix>(
        "distance_matrix", [&] { return tips::reference::build_distance_matrix(inst); },
        [&] { return tips::build_distance_matrix(inst); }, same_matrix));
    const tips::DistanceMatrix matrix = tips::build_distance_matrix(inst);

    rows.push_back(compare<tips::SolverResult>(
        fmt::format("exact_maxtips(k={})", exact_k),
        [&] { return tips::reference::exact_maxtips(inst, exact_k, gamma); },
        [&] { return tips::exact_maxtips(inst, exact_k, gamma); }, same_result));
    rows.push_back(compare<tips::SolverResult>(
        fmt::format("exact_avgtips(k={})", exact_k),
        [&] { return tips::reference::exact_avgtips(inst, exact_k); },
        [&] { return tips::exact_avgtips(inst, exact_k); }, same_result));
    rows.push_back(compare<tips::SolverResult>(
        fmt::format("great(k={})", k),
        [&] { return tips::reference::great(inst, matrix, k); },
        [&] { return tips::great(inst, matrix, k); }, same_result));
    const tips::HccParams hcc_params{3, 50, 0.2, seed};
    rows.push_back(compare<tips::SolverResult>(
        fmt::format("hcc(k={})", k),
        [&] { return tips::reference::hcc(inst, matrix, k, hcc_params); },
        [&] { return tips::hcc(inst, matrix, k, hcc_params); }, same_result));
    rows.push_back(compare<tips::NetClusIndex>(
        "build_index", [&] { return tips::reference::build_index(inst, 100, 20000, 0.5, seed); },
        [&] { return tips::build_index(inst, 100, 20000, 0.5, seed); }, same_index));

    std::cout << fmt::format("{:<22} {:>10} {:>10} {:>8}  {}\n", "kernel", "serial_s",
                             "omp_s", "speedup", "equal");
    bool all_match = true;
    for (const Row& r : rows) {
        std::cout << fmt::format("{:<22} {:>10.4f} {:>10.4f} {:>8.2f}  {}\n", r.kernel,
                                 r.serial_s, r.parallel_s,
                                 r.parallel_s > 0 ? r.serial_s / r.parallel_s : 0.0,
                                 r.match ? "yes" : "NO");
        all_match = all_match && r.match;
    }
    if (!all_match) {
        std::cerr << "\nmismatch between serial and parallel kernels\n";
        return 1;
    }
    return 0;
}
