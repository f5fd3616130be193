// Command-line front end: solve / index / sample / generate / export-ilp /
// bench. Exit codes: 0 success, 2 bad input (including flag errors), 3
// enumeration budget exceeded.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "tips/avgtips.hpp"
#include "tips/io.hpp"
#include "tips/matrix.hpp"
#include "tips/maxtips.hpp"
#include "tips/netclus.hpp"
#include "tips/sampling.hpp"

namespace {

struct InstanceFlags {
    std::string edges;
    std::string trajectories;
    std::string sites;
    std::string facilities;

    void attach(CLI::App* cmd) {
        cmd->add_option("--edges", edges, "Edges file (from to length_m per line)")
            ->required();
        cmd->add_option("--trajectories", trajectories,
                        "Trajectories file (id: n1 n2 ... per line)")
            ->required();
        cmd->add_option("--sites", sites,
                        "Candidate sites file, one node per line (default: every node)");
        cmd->add_option("--facilities", facilities,
                        "Existing facilities file, one node per line (default: none)");
    }

    tips::InstancePaths paths() const {
        tips::InstancePaths p;
        p.edges = edges;
        p.trajectories = trajectories;
        if (!sites.empty()) p.sites = sites;
        if (!facilities.empty()) p.facilities = facilities;
        return p;
    }
};

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw tips::InputError(fmt::format("{}: cannot open for writing", path));
    return out;
}

void print_result(const tips::SolverResult& r) {
    std::cout << "algorithm: " << r.algorithm << '\n';
    std::cout << "selected:";
    for (tips::NodeId s : r.selected) std::cout << ' ' << s;
    std::cout << '\n';
    std::cout << "objective_m: " << fmt::format("{}", r.objective) << '\n';
    std::cout << "work: " << r.work << '\n';
    if (r.infeasible_at_tau_max)
        std::cout << "note: coverage target missed even at tau_max\n";
    std::cout << "wall_time_s: " << fmt::format("{:.6f}", r.wall_time) << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trajectory-aware facility placement on road networks"};
    app.require_subcommand(1);

    // --- solve ---------------------------------------------------------
    auto* solve = app.add_subcommand("solve", "Run one solver on one instance");
    InstanceFlags solve_inst;
    solve_inst.attach(solve);
    std::string problem_name = "max-tips", algo = "exact";
    std::size_t k = 1;
    double gamma = 1.0;
    std::uint64_t seed = 0;
    std::uint64_t budget = tips::kDefaultEnumerationBudget;
    int restarts = tips::kDefaultMifRestarts;
    double tau_min = tips::kDefaultTauMin, tau_max = tips::kDefaultTauMax;
    double epsilon = tips::kDefaultEpsilon, precision = 0;
    std::string index_path;
    int trials = 3, eta = 50;
    double sf = 0.05;
    solve->add_option("--problem", problem_name, "max-tips or avg-tips")
        ->check(CLI::IsMember({"max-tips", "avg-tips"}));
    solve->add_option("--algo", algo, "exact | mif | netclus (max-tips); exact | great | hcc (avg-tips)")
        ->required();
    solve->add_option("-k", k, "Number of new facilities")->required();
    solve->add_option("--gamma", gamma, "Served user fraction in (0,1], max-tips only");
    solve->add_option("--seed", seed, "Seed for the randomized algorithms");
    solve->add_option("--budget", budget, "Max subsets the exact solver may enumerate");
    solve->add_option("--restarts", restarts, "mif: independent restarts when no facility exists");
    solve->add_option("--tau-min", tau_min, "netclus: smallest indexed radius (m)");
    solve->add_option("--tau-max", tau_max, "netclus: largest indexed radius (m)");
    solve->add_option("--epsilon", epsilon, "netclus: radius growth factor");
    solve->add_option("--precision", precision,
                      "netclus: binary-search stop width (default 0.5% of tau-min, at least 1 m)");
    solve->add_option("--index", index_path, "netclus: load a prebuilt index file");
    solve->add_option("--sf", sf, "hcc: fraction of swaps scanned per iteration");
    solve->add_option("--trials", trials, "hcc: independent trials");
    solve->add_option("--eta", eta, "hcc: max iterations per trial");

    // --- index ---------------------------------------------------------
    auto* index_cmd = app.add_subcommand("index", "Build and save a coverage index");
    InstanceFlags index_inst;
    index_inst.attach(index_cmd);
    std::string index_out;
    index_cmd->add_option("--tau-min", tau_min, "Smallest indexed radius (m)");
    index_cmd->add_option("--tau-max", tau_max, "Largest indexed radius (m)");
    index_cmd->add_option("--epsilon", epsilon, "Radius growth factor");
    index_cmd->add_option("--seed", seed, "Covering seed");
    index_cmd->add_option("--out", index_out, "Output index file")->required();

    // --- sample --------------------------------------------------------
    auto* sample_cmd = app.add_subcommand("sample", "Reduce an instance by sampling");
    InstanceFlags sample_inst;
    sample_inst.attach(sample_cmd);
    double radius = 0;
    std::size_t size = 0;
    std::string out_sites, out_trajectories;
    sample_cmd->add_option("--radius", radius, "Covering radius for site sampling (m)")
        ->required();
    sample_cmd->add_option("--size", size, "Target number of representative trajectories")
        ->required();
    sample_cmd->add_option("--seed", seed, "Covering seed");
    sample_cmd->add_option("--out-sites", out_sites, "Sampled sites file")->required();
    sample_cmd
        ->add_option("--out-trajectories", out_trajectories,
                     "Representative trajectories file")
        ->required();

    // --- generate ------------------------------------------------------
    auto* gen = app.add_subcommand("generate", "Generate a synthetic grid city");
    std::size_t width = 10, height = 10, traj_count = 50, traj_len = 5;
    double edge_len = 100.0;
    std::string out_edges, out_traj;
    gen->add_option("--width", width, "Grid cells along x");
    gen->add_option("--height", height, "Grid cells along y");
    gen->add_option("--edge-len", edge_len, "Street length (m)");
    gen->add_option("--trajectories", traj_count, "Number of random-walk trajectories");
    gen->add_option("--length", traj_len, "Nodes per trajectory");
    gen->add_option("--seed", seed, "Walk seed");
    gen->add_option("--out-edges", out_edges, "Edges output file")->required();
    gen->add_option("--out-trajectories", out_traj, "Trajectories output file")->required();

    // --- export-ilp ----------------------------------------------------
    auto* ilp = app.add_subcommand("export-ilp", "Write the placement model as an LP file");
    InstanceFlags ilp_inst;
    ilp_inst.attach(ilp);
    std::string ilp_out;
    ilp->add_option("--problem", problem_name, "max-tips or avg-tips")
        ->check(CLI::IsMember({"max-tips", "avg-tips"}));
    ilp->add_option("-k", k, "Number of new facilities")->required();
    ilp->add_option("--gamma", gamma, "Served user fraction, max-tips only");
    ilp->add_option("--out", ilp_out, "Output LP file (default: stdout)");

    // --- bench ---------------------------------------------------------
    auto* bench = app.add_subcommand("bench", "Run an (algorithm x k x gamma x seed) grid");
    InstanceFlags bench_inst;
    bench_inst.attach(bench);
    std::vector<std::string> algos;
    std::vector<std::size_t> ks{1};
    std::vector<double> gammas{1.0};
    std::vector<std::uint64_t> seeds{0};
    std::string csv_out;
    bench->add_option("--problem", problem_name, "max-tips or avg-tips")
        ->check(CLI::IsMember({"max-tips", "avg-tips"}));
    bench->add_option("--algo", algos, "Algorithms to run (repeatable)")->required();
    bench->add_option("-k", ks, "k values (repeatable)");
    bench->add_option("--gamma", gammas, "gamma values (repeatable, max-tips only)");
    bench->add_option("--seed", seeds, "Seeds (repeatable)");
    bench->add_option("--budget", budget, "Max subsets the exact solver may enumerate");
    bench->add_option("--tau-min", tau_min, "netclus: smallest indexed radius (m)");
    bench->add_option("--tau-max", tau_max, "netclus: largest indexed radius (m)");
    bench->add_option("--epsilon", epsilon, "netclus: radius growth factor");
    bench->add_option("--precision", precision, "netclus: binary-search stop width");
    bench->add_option("--restarts", restarts, "mif: independent restarts");
    bench->add_option("--sf", sf, "hcc: fraction of swaps scanned per iteration");
    bench->add_option("--trials", trials, "hcc: independent trials");
    bench->add_option("--eta", eta, "hcc: max iterations per trial");
    bench->add_option("--out", csv_out, "CSV output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // --help exits 0; any flag error is bad input
    }

    try {
        const tips::Problem problem =
            problem_name == "avg-tips" ? tips::Problem::AvgTips : tips::Problem::MaxTips;

        if (solve->parsed()) {
            const tips::PlacementInstance inst = tips::parse_instance(solve_inst.paths());
            tips::SolverResult result;
            if (problem == tips::Problem::MaxTips) {
                if (algo == "exact") {
                    result = tips::exact_maxtips(inst, k, gamma, budget);
                } else if (algo == "mif") {
                    result = tips::mif(inst, k, gamma, seed, restarts);
                } else if (algo == "netclus") {
                    tips::NetClusIndex index;
                    if (!index_path.empty()) {
                        std::ifstream in(index_path);
                        if (!in)
                            throw tips::InputError(
                                fmt::format("{}: cannot open", index_path));
                        index = tips::read_index(in);
                    } else {
                        index = tips::build_index(inst, tau_min, tau_max, epsilon, seed);
                    }
                    const double prec =
                        precision > 0 ? precision : tips::default_precision(index.tau_min);
                    result = tips::netclus_maxtips(index, inst, k, gamma, prec);
                } else {
                    throw tips::InputError(
                        fmt::format("unknown algorithm '{}' for max-tips", algo));
                }
            } else {
                if (algo == "exact") {
                    result = tips::exact_avgtips(inst, k, budget);
                } else if (algo == "great" || algo == "hcc") {
                    const tips::DistanceMatrix matrix = tips::build_distance_matrix(inst);
                    result = algo == "great"
                                 ? tips::great(inst, matrix, k)
                                 : tips::hcc(inst, matrix, k,
                                             tips::HccParams{trials, eta, sf, seed});
                } else {
                    throw tips::InputError(
                        fmt::format("unknown algorithm '{}' for avg-tips", algo));
                }
            }
            print_result(result);
        } else if (index_cmd->parsed()) {
            const tips::PlacementInstance inst = tips::parse_instance(index_inst.paths());
            const tips::NetClusIndex index =
                tips::build_index(inst, tau_min, tau_max, epsilon, seed);
            std::ofstream out = open_out(index_out);
            tips::write_index(out, index);
            std::cout << fmt::format("wrote {} radius levels to {}\n",
                                     index.instances.size(), index_out);
        } else if (sample_cmd->parsed()) {
            const tips::PlacementInstance inst = tips::parse_instance(sample_inst.paths());
            const tips::SiteSample sites = tips::sample_sites(inst, radius, seed);
            const tips::TrajectorySample trajs =
                tips::sample_trajectories(inst, sites, size, seed);
            {
                std::ofstream out = open_out(out_sites);
                tips::write_node_set(out, sites.sampled_sites);
            }
            {
                std::ofstream out = open_out(out_trajectories);
                tips::write_trajectories(out, trajs.representatives);
            }
            std::cout << fmt::format("{} clusters, {} sampled sites, {} trajectories{}\n",
                                     sites.centers.size(), sites.sampled_sites.size(),
                                     trajs.representatives.size(),
                                     trajs.truncated ? " (target exceeded input)" : "");
        } else if (gen->parsed()) {
            const tips::PlacementInstance inst = tips::generate_synthetic(
                width, height, edge_len, traj_count, traj_len, seed);
            {
                std::ofstream out = open_out(out_edges);
                tips::write_edges(out, inst.network.edges);
            }
            {
                std::ofstream out = open_out(out_traj);
                tips::write_trajectories(out, inst.trajectories);
            }
            std::cout << fmt::format("{} nodes, {} edges, {} trajectories\n",
                                     inst.network.node_count, inst.network.edges.size(),
                                     inst.trajectories.size());
        } else if (ilp->parsed()) {
            const tips::PlacementInstance inst = tips::parse_instance(ilp_inst.paths());
            const std::string lp = tips::export_ilp(inst, problem, k, gamma);
            if (ilp_out.empty()) {
                std::cout << lp;
            } else {
                std::ofstream out = open_out(ilp_out);
                out << lp;
            }
        } else if (bench->parsed()) {
            tips::ExperimentConfig config;
            config.problem = problem;
            config.algorithms = algos;
            config.ks = ks;
            config.gammas = gammas;
            config.seeds = seeds;
            config.paths = bench_inst.paths();
            config.tau_min = tau_min;
            config.tau_max = tau_max;
            config.epsilon = epsilon;
            config.precision = precision;
            config.mif_restarts = restarts;
            config.hcc_trials = trials;
            config.hcc_max_iterations = eta;
            config.hcc_swap_fraction = sf;
            config.enumeration_budget = budget;
            const std::vector<tips::ResultRow> rows = tips::run_experiments(config);
            if (csv_out.empty()) {
                tips::write_csv(std::cout, rows);
            } else {
                std::ofstream out = open_out(csv_out);
                tips::write_csv(out, rows);
            }
        }
    } catch (const tips::BudgetError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const tips::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
