#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tips/solver_result.hpp"
#include "tips/trajectory.hpp"

namespace tips {

enum class Problem { MaxTips, AvgTips };

// ---------------------------------------------------------------------------
// Instance files.
//   edges:        "from to length_m" per line
//   trajectories: "id: n1 n2 ... nl" per line
//   sites / facilities: one node id per line
// '#' starts a comment anywhere; blank lines are skipped. Parse errors carry
// "<name>:<line>". write_* emit the canonical form; parse(write(x)) == x.
// ---------------------------------------------------------------------------

std::vector<Edge> parse_edges(std::istream& in, const std::string& name);
std::vector<Trajectory> parse_trajectories(std::istream& in, const std::string& name);
std::vector<NodeId> parse_node_set(std::istream& in, const std::string& name);

void write_edges(std::ostream& out, const std::vector<Edge>& edges);
void write_trajectories(std::ostream& out, const std::vector<Trajectory>& trajectories);
void write_node_set(std::ostream& out, const std::vector<NodeId>& nodes);

struct InstancePaths {
    std::string edges;
    std::string trajectories;
    std::optional<std::string> sites;      // absent -> every node is a candidate
    std::optional<std::string> facilities; // absent -> no existing facilities
};

PlacementInstance parse_instance(const InstancePaths& paths);

// ---------------------------------------------------------------------------
// ILP export (CPLEX LP text). Binaries x_i per augmented site (candidates
// and existing facilities) and y_i_j per (site, trajectory); the gamma
// problem adds a continuous per-site load bound z_i and the makespan Z. Existing facilities are pinned open and
// do not count against k. Objective coefficients are meters with 3 decimals.
// Throws InputError if any needed (trajectory, site) detour is unreachable.
// ---------------------------------------------------------------------------
std::string export_ilp(const PlacementInstance& inst, Problem problem, std::size_t k,
                       double gamma);

// ---------------------------------------------------------------------------
// Synthetic grid city: width × height unit cells -> (width+1)(height+1)
// nodes, two-way streets of length edge_len, and seeded random walks of
// traj_len nodes that never immediately backtrack (unless stuck at a dead
// end). Every candidate slot is open (S = V, F = ∅).
// ---------------------------------------------------------------------------
PlacementInstance generate_synthetic(std::size_t width, std::size_t height, Cost edge_len,
                                     std::size_t traj_count, std::size_t traj_len,
                                     std::uint64_t seed);

// One seeded walk over the network: uniform start node, each step a uniform
// choice among out-neighbors other than the previous node (falling back to
// all of them at a dead end); stops early only when a node has no successor.
std::vector<NodeId> random_walk(const RoadNetwork& net, std::size_t length, SplitMix64& rng);

// ---------------------------------------------------------------------------
// Experiment runner: full (algorithm × k × gamma × seed) grid on one
// instance, one CSV row per cell. A failing cell records the error in its
// work column and the run continues.
// ---------------------------------------------------------------------------

struct ExperimentConfig {
    Problem problem = Problem::MaxTips;
    std::vector<std::string> algorithms; // exact | mif | netclus | great | hcc
    std::vector<std::size_t> ks;
    std::vector<double> gammas; // gamma grid; ignored for the total-detour problem
    std::vector<std::uint64_t> seeds;
    InstancePaths paths;

    // Coverage-index parameters (netclus).
    Cost tau_min = 100.0;
    Cost tau_max = 20000.0;
    double epsilon = 0.5;
    Cost precision = 0; // 0 -> max(1, 0.005·tau_min)

    int mif_restarts = 3;
    int hcc_trials = 3;
    int hcc_max_iterations = 50;
    double hcc_swap_fraction = 0.05;
    std::uint64_t enumeration_budget = kDefaultEnumerationBudget;
};

struct ResultRow {
    std::string algorithm;
    std::size_t k = 0;
    std::optional<double> gamma; // empty column for the total-detour problem
    std::uint64_t seed = 0;
    std::optional<Cost> objective_m; // empty on error
    double wall_time_s = 0;
    std::string work; // effort counter, or "error:<Type>"
};

std::vector<ResultRow> run_experiments(const ExperimentConfig& config);

// RFC 4180 CSV with header "algorithm,k,gamma,seed,objective_m,wall_time_s,work".
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);

} // namespace tips
