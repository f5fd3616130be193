#include "tips/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fmt/format.h>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tips/avgtips.hpp"
#include "tips/matrix.hpp"
#include "tips/maxtips.hpp"
#include "tips/netclus.hpp"
#include "detail.hpp"

namespace tips {

namespace {

[[noreturn]] void parse_fail(const std::string& name, std::size_t line,
                             const std::string& what) {
    throw InputError(fmt::format("{}:{}: {}", name, line, what));
}

// Invokes fn(line_number, payload) for every line with content left after
// stripping '#' comments and surrounding whitespace.
template <typename Fn>
void for_each_line(std::istream& in, Fn&& fn) {
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string_view s = raw;
        if (const auto hash = s.find('#'); hash != std::string_view::npos)
            s = s.substr(0, hash);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
            s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
            s.remove_suffix(1);
        if (!s.empty()) fn(lineno, s);
    }
}

void reject_trailing(std::istringstream& ls, const std::string& name, std::size_t line) {
    std::string extra;
    if (ls >> extra) parse_fail(name, line, fmt::format("unexpected token '{}'", extra));
}

} // namespace

std::vector<Edge> parse_edges(std::istream& in, const std::string& name) {
    std::vector<Edge> edges;
    for_each_line(in, [&](std::size_t line, std::string_view s) {
        std::istringstream ls{std::string(s)};
        Edge e;
        if (!(ls >> e.from >> e.to >> e.length))
            parse_fail(name, line, "expected 'from to length'");
        reject_trailing(ls, name, line);
        if (!(e.length >= 0) || !std::isfinite(e.length))
            throw NegativeLengthError(
                fmt::format("{}:{}: edge length {} is not a non-negative number", name,
                            line, e.length));
        edges.push_back(e);
    });
    return edges;
}

std::vector<Trajectory> parse_trajectories(std::istream& in, const std::string& name) {
    std::vector<Trajectory> trajectories;
    for_each_line(in, [&](std::size_t line, std::string_view s) {
        const auto colon = s.find(':');
        if (colon == std::string_view::npos)
            parse_fail(name, line, "expected 'id: n1 n2 ...'");
        Trajectory t;
        {
            std::istringstream ls{std::string(s.substr(0, colon))};
            if (!(ls >> t.id)) parse_fail(name, line, "bad trajectory id");
            reject_trailing(ls, name, line);
        }
        std::istringstream ls{std::string(s.substr(colon + 1))};
        NodeId v = 0;
        while (ls >> v) {
            if (!t.nodes.empty() && t.nodes.back() == v)
                parse_fail(name, line, fmt::format("consecutive duplicate node {}", v));
            t.nodes.push_back(v);
        }
        if (!ls.eof()) parse_fail(name, line, "bad node id");
        if (t.nodes.empty()) parse_fail(name, line, "trajectory has no nodes");
        trajectories.push_back(std::move(t));
    });
    return trajectories;
}

std::vector<NodeId> parse_node_set(std::istream& in, const std::string& name) {
    std::vector<NodeId> nodes;
    for_each_line(in, [&](std::size_t line, std::string_view s) {
        std::istringstream ls{std::string(s)};
        NodeId v = 0;
        if (!(ls >> v)) parse_fail(name, line, "expected a node id");
        reject_trailing(ls, name, line);
        nodes.push_back(v);
    });
    return nodes;
}

void write_edges(std::ostream& out, const std::vector<Edge>& edges) {
    for (const Edge& e : edges)
        out << e.from << ' ' << e.to << ' ' << fmt::format("{}", e.length) << '\n';
}

void write_trajectories(std::ostream& out, const std::vector<Trajectory>& trajectories) {
    for (const Trajectory& t : trajectories) {
        out << t.id << ':';
        for (NodeId v : t.nodes) out << ' ' << v;
        out << '\n';
    }
}

void write_node_set(std::ostream& out, const std::vector<NodeId>& nodes) {
    for (NodeId v : nodes) out << v << '\n';
}

namespace {

std::ifstream open_or_fail(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError(fmt::format("{}: cannot open", path));
    return in;
}

void check_node_range(const std::vector<NodeId>& nodes, std::uint32_t node_count,
                      const std::string& name) {
    for (NodeId v : nodes)
        if (v >= node_count)
            throw InputError(fmt::format(
                "{}: node {} is not in the network (nodes are 0..{})", name, v,
                node_count - 1));
}

} // namespace

PlacementInstance parse_instance(const InstancePaths& paths) {
    std::ifstream ein = open_or_fail(paths.edges);
    std::vector<Edge> edges = parse_edges(ein, paths.edges);
    if (edges.empty()) throw InputError(fmt::format("{}: no edges", paths.edges));
    RoadNetwork net = load_network(edges);

    std::ifstream tin = open_or_fail(paths.trajectories);
    std::vector<Trajectory> trajectories = parse_trajectories(tin, paths.trajectories);
    for (const Trajectory& t : trajectories)
        for (NodeId v : t.nodes)
            if (v >= net.node_count)
                throw InputError(fmt::format(
                    "{}: trajectory {} references node {}, but the network has nodes "
                    "0..{}",
                    paths.trajectories, t.id, v, net.node_count - 1));

    std::vector<NodeId> sites;
    if (paths.sites) {
        std::ifstream sin = open_or_fail(*paths.sites);
        sites = parse_node_set(sin, *paths.sites);
        check_node_range(sites, net.node_count, *paths.sites);
    } else {
        sites.resize(net.node_count);
        std::iota(sites.begin(), sites.end(), NodeId{0});
    }

    std::vector<NodeId> facilities;
    if (paths.facilities) {
        std::ifstream fin = open_or_fail(*paths.facilities);
        facilities = parse_node_set(fin, *paths.facilities);
        check_node_range(facilities, net.node_count, *paths.facilities);
    }

    return make_instance(std::move(net), std::move(trajectories), std::move(sites),
                         std::move(facilities));
}

// ---------------------------------------------------------------------------
// ILP export
// ---------------------------------------------------------------------------

namespace {

// Accumulates "a + b + c"-style expressions, wrapping so no physical line in
// the LP file grows unwieldy.
class ExprWriter {
  public:
    explicit ExprWriter(std::string& out) : out_(out) {}
    void term(const std::string& t) {
        if (count_ > 0) out_ += (count_ % 8 == 0) ? "\n   + " : " + ";
        out_ += t;
        ++count_;
    }
    void term(Cost coeff, const std::string& var) {
        term(fmt::format("{:.3f} {}", coeff, var));
    }

  private:
    std::string& out_;
    std::size_t count_ = 0;
};

} // namespace

std::string export_ilp(const PlacementInstance& inst, Problem problem, std::size_t k,
                       double gamma) {
    if (problem == Problem::MaxTips && (!(gamma > 0.0) || !(gamma <= 1.0)))
        throw InputError(fmt::format("gamma must lie in (0, 1], got {}", gamma));

    // The model ranges over the augmented site list: candidates plus existing
    // facilities, the latter pinned open and excluded from the budget.
    std::vector<NodeId> aug;
    aug.reserve(inst.sites.size() + inst.facilities.size());
    std::merge(inst.sites.begin(), inst.sites.end(), inst.facilities.begin(),
               inst.facilities.end(), std::back_inserter(aug));
    PlacementInstance augmented =
        make_instance(inst.network, inst.trajectories, aug, {});
    const DistanceMatrix mat = build_distance_matrix(augmented);

    const std::size_t m = inst.m();
    const std::size_t n = aug.size();
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < n; ++i)
            if (mat.at(j, i) >= kInfinity)
                throw InputError(fmt::format(
                    "trajectory {} cannot reach site {}; prune the pair or repair the "
                    "instance",
                    inst.trajectories[j].id, aug[i]));

    const auto x = [&](std::size_t i) { return fmt::format("x_{}", aug[i]); };
    const auto y = [&](std::size_t i, std::size_t j) {
        return fmt::format("y_{}_{}", aug[i], j);
    };
    const auto z = [&](std::size_t i) { return fmt::format("z_{}", aug[i]); };

    std::string lp;
    const bool minmax = problem == Problem::MaxTips;
    lp += fmt::format("\\ trajectory placement model: {}, k = {}",
                      minmax ? "min-max detour" : "min-total detour", k);
    if (minmax) lp += fmt::format(", gamma = {}", gamma);
    lp += fmt::format("\n\\ {} sites ({} existing), {} trajectories\n", n,
                      inst.facilities.size(), m);

    lp += "Minimize\n obj: ";
    if (minmax) {
        lp += "Z";
    } else {
        ExprWriter obj(lp);
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t i = 0; i < n; ++i) obj.term(mat.at(j, i), y(i, j));
    }
    lp += "\nSubject To\n";

    if (minmax) {
        for (std::size_t i = 0; i < n; ++i)
            lp += fmt::format(" mz_{}: Z - {} >= 0\n", aug[i], z(i));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < m; ++j)
                lp += fmt::format(" ld_{}_{}: {} - {:.3f} {} >= 0\n", aug[i], j, z(i),
                                  mat.at(j, i), y(i, j));
    }

    lp += " card: ";
    {
        ExprWriter e(lp);
        for (std::size_t i = 0; i < n; ++i) e.term(x(i));
    }
    lp += fmt::format(" <= {}\n", k + inst.facilities.size());

    for (std::size_t j = 0; j < m; ++j) {
        lp += fmt::format(" srv_{}: ", j);
        ExprWriter e(lp);
        for (std::size_t i = 0; i < n; ++i) e.term(y(i, j));
        lp += minmax ? " <= 1\n" : " = 1\n";
    }

    if (minmax) {
        lp += " cov: ";
        ExprWriter e(lp);
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t i = 0; i < n; ++i) e.term(y(i, j));
        lp += fmt::format(" >= {}\n", gamma * static_cast<double>(m));
    }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            lp += fmt::format(" opn_{}_{}: {} - {} <= 0\n", aug[i], j, y(i, j), x(i));

    for (NodeId f : inst.facilities) lp += fmt::format(" fix_{0}: x_{0} = 1\n", f);

    lp += "Binary\n";
    for (std::size_t i = 0; i < n; ++i) lp += fmt::format(" {}\n", x(i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) lp += fmt::format(" {}\n", y(i, j));
    lp += "End\n";
    return lp;
}

// ---------------------------------------------------------------------------
// Synthetic grid city
// ---------------------------------------------------------------------------

std::vector<NodeId> random_walk(const RoadNetwork& net, std::size_t length,
                                SplitMix64& rng) {
    if (net.node_count == 0) throw InputError("cannot walk an empty network");
    if (length < 1) throw InputError("walk length must be at least 1");

    std::vector<NodeId> nodes;
    nodes.reserve(length);
    NodeId cur = static_cast<NodeId>(rng.bounded(net.node_count));
    nodes.push_back(cur);
    bool has_prev = false;
    NodeId prev = 0;
    std::vector<NodeId> cand;
    while (nodes.size() < length) {
        const auto nbrs = net.out_neighbors(cur);
        cand.clear();
        for (NodeId v : nbrs)
            if (v != cur && !(has_prev && v == prev)) cand.push_back(v);
        if (cand.empty()) // dead end: turning straight back is allowed
            for (NodeId v : nbrs)
                if (v != cur) cand.push_back(v);
        if (cand.empty()) break; // isolated node, nowhere to go
        const NodeId next = cand[rng.bounded(cand.size())];
        prev = cur;
        has_prev = true;
        cur = next;
        nodes.push_back(cur);
    }
    return nodes;
}

PlacementInstance generate_synthetic(std::size_t width, std::size_t height, Cost edge_len,
                                     std::size_t traj_count, std::size_t traj_len,
                                     std::uint64_t seed) {
    if (width < 1 || height < 1) throw InputError("grid dimensions must be positive");
    if (!(edge_len > 0)) throw InputError("edge length must be positive");
    if (traj_count < 1) throw InputError("need at least one trajectory");
    if (traj_len < 1) throw InputError("trajectories need at least one node");

    const std::size_t W = width + 1, H = height + 1;
    const auto nid = [W](std::size_t gx, std::size_t gy) {
        return static_cast<NodeId>(gy * W + gx);
    };
    std::vector<Edge> edges;
    edges.reserve(4 * W * H);
    for (std::size_t gy = 0; gy < H; ++gy) {
        for (std::size_t gx = 0; gx < W; ++gx) {
            if (gx + 1 < W) {
                edges.push_back({nid(gx, gy), nid(gx + 1, gy), edge_len});
                edges.push_back({nid(gx + 1, gy), nid(gx, gy), edge_len});
            }
            if (gy + 1 < H) {
                edges.push_back({nid(gx, gy), nid(gx, gy + 1), edge_len});
                edges.push_back({nid(gx, gy + 1), nid(gx, gy), edge_len});
            }
        }
    }
    RoadNetwork net = load_network(edges);

    SplitMix64 rng = rng_stream(seed, 2);
    std::vector<Trajectory> trajectories;
    trajectories.reserve(traj_count);
    for (std::size_t t = 0; t < traj_count; ++t)
        trajectories.push_back(
            {static_cast<std::int64_t>(t), random_walk(net, traj_len, rng)});

    std::vector<NodeId> sites(net.node_count);
    std::iota(sites.begin(), sites.end(), NodeId{0});
    return make_instance(std::move(net), std::move(trajectories), std::move(sites), {});
}

// ---------------------------------------------------------------------------
// Experiment runner
// ---------------------------------------------------------------------------

namespace {

const std::vector<std::string>& known_algorithms(Problem problem) {
    static const std::vector<std::string> for_max = {"exact", "mif", "netclus"};
    static const std::vector<std::string> for_avg = {"exact", "great", "hcc"};
    return problem == Problem::MaxTips ? for_max : for_avg;
}

} // namespace

std::vector<ResultRow> run_experiments(const ExperimentConfig& config) {
    if (config.ks.empty()) throw InputError("no k values configured");
    if (config.seeds.empty()) throw InputError("no seeds configured");
    const bool minmax = config.problem == Problem::MaxTips;
    if (minmax && config.gammas.empty()) throw InputError("no gamma values configured");
    const auto& known = known_algorithms(config.problem);
    for (const std::string& a : config.algorithms)
        if (std::find(known.begin(), known.end(), a) == known.end())
            throw InputError(fmt::format("unknown algorithm '{}' for this problem", a));
    if (config.algorithms.empty()) return {};

    const PlacementInstance inst = parse_instance(config.paths);
    const Cost precision =
        config.precision > 0 ? config.precision : default_precision(config.tau_min);

    std::optional<DistanceMatrix> matrix; // great/hcc share one
    const auto need_matrix = [&]() -> const DistanceMatrix& {
        if (!matrix) matrix = build_distance_matrix(inst);
        return *matrix;
    };
    std::unordered_map<std::uint64_t, NetClusIndex> index_cache;
    const auto need_index = [&](std::uint64_t seed) -> const NetClusIndex& {
        auto it = index_cache.find(seed);
        if (it == index_cache.end())
            it = index_cache
                     .emplace(seed, build_index(inst, config.tau_min, config.tau_max,
                                                config.epsilon, seed))
                     .first;
        return it->second;
    };

    // The gamma axis collapses to a single unused slot for the total-detour
    // problem, so the loop structure stays one-per-(algo, k, gamma, seed).
    const std::vector<double> gammas = minmax ? config.gammas : std::vector<double>{1.0};

    std::vector<ResultRow> rows;
    for (const std::string& algo : config.algorithms) {
        for (std::size_t k : config.ks) {
            for (double gamma : gammas) {
                for (std::uint64_t seed : config.seeds) {
                    ResultRow row;
                    row.algorithm = algo;
                    row.k = k;
                    if (minmax) row.gamma = gamma;
                    row.seed = seed;
                    try {
                        SolverResult res;
                        if (minmax) {
                            if (algo == "exact")
                                res = exact_maxtips(inst, k, gamma,
                                                    config.enumeration_budget);
                            else if (algo == "mif")
                                res = mif(inst, k, gamma, seed, config.mif_restarts);
                            else
                                res = netclus_maxtips(need_index(seed), inst, k, gamma,
                                                      precision);
                        } else {
                            if (algo == "exact")
                                res = exact_avgtips(inst, k, config.enumeration_budget);
                            else if (algo == "great")
                                res = great(inst, need_matrix(), k);
                            else
                                res = hcc(inst, need_matrix(), k,
                                          HccParams{config.hcc_trials,
                                                    config.hcc_max_iterations,
                                                    config.hcc_swap_fraction, seed});
                        }
                        row.objective_m = res.objective;
                        row.wall_time_s = res.wall_time;
                        row.work = std::to_string(res.work);
                    } catch (const BudgetError&) {
                        row.work = "error:BudgetError";
                    } catch (const NegativeLengthError&) {
                        row.work = "error:NegativeLengthError";
                    } catch (const EmptyFacilitySetError&) {
                        row.work = "error:EmptyFacilitySetError";
                    } catch (const InputError&) {
                        row.work = "error:InputError";
                    }
                    rows.push_back(std::move(row));
                }
            }
        }
    }
    return rows;
}

namespace {

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

} // namespace

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    out << "algorithm,k,gamma,seed,objective_m,wall_time_s,work\r\n";
    for (const ResultRow& r : rows) {
        out << csv_quote(r.algorithm) << ',' << r.k << ',';
        if (r.gamma) out << fmt::format("{}", *r.gamma);
        out << ',' << r.seed << ',';
        if (r.objective_m) out << fmt::format("{}", *r.objective_m);
        out << ',' << fmt::format("{:.6f}", r.wall_time_s) << ',' << csv_quote(r.work)
            << "\r\n";
    }
}

} // namespace tips
