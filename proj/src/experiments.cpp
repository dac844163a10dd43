#include "trustwalk/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "trustwalk/rng.hpp"

namespace trustwalk {

void ExperimentConfig::validate() const {
    if (topologies.empty() || W_grid.empty() || gamma_grid.empty() ||
        delta_grid.empty() || x_grid.empty()) {
        throw std::invalid_argument("experiment config: empty grid");
    }
    if (n < 2) throw std::invalid_argument("experiment config: n must be >= 2");
    if (!(avg_degree > 0.0)) {
        throw std::invalid_argument("experiment config: avg_degree must be positive");
    }
    if (beta < 0.0 || beta >= 1.0) {
        throw std::invalid_argument("experiment config: beta must be in [0,1)");
    }
    for (double g : gamma_grid) {
        if (!(g > 0.0) || g > 0.99) {
            throw std::invalid_argument("experiment config: gamma must be in (0, 0.99]");
        }
    }
    if (!(recovery_gamma > 0.0) || recovery_gamma > 0.99) {
        throw std::invalid_argument("experiment config: recovery_gamma must be in (0, 0.99]");
    }
    for (std::int64_t w : W_grid) {
        if (w < 0) throw std::invalid_argument("experiment config: negative walker count");
    }
    if (!(p > 0.0) || p > 1.0) {
        throw std::invalid_argument("experiment config: p must be in (0,1]");
    }
    if (!(tau > 0.0)) throw std::invalid_argument("experiment config: tau must be positive");
    if (replicates < 1) {
        throw std::invalid_argument("experiment config: replicates must be >= 1");
    }
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        std::string part = trim(s.substr(pos, comma - pos));
        if (!part.empty()) parts.push_back(part);
        pos = comma + 1;
    }
    return parts;
}

Topology parse_topology(const std::string& value) {
    if (value == "scale_free" || value == "ba") return Topology::ScaleFree;
    if (value == "erdos_renyi" || value == "er") return Topology::ErdosRenyi;
    throw std::invalid_argument("config: unknown topology '" + value + "'");
}

DampingMode parse_mode(const std::string& value) {
    if (value == "geometric") return DampingMode::Geometric;
    if (value == "hop_power") return DampingMode::HopPower;
    throw std::invalid_argument("config: unknown damping_mode '" + value + "'");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig config;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected 'key = value'");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "topology") {
            if (value == "both") {
                config.topologies = {Topology::ScaleFree, Topology::ErdosRenyi};
            } else {
                config.topologies = {parse_topology(value)};
            }
        } else if (key == "n") {
            config.n = std::stoi(value);
        } else if (key == "avg_degree") {
            config.avg_degree = std::stod(value);
        } else if (key == "W_grid") {
            config.W_grid.clear();
            for (const auto& part : split_list(value)) config.W_grid.push_back(std::stoll(part));
        } else if (key == "gamma_grid") {
            config.gamma_grid.clear();
            for (const auto& part : split_list(value)) config.gamma_grid.push_back(std::stod(part));
        } else if (key == "beta") {
            config.beta = std::stod(value);
        } else if (key == "p") {
            config.p = std::stod(value);
        } else if (key == "delta_grid") {
            config.delta_grid.clear();
            for (const auto& part : split_list(value)) config.delta_grid.push_back(std::stod(part));
        } else if (key == "x_grid") {
            config.x_grid.clear();
            for (const auto& part : split_list(value)) config.x_grid.push_back(std::stod(part));
        } else if (key == "recovery_gamma") {
            config.recovery_gamma = std::stod(value);
        } else if (key == "tau") {
            config.tau = std::stod(value);
        } else if (key == "replicates") {
            config.replicates = std::stoi(value);
        } else if (key == "base_seed") {
            config.base_seed = std::stoull(value);
        } else if (key == "damping_mode") {
            config.damping_mode = parse_mode(value);
        } else if (key == "output_path") {
            config.output_path = value;
        } else {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": unknown key '" + key + "'");
        }
    }
    config.validate();
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_config: cannot open " + path);
    return parse_config(in);
}

std::string metric_csv_header() {
    return "topology,n,avg_degree,W,gamma,beta,mode,seed,overlap,spearman,"
           "trust_diff,coverage,msg_walker,msg_flood,reduction,rmse";
}

std::string to_csv(const MetricRow& row) {
    std::ostringstream out;
    out << row.topology << ',' << row.n << ',' << format_double(row.avg_degree) << ','
        << row.W << ',' << format_double(row.gamma) << ',' << format_double(row.beta)
        << ',' << row.mode << ',' << row.seed << ',' << format_double(row.overlap) << ','
        << (row.spearman ? format_double(*row.spearman) : std::string("nan")) << ','
        << format_double(row.trust_diff) << ',' << format_double(row.coverage) << ','
        << row.msg_walker << ',' << row.msg_flood << ',' << format_double(row.reduction)
        << ',' << format_double(row.rmse);
    return out.str();
}

std::string row_key(const MetricRow& row) {
    return row.topology + "|" + std::to_string(row.seed) + "|" + std::to_string(row.W) +
           "|" + format_double(row.gamma);
}

std::string parse_row_key(const std::string& csv_line) {
    std::vector<std::string> fields = split_list(csv_line);
    if (fields.size() < 8) return "";
    // Columns: topology,n,avg_degree,W,gamma,beta,mode,seed,...
    return fields[0] + "|" + fields[7] + "|" + fields[3] + "|" + fields[4];
}

namespace {

struct GraphCell {
    TrustGraph graph;
    StochasticMatrix S;
    NormalizedTrust reference;           // S-hat from the exact oracle
    std::vector<double> importance_ref;  // global importance under S-hat
    std::int64_t flooding_messages = 0;  // per-value flooding total at tol 1e-6
};

GraphCell build_cell(const ExperimentConfig& config, Topology topology,
                     std::uint64_t graph_seed) {
    TrustGraph graph = topology == Topology::ScaleFree
                           ? generate_scale_free(config.n,
                                                 std::max(1, static_cast<int>(std::lround(
                                                                 config.avg_degree / 2.0))),
                                                 graph_seed)
                           : generate_erdos_renyi(
                                 config.n, config.avg_degree / (config.n - 1), graph_seed);
    StochasticMatrix S = row_normalize(graph);
    TrustMatrix exact = exact_indirect_trust(S, config.beta);
    NormalizedTrust reference = normalize_rows(exact);
    std::vector<double> importance = global_importance(reference, config.tau);
    IterativeResult flooding = iterative_indirect_trust(S, config.beta, 1e-6);
    return GraphCell{std::move(graph), std::move(S), std::move(reference),
                     std::move(importance), flooding.value_messages};
}

}  // namespace

std::vector<MetricRow> run_sweep(const ExperimentConfig& config, int threads,
                                 const std::vector<std::string>& skip_keys,
                                 std::ostream* progress) {
    config.validate();
    std::vector<MetricRow> rows;

    for (std::size_t topo_idx = 0; topo_idx < config.topologies.size(); ++topo_idx) {
        const Topology topology = config.topologies[topo_idx];
        for (int rep = 0; rep < config.replicates; ++rep) {
            const std::uint64_t graph_seed =
                derive_seed(config.base_seed, topo_idx * 1000003ULL + rep);

            // Skip the whole replicate if every cell is already done.
            bool all_skipped = !skip_keys.empty();
            if (all_skipped) {
                for (std::int64_t W : config.W_grid) {
                    for (double gamma : config.gamma_grid) {
                        MetricRow probe;
                        probe.topology = to_string(topology);
                        probe.seed = graph_seed;
                        probe.W = W;
                        probe.gamma = gamma;
                        if (std::find(skip_keys.begin(), skip_keys.end(), row_key(probe)) ==
                            skip_keys.end()) {
                            all_skipped = false;
                            break;
                        }
                    }
                    if (!all_skipped) break;
                }
            }
            if (all_skipped) continue;

            GraphCell cell = build_cell(config, topology, graph_seed);

            for (std::int64_t W : config.W_grid) {
                for (std::size_t g = 0; g < config.gamma_grid.size(); ++g) {
                    const double gamma = config.gamma_grid[g];
                    MetricRow row;
                    row.topology = to_string(topology);
                    row.n = config.n;
                    row.avg_degree = config.avg_degree;
                    row.W = W;
                    row.gamma = gamma;
                    row.beta = config.beta;
                    row.mode = to_string(config.damping_mode);
                    row.seed = graph_seed;
                    if (!skip_keys.empty() &&
                        std::find(skip_keys.begin(), skip_keys.end(), row_key(row)) !=
                            skip_keys.end()) {
                        continue;
                    }

                    SimConfig sim;
                    sim.walkers_per_node = W;
                    sim.gamma = gamma;
                    sim.damping_mode = config.damping_mode;
                    sim.seed = mix_u64(graph_seed + 0x9e3779b97f4a7c15ULL * (W + 1) +
                                       0xbf58476d1ce4e5b9ULL * (g + 1));
                    RunResult run = run_walkers(cell.S, sim, threads);
                    NormalizedTrust estimated = normalize_rows(run.hits.as_double());

                    row.overlap = top_p_overlap(estimated, cell.reference, config.p).mean;
                    row.spearman = spearman_overlapping(estimated, cell.reference, config.p);
                    row.trust_diff =
                        trust_difference_nonoverlapping(estimated, cell.reference, config.p);
                    row.coverage = coverage(run.hits);
                    row.msg_walker = run.messages.total();
                    row.msg_flood = cell.flooding_messages;
                    row.reduction = message_reduction(row.msg_walker, row.msg_flood);
                    std::vector<double> importance_est =
                        global_importance(estimated, config.tau);
                    row.rmse = rmse_global(cell.importance_ref, importance_est);

                    if (progress) {
                        *progress << row_key(row) << " done\n";
                        progress->flush();
                    }
                    rows.push_back(std::move(row));
                }
            }
        }
    }

    std::sort(rows.begin(), rows.end(), [](const MetricRow& a, const MetricRow& b) {
        return std::tie(a.topology, a.seed, a.W, a.gamma) <
               std::tie(b.topology, b.seed, b.W, b.gamma);
    });
    return rows;
}

double recovery_fraction(const NormalizedTrust& estimated,
                         const NormalizedTrust& reference, double delta) {
    const int n = reference.dimension();
    if (estimated.dimension() != n) {
        throw std::invalid_argument("recovery_fraction: dimension mismatch");
    }
    const int k = top_set_size(n, delta);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        TopSet trusted = top_set(reference, i, delta);   // the set E(i)
        TopSet found = top_set(estimated, i, delta);
        std::vector<int> common;
        std::set_intersection(trusted.members.begin(), trusted.members.end(),
                              found.members.begin(), found.members.end(),
                              std::back_inserter(common));
        sum += static_cast<double>(common.size()) / static_cast<double>(k);
    }
    return sum / n;
}

namespace {

double mean_recovery_at(const StochasticMatrix& S, const NormalizedTrust& reference,
                        double delta, double gamma, DampingMode mode,
                        std::uint64_t seed, std::int64_t W, int inner_replicates,
                        int threads) {
    if (W <= 0) return 0.0;
    double sum = 0.0;
    for (int r = 0; r < inner_replicates; ++r) {
        SimConfig sim;
        sim.walkers_per_node = W;
        sim.gamma = gamma;
        sim.damping_mode = mode;
        sim.seed = mix_u64(seed + 0x9e3779b97f4a7c15ULL * (W + 1) +
                           0x94d049bb133111ebULL * (r + 1));
        RunResult run = run_walkers(S, sim, threads);
        NormalizedTrust estimated = normalize_rows(run.hits.as_double());
        sum += recovery_fraction(estimated, reference, delta);
    }
    return sum / inner_replicates;
}

}  // namespace

std::int64_t min_walkers_for_recovery(const StochasticMatrix& S,
                                      const NormalizedTrust& reference,
                                      double delta, double x, double gamma,
                                      DampingMode mode, std::uint64_t seed,
                                      int inner_replicates, std::int64_t cap,
                                      int threads) {
    if (!(delta > 0.0) || delta > 1.0) {
        throw std::invalid_argument("min_walkers_for_recovery: delta must be in (0,1]");
    }
    if (x > 1.0) {
        throw std::invalid_argument("min_walkers_for_recovery: x must be <= 1");
    }
    if (x <= 0.0) return 0;

    auto recovered = [&](std::int64_t W) {
        return mean_recovery_at(S, reference, delta, gamma, mode, seed, W,
                                inner_replicates, threads) >= x;
    };

    // Doubling until the target is met, then bisection on the bracket.
    std::int64_t lo = 0, hi = 1;
    while (!recovered(hi)) {
        lo = hi;
        hi *= 2;
        if (hi > cap) {
            throw std::runtime_error(
                "min_walkers_for_recovery: target unattained below walker cap " +
                std::to_string(cap));
        }
    }
    while (hi - lo > 1) {
        std::int64_t mid = lo + (hi - lo) / 2;
        if (recovered(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

}  // namespace trustwalk
