// trustwalk command-line tool.
//
// Subcommands: generate (emit a trust graph), oracle (exact TrustWebRank
// CSV), simulate (one walker run), sweep (full metric grid), recover
// (minimum-walkers search), global (importance + RMSE).

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trustwalk/experiments.hpp"
#include "trustwalk/metrics.hpp"
#include "trustwalk/rng.hpp"
#include "trustwalk/trust_graph.hpp"
#include "trustwalk/twr_oracle.hpp"
#include "trustwalk/walker_sim.hpp"

namespace {

using namespace trustwalk;

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    return out;
}

void write_hits_csv(const HitMatrix& hits, std::ostream& out) {
    for (int i = 0; i < hits.dimension(); ++i) {
        for (int j = 0; j < hits.dimension(); ++j) {
            if (j) out << ',';
            out << hits.counts(i, j);
        }
        out << '\n';
    }
}

int run_generate(const std::string& topology, int n, int m, double p, double avg_degree,
                 std::uint64_t seed, const std::string& weights, double weight_value,
                 const std::string& out_path) {
    TrustGraph graph;
    if (topology == "scale_free" || topology == "ba") {
        int edges_per_node = m > 0 ? m : std::max(1, static_cast<int>(std::lround(avg_degree / 2.0)));
        graph = generate_scale_free(n, edges_per_node, seed);
    } else if (topology == "erdos_renyi" || topology == "er") {
        double prob = p > 0.0 ? p : avg_degree / (n - 1);
        graph = generate_erdos_renyi(n, prob, seed);
    } else {
        throw CLI::ValidationError("--topology must be scale_free|erdos_renyi");
    }
    if (weights == "constant") {
        graph = assign_trust_weights(std::move(graph), WeightModel::constant(weight_value),
                                     derive_seed(seed, 0x3e16));
    } else if (weights != "uniform") {
        throw CLI::ValidationError("--weights must be uniform|constant");
    }
    auto out = open_output(out_path);
    write_graph(graph, out);
    std::cout << "generated " << to_string(graph.kind) << " graph: n=" << graph.node_count
              << " directed_edges=" << graph.edge_count() << " seed=" << seed << "\n";
    return 0;
}

int run_oracle(const std::string& graph_path, double beta, bool raw,
               const std::string& out_path) {
    TrustGraph graph = load_graph(graph_path);
    StochasticMatrix S = row_normalize(graph);
    TrustMatrix trust = exact_indirect_trust(S, beta);
    auto out = open_output(out_path);
    if (raw) {
        write_matrix_csv(trust.values, out);
    } else {
        write_matrix_csv(normalize_rows(trust).rows(), out);
    }
    std::cout << "oracle: n=" << S.dimension() << " beta=" << beta
              << (raw ? " raw" : " normalized") << " -> " << out_path << "\n";
    return 0;
}

int run_simulate(const std::string& graph_path, std::int64_t walkers, double gamma,
                 const std::string& mode, std::uint64_t seed, int threads,
                 const std::string& out_path) {
    TrustGraph graph = load_graph(graph_path);
    StochasticMatrix S = row_normalize(graph);
    SimConfig config;
    config.walkers_per_node = walkers;
    config.gamma = gamma;
    config.damping_mode = mode == "hop_power" ? DampingMode::HopPower : DampingMode::Geometric;
    config.seed = seed;
    RunResult run = run_walkers(S, config, threads);
    if (!out_path.empty()) {
        auto out = open_output(out_path);
        write_hits_csv(run.hits, out);
    }
    // One log line per run: n W gamma mode seed total_messages coverage
    char line[256];
    std::snprintf(line, sizeof(line), "%d %lld %.10g %s %llu %lld %.10g\n", S.dimension(),
                  static_cast<long long>(walkers), gamma, to_string(config.damping_mode).c_str(),
                  static_cast<unsigned long long>(seed),
                  static_cast<long long>(run.messages.total()), coverage(run.hits));
    std::cout << line;
    return 0;
}

int run_sweep_cmd(const std::string& config_path, const std::string& out_override,
                  bool append, int threads, bool quiet) {
    ExperimentConfig config = load_config(config_path);
    std::string out_path = out_override.empty() ? config.output_path : out_override;

    std::vector<std::string> skip_keys;
    bool resume = false;
    if (append) {
        std::ifstream existing(out_path);
        std::string line;
        bool first = true;
        while (existing && std::getline(existing, line)) {
            if (first) {
                first = false;  // header
                resume = true;
                continue;
            }
            std::string key = parse_row_key(line);
            if (!key.empty()) skip_keys.push_back(key);
        }
    }

    std::vector<MetricRow> rows =
        run_sweep(config, threads, skip_keys, quiet ? nullptr : &std::cerr);

    std::ofstream out;
    if (resume) {
        out.open(out_path, std::ios::app);
    } else {
        out.open(out_path);
        out << metric_csv_header() << '\n';
    }
    if (!out) throw std::runtime_error("cannot open output file " + out_path);
    for (const MetricRow& row : rows) out << to_csv(row) << '\n';
    std::cout << "sweep: wrote " << rows.size() << " rows to " << out_path
              << (resume ? " (append)" : "") << "\n";
    return 0;
}

int run_recover(const std::string& config_path, const std::string& out_override,
                int threads) {
    ExperimentConfig config = load_config(config_path);
    std::string out_path = out_override.empty() ? config.output_path : out_override;
    auto out = open_output(out_path);
    out << "topology,n,avg_degree,delta,x,gamma,seed,min_walkers\n";
    for (std::size_t topo_idx = 0; topo_idx < config.topologies.size(); ++topo_idx) {
        const Topology topology = config.topologies[topo_idx];
        const std::uint64_t graph_seed = derive_seed(config.base_seed, topo_idx * 1000003ULL);
        TrustGraph graph =
            topology == Topology::ScaleFree
                ? generate_scale_free(config.n,
                                      std::max(1, static_cast<int>(std::lround(
                                                      config.avg_degree / 2.0))),
                                      graph_seed)
                : generate_erdos_renyi(config.n, config.avg_degree / (config.n - 1),
                                       graph_seed);
        StochasticMatrix S = row_normalize(graph);
        NormalizedTrust reference = normalize_rows(exact_indirect_trust(S, config.beta));
        for (double delta : config.delta_grid) {
            for (double x : config.x_grid) {
                std::int64_t w = min_walkers_for_recovery(
                    S, reference, delta, x, config.recovery_gamma, config.damping_mode,
                    graph_seed, 5, 1000000, threads);
                char buf[160];
                std::snprintf(buf, sizeof(buf), "%s,%d,%.10g,%.10g,%.10g,%.10g,%llu,%lld\n",
                              to_string(topology).c_str(), config.n, config.avg_degree, delta,
                              x, config.recovery_gamma,
                              static_cast<unsigned long long>(graph_seed),
                              static_cast<long long>(w));
                out << buf;
                std::cout << buf;
            }
        }
    }
    return 0;
}

int run_global(const std::string& graph_path, double beta, double gamma,
               std::int64_t walkers, double tau, std::uint64_t seed,
               const std::string& mode, int threads, const std::string& out_path) {
    TrustGraph graph = load_graph(graph_path);
    StochasticMatrix S = row_normalize(graph);
    NormalizedTrust reference = normalize_rows(exact_indirect_trust(S, beta));
    SimConfig config;
    config.walkers_per_node = walkers;
    config.gamma = gamma;
    config.damping_mode = mode == "hop_power" ? DampingMode::HopPower : DampingMode::Geometric;
    config.seed = seed;
    RunResult run = run_walkers(S, config, threads);
    NormalizedTrust estimated = normalize_rows(run.hits.as_double());
    std::vector<double> importance_ref = global_importance(reference, tau);
    std::vector<double> importance_est = global_importance(estimated, tau);
    if (!out_path.empty()) {
        auto out = open_output(out_path);
        out << "node,importance_oracle,importance_walker\n";
        char buf[96];
        for (std::size_t j = 0; j < importance_ref.size(); ++j) {
            std::snprintf(buf, sizeof(buf), "%zu,%.10g,%.10g\n", j, importance_ref[j],
                          importance_est[j]);
            out << buf;
        }
    }
    char line[64];
    std::snprintf(line, sizeof(line), "rmse %.10g\n",
                  rmse_global(importance_ref, importance_est));
    std::cout << line;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random-walk trust sampling simulator"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "generate a synthetic trust graph");
    std::string gen_topology = "scale_free";
    int gen_n = 1000, gen_m = 0;
    double gen_p = 0.0, gen_avg_degree = 10.0, gen_weight_value = 1.0;
    std::uint64_t gen_seed = 1;
    std::string gen_weights = "uniform", gen_out = "graph.edges";
    gen->add_option("--topology", gen_topology, "scale_free|erdos_renyi");
    gen->add_option("--n", gen_n, "node count");
    gen->add_option("--m", gen_m, "BA edges per new node (default avg_degree/2)");
    gen->add_option("--p", gen_p, "ER edge probability (default avg_degree/(n-1))");
    gen->add_option("--avg-degree", gen_avg_degree, "target average total degree");
    gen->add_option("--seed", gen_seed, "RNG seed");
    gen->add_option("--weights", gen_weights, "uniform|constant");
    gen->add_option("--weight-value", gen_weight_value, "constant weight value");
    gen->add_option("--out", gen_out, "output edge-list path");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "exact TrustWebRank trust CSV");
    std::string oracle_graph, oracle_out = "oracle.csv";
    double oracle_beta = 0.75;
    bool oracle_raw = false;
    oracle->add_option("--graph", oracle_graph, "input edge-list path")->required();
    oracle->add_option("--beta", oracle_beta, "damping factor in [0,1)");
    oracle->add_flag("--raw", oracle_raw, "emit unnormalized indirect trust");
    oracle->add_option("--out", oracle_out, "output CSV path");

    // simulate
    auto* sim = app.add_subcommand("simulate", "one walker run");
    std::string sim_graph, sim_mode = "geometric", sim_out;
    std::int64_t sim_walkers = 460;
    double sim_gamma = 0.75;
    std::uint64_t sim_seed = 1;
    int sim_threads = 1;
    sim->add_option("--graph", sim_graph, "input edge-list path")->required();
    sim->add_option("--walkers", sim_walkers, "walkers per node");
    sim->add_option("--gamma", sim_gamma, "damping factor in (0,1)");
    sim->add_option("--mode", sim_mode, "geometric|hop_power");
    sim->add_option("--seed", sim_seed, "RNG seed");
    sim->add_option("--threads", sim_threads, "worker threads");
    sim->add_option("--out", sim_out, "hit-matrix CSV path");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "full metric grid from a config file");
    std::string sweep_config, sweep_out;
    bool sweep_append = false, sweep_quiet = false;
    int sweep_threads = 1;
    sweep->add_option("--config", sweep_config, "experiment config file")->required();
    sweep->add_option("--out", sweep_out, "override config output_path");
    sweep->add_flag("--append", sweep_append, "resume: skip rows already in the output");
    sweep->add_flag("--quiet", sweep_quiet, "suppress per-cell progress on stderr");
    sweep->add_option("--threads", sweep_threads, "worker threads");

    // recover
    auto* recover = app.add_subcommand("recover", "minimum walkers for recovery targets");
    std::string recover_config, recover_out;
    int recover_threads = 1;
    recover->add_option("--config", recover_config, "experiment config file")->required();
    recover->add_option("--out", recover_out, "override config output_path");
    recover->add_option("--threads", recover_threads, "worker threads");

    // global
    auto* global = app.add_subcommand("global", "global importance and RMSE");
    std::string global_graph, global_mode = "geometric", global_out;
    double global_beta = 0.75, global_gamma = 0.75, global_tau = 0.01;
    std::int64_t global_walkers = 460;
    std::uint64_t global_seed = 1;
    int global_threads = 1;
    global->add_option("--graph", global_graph, "input edge-list path")->required();
    global->add_option("--beta", global_beta, "oracle damping");
    global->add_option("--gamma", global_gamma, "walker damping");
    global->add_option("--walkers", global_walkers, "walkers per node");
    global->add_option("--tau", global_tau, "importance threshold");
    global->add_option("--seed", global_seed, "RNG seed");
    global->add_option("--mode", global_mode, "geometric|hop_power");
    global->add_option("--threads", global_threads, "worker threads");
    global->add_option("--out", global_out, "per-node importance CSV path");

    try {
        app.parse(argc, argv);
        if (gen->parsed()) {
            return run_generate(gen_topology, gen_n, gen_m, gen_p, gen_avg_degree, gen_seed,
                                gen_weights, gen_weight_value, gen_out);
        }
        if (oracle->parsed()) {
            return run_oracle(oracle_graph, oracle_beta, oracle_raw, oracle_out);
        }
        if (sim->parsed()) {
            return run_simulate(sim_graph, sim_walkers, sim_gamma, sim_mode, sim_seed,
                                sim_threads, sim_out);
        }
        if (sweep->parsed()) {
            return run_sweep_cmd(sweep_config, sweep_out, sweep_append, sweep_threads,
                                 sweep_quiet);
        }
        if (recover->parsed()) {
            return run_recover(recover_config, recover_out, recover_threads);
        }
        if (global->parsed()) {
            return run_global(global_graph, global_beta, global_gamma, global_walkers,
                              global_tau, global_seed, global_mode, global_threads,
                              global_out);
        }
        return 1;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;  // usage error
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;  // runtime error
    }
}
