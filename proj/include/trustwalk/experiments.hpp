// Sweep harness: parameter grids in, one CSV metric row per
// (topology, seed, W, gamma) cell out, plus the minimum-walkers
// recoverability search.

#ifndef TRUSTWALK_EXPERIMENTS_HPP
#define TRUSTWALK_EXPERIMENTS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "trustwalk/metrics.hpp"
#include "trustwalk/trust_graph.hpp"
#include "trustwalk/twr_oracle.hpp"
#include "trustwalk/walker_sim.hpp"

namespace trustwalk {

struct ExperimentConfig {
    std::vector<Topology> topologies = {Topology::ScaleFree};
    int n = 1000;
    double avg_degree = 10.0;
    std::vector<std::int64_t> W_grid = {60, 110, 160, 210, 260, 310, 360, 410, 460};
    std::vector<double> gamma_grid = {0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    double beta = 0.75;
    double p = 0.05;
    std::vector<double> delta_grid = {0.05, 0.10};
    std::vector<double> x_grid = {0.5, 0.7, 0.9};
    double recovery_gamma = 0.75;
    double tau = 0.01;
    int replicates = 10;
    std::uint64_t base_seed = 1;
    DampingMode damping_mode = DampingMode::Geometric;
    std::string output_path = "sweep.csv";

    // Grids non-empty, beta in [0,1), every gamma in (0, 0.99].
    void validate() const;
};

// Flat "key = value" text, lists comma-separated, '#' starts a comment.
// Unknown keys are rejected.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

struct MetricRow {
    std::string topology;
    int n = 0;
    double avg_degree = 0.0;
    std::int64_t W = 0;
    double gamma = 0.0;
    double beta = 0.0;
    std::string mode;
    std::uint64_t seed = 0;
    double overlap = 0.0;
    std::optional<double> spearman;  // absent if every source was skipped
    double trust_diff = 0.0;
    double coverage = 0.0;
    std::int64_t msg_walker = 0;
    std::int64_t msg_flood = 0;
    double reduction = 0.0;
    double rmse = 0.0;
};

std::string metric_csv_header();
std::string to_csv(const MetricRow& row);

// Stable cell identity (topology, seed, W, gamma) used by --append to skip
// already-computed rows.
std::string row_key(const MetricRow& row);
std::string parse_row_key(const std::string& csv_line);

// Full grid: graph and oracle computed once per (topology, seed), one walker
// run per (W, gamma) cell. Rows come back sorted by (topology, seed, W,
// gamma) and are a pure function of the config. Cells whose key is in
// `skip_keys` are omitted. `progress`, when set, receives one line per cell.
std::vector<MetricRow> run_sweep(const ExperimentConfig& config, int threads = 1,
                                 const std::vector<std::string>& skip_keys = {},
                                 std::ostream* progress = nullptr);

// Smallest W (doubling search then bisection, recovery averaged over
// `inner_replicates` runs) such that the mean per-source fraction of the
// reference top-delta set recovered by the walker top-delta set reaches x.
// Returns 0 when x <= 0; throws std::runtime_error if `cap` is exceeded.
std::int64_t min_walkers_for_recovery(const StochasticMatrix& S,
                                      const NormalizedTrust& reference,
                                      double delta, double x, double gamma,
                                      DampingMode mode, std::uint64_t seed,
                                      int inner_replicates = 5,
                                      std::int64_t cap = 1000000,
                                      int threads = 1);

// Fraction of the reference top-delta sets recovered by the hit-derived top
// sets, averaged over sources. Exposed for tests and the recover command.
double recovery_fraction(const NormalizedTrust& estimated,
                         const NormalizedTrust& reference, double delta);

}  // namespace trustwalk

#endif  // TRUSTWALK_EXPERIMENTS_HPP
