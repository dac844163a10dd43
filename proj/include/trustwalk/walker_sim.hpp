// Monte Carlo simulation of the trust-biased random-walk protocol.
//
// Every source launches W walkers. The first hop is always taken and follows
// the source's row of S; after stamping a node on hop h the walker either
// forwards (per the damping mode) or dies and returns straight to its source.
// Hits to j from source i are counted once per stamp; self-stamps are walked
// through but not recorded.

#ifndef TRUSTWALK_WALKER_SIM_HPP
#define TRUSTWALK_WALKER_SIM_HPP

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "trustwalk/rng.hpp"
#include "trustwalk/trust_graph.hpp"

namespace trustwalk {

// Geometric: survive each extra hop with constant probability gamma; this is
// the mode whose expectation matches the resolvent (I - gamma*S)^-1 * S.
// HopPower: survive hop h+1 with probability gamma^h (literal protocol
// prose); kept behind this switch, no analytic counterpart.
enum class DampingMode { Geometric, HopPower };

std::string to_string(DampingMode mode);

struct SimConfig {
    std::int64_t walkers_per_node = 0;
    double gamma = 0.75;
    DampingMode damping_mode = DampingMode::Geometric;
    int hops_cap = 10000;  // liveness guard; reaching it is vanishingly rare
    std::uint64_t seed = 0;

    // Throws std::invalid_argument unless gamma in (0,1), hops_cap >= 1,
    // walkers_per_node >= 0.
    void validate() const;
};

struct StepOutcome {
    bool forward = false;
    int next = -1;

    static StepOutcome forward_to(int j) { return {true, j}; }
    static StepOutcome die() { return {false, -1}; }
};

// Survival probability for the step leaving a node reached on hop `hop`.
double survival_probability(DampingMode mode, double gamma, int hop);

// One forward-or-die decision for a walker sitting at `current` after its
// hop-th hop. Consumes exactly one uniform draw; conditional on survival the
// neighbor follows row `current` of S exactly.
StepOutcome step_walker(int current, int hop, const StochasticMatrix& S,
                        const SimConfig& config, SplitMix64& rng);

// One full trajectory: source, ordered ID stamps, message costs.
struct WalkerRecord {
    int source = 0;
    std::vector<int> stamps;        // one entry per hop, in stamp order
    int hops = 0;                   // == stamps.size()
    std::int64_t forward_messages = 0;  // == hops
    std::int64_t return_messages = 0;   // 1: direct reply to the source
    bool force_killed = false;      // hops_cap reached, counted as a death
};

// Trajectory of walker `walker_index` from `source`, on the stream derived
// from (config.seed, source, walker_index). Identical to what run_walkers
// counts for the same tuple.
WalkerRecord simulate_walker(int source, const StochasticMatrix& S,
                             const SimConfig& config, std::int64_t walker_index);

struct MessageTally {
    std::int64_t forward = 0;
    std::int64_t returns = 0;
    std::int64_t total() const { return forward + returns; }
};

MessageTally message_count_breakdown(std::span<const WalkerRecord> records);

struct HitMatrix {
    Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> counts;
    std::int64_t walkers_per_node = 0;
    DampingMode damping_mode = DampingMode::Geometric;
    double gamma = 0.0;

    int dimension() const { return static_cast<int>(counts.rows()); }
    Eigen::MatrixXd as_double() const { return counts.cast<double>(); }
};

struct RunResult {
    HitMatrix hits;
    MessageTally messages;
    std::int64_t force_kills = 0;
};

// Runs W walkers from every source. Sources are sharded over `threads`
// worker threads; per-walker RNG streams make the result independent of the
// thread count.
RunResult run_walkers(const StochasticMatrix& S, const SimConfig& config,
                      int threads = 1);

}  // namespace trustwalk

#endif  // TRUSTWALK_WALKER_SIM_HPP
