#include "trustwalk/walker_sim.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace trustwalk {

std::string to_string(DampingMode mode) {
    return mode == DampingMode::Geometric ? "geometric" : "hop_power";
}

void SimConfig::validate() const {
    if (walkers_per_node < 0) {
        throw std::invalid_argument("sim config: walkers_per_node must be >= 0");
    }
    if (!(gamma > 0.0) || gamma >= 1.0) {
        throw std::invalid_argument("sim config: gamma must be in (0,1)");
    }
    if (hops_cap < 1) {
        throw std::invalid_argument("sim config: hops_cap must be >= 1");
    }
}

double survival_probability(DampingMode mode, double gamma, int hop) {
    if (hop < 1) throw std::invalid_argument("survival_probability: hop must be >= 1");
    if (mode == DampingMode::Geometric) return gamma;
    // Sequential product, kept bit-identical with the incremental update in
    // the walk loop.
    double s = gamma;
    for (int h = 2; h <= hop; ++h) s *= gamma;
    return s;
}

namespace {

// Per-row cumulative neighbor distributions in CSR layout. Partial sums are
// accumulated in ascending target order so that sampling matches a direct
// scan of the dense row bit for bit.
struct RowSampler {
    int n = 0;
    std::vector<std::int64_t> offsets;  // n+1 entries
    std::vector<int> targets;
    std::vector<double> cumulative;

    static RowSampler build(const Eigen::MatrixXd& rows) {
        RowSampler s;
        s.n = static_cast<int>(rows.rows());
        s.offsets.assign(s.n + 1, 0);
        for (int i = 0; i < s.n; ++i) {
            double acc = 0.0;
            for (int j = 0; j < s.n; ++j) {
                double v = rows(i, j);
                if (v > 0.0) {
                    acc += v;
                    s.targets.push_back(j);
                    s.cumulative.push_back(acc);
                }
            }
            s.offsets[i + 1] = static_cast<std::int64_t>(s.targets.size());
        }
        return s;
    }

    // v in [0,1): first neighbor whose cumulative mass exceeds v, clamped to
    // the last neighbor when rounding leaves the total just under 1.
    int sample(int row, double v) const {
        const double* begin = cumulative.data() + offsets[row];
        const double* end = cumulative.data() + offsets[row + 1];
        const double* it = std::upper_bound(begin, end, v);
        if (it == end) --it;
        return targets[offsets[row] + (it - begin)];
    }
};

// One trajectory; invokes on_stamp(node) for every stamped visit (the stamp
// on the source's own id included, so callers decide the diagonal rule).
// Returns the hop count.
template <typename OnStamp>
int walk_one(const RowSampler& sampler, int source, const SimConfig& config,
             SplitMix64& rng, OnStamp&& on_stamp, bool& force_killed) {
    force_killed = false;
    // First hop: always taken, follows the source row undamped.
    int current = sampler.sample(source, rng.next_double());
    on_stamp(current);
    int hops = 1;
    double survival = config.gamma;
    while (true) {
        if (hops >= config.hops_cap) {
            force_killed = true;
            break;
        }
        double u = rng.next_double();
        if (u >= survival) break;  // walker dies at `current`
        current = sampler.sample(current, u / survival);
        on_stamp(current);
        ++hops;
        if (config.damping_mode == DampingMode::HopPower) survival *= config.gamma;
    }
    return hops;
}

}  // namespace

StepOutcome step_walker(int current, int hop, const StochasticMatrix& S,
                        const SimConfig& config, SplitMix64& rng) {
    if (hop < 1) throw std::invalid_argument("step_walker: hop must be >= 1");
    const double survival = survival_probability(config.damping_mode, config.gamma, hop);
    const double u = rng.next_double();
    if (u >= survival) return StepOutcome::die();
    const double v = u / survival;
    // Scan the dense row in ascending id order; same partial sums as the
    // CSR sampler used by run_walkers.
    const int n = S.dimension();
    double acc = 0.0;
    int last_positive = -1;
    for (int j = 0; j < n; ++j) {
        double w = S(current, j);
        if (w > 0.0) {
            acc += w;
            last_positive = j;
            if (acc > v) return StepOutcome::forward_to(j);
        }
    }
    if (last_positive < 0) {
        throw std::invalid_argument("step_walker: row has no positive entry");
    }
    return StepOutcome::forward_to(last_positive);
}

WalkerRecord simulate_walker(int source, const StochasticMatrix& S,
                             const SimConfig& config, std::int64_t walker_index) {
    config.validate();
    if (source < 0 || source >= S.dimension()) {
        throw std::invalid_argument("simulate_walker: source out of range");
    }
    RowSampler sampler = RowSampler::build(S.rows());
    SplitMix64 rng = derive_stream(config.seed, static_cast<std::uint64_t>(source),
                                   static_cast<std::uint64_t>(walker_index));
    WalkerRecord record;
    record.source = source;
    bool force_killed = false;
    record.hops = walk_one(sampler, source, config, rng,
                           [&](int node) { record.stamps.push_back(node); }, force_killed);
    record.force_killed = force_killed;
    record.forward_messages = record.hops;
    record.return_messages = 1;
    return record;
}

MessageTally message_count_breakdown(std::span<const WalkerRecord> records) {
    MessageTally tally;
    for (const WalkerRecord& r : records) {
        tally.forward += r.forward_messages;
        tally.returns += r.return_messages;
    }
    return tally;
}

RunResult run_walkers(const StochasticMatrix& S, const SimConfig& config, int threads) {
    config.validate();
    const int n = S.dimension();

    RunResult result;
    result.hits.counts =
        Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
    result.hits.walkers_per_node = config.walkers_per_node;
    result.hits.damping_mode = config.damping_mode;
    result.hits.gamma = config.gamma;
    if (config.walkers_per_node == 0) return result;

    const RowSampler sampler = RowSampler::build(S.rows());
    const int worker_count = std::clamp(threads, 1, n);

    struct WorkerTally {
        std::int64_t forward = 0;
        std::int64_t returns = 0;
        std::int64_t force_kills = 0;
    };
    std::vector<WorkerTally> tallies(worker_count);

    // Sources are sharded across workers; each source owns its row of the
    // count matrix, so workers never write the same cell.
    auto work = [&](int worker) {
        WorkerTally& tally = tallies[worker];
        auto* counts = result.hits.counts.data();  // column-major (i, j) -> i + j*n
        for (int source = worker; source < n; source += worker_count) {
            for (std::int64_t w = 0; w < config.walkers_per_node; ++w) {
                SplitMix64 rng = derive_stream(config.seed, static_cast<std::uint64_t>(source),
                                               static_cast<std::uint64_t>(w));
                bool force_killed = false;
                int hops = walk_one(
                    sampler, source, config, rng,
                    [&](int node) {
                        if (node != source) {
                            counts[source + static_cast<std::int64_t>(node) * n] += 1;
                        }
                    },
                    force_killed);
                tally.forward += hops;
                tally.returns += 1;
                tally.force_kills += force_killed ? 1 : 0;
            }
        }
    };

    if (worker_count == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(worker_count);
        for (int t = 0; t < worker_count; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }

    for (const WorkerTally& t : tallies) {
        result.messages.forward += t.forward;
        result.messages.returns += t.returns;
        result.force_kills += t.force_kills;
    }
    return result;
}

}  // namespace trustwalk
