// Evaluation metrics: top-p overlap, Spearman rank correlation of the
// overlapping peers, trust difference of the non-overlapping peers, network
// coverage, message reduction, global importance, and global-importance RMSE.

#ifndef TRUSTWALK_METRICS_HPP
#define TRUSTWALK_METRICS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "trustwalk/twr_oracle.hpp"
#include "trustwalk/walker_sim.hpp"

namespace trustwalk {

// ceil(p * (n-1)): cardinality of every top set at fraction p.
int top_set_size(int dimension, double p);

// Top p-fraction most trusted nodes of `source`: ranked by trust descending,
// ties broken by ascending node id, source excluded. Always exactly
// top_set_size members; `members` is sorted by node id.
struct TopSet {
    int source = 0;
    double p = 0.0;
    std::vector<int> members;
};

TopSet top_set(const NormalizedTrust& trust, int source, double p);

struct OverlapReport {
    std::vector<double> per_source;
    double mean = 0.0;
    // Sources whose estimated row was all zero (no walker returned a hit);
    // their overlap is reported as 0.
    std::vector<int> zero_row_sources;
};

// Per-source |S_H ∩ S_S| / |S_H| and the network mean. `estimated` plays the
// role of H-hat, `reference` of S-hat.
OverlapReport top_p_overlap(const NormalizedTrust& estimated,
                            const NormalizedTrust& reference, double p);

// Mean per-source Spearman rho of the intersection of the two top sets,
// ranked under both orderings with average ranks for ties. Sources with an
// intersection smaller than 2 (or a degenerate constant ranking) are
// skipped; nullopt when every source is skipped.
std::optional<double> spearman_overlapping(const NormalizedTrust& estimated,
                                           const NormalizedTrust& reference,
                                           double p);

// Mean |reference_ij - estimated_ij| over all pairs (i, j) with j in the
// reference top set but not the estimated one. 0 when no such pair exists.
double trust_difference_nonoverlapping(const NormalizedTrust& estimated,
                                       const NormalizedTrust& reference,
                                       double p);

// Mean over sources of the fraction of other nodes hit at least once.
double coverage(const HitMatrix& hits);

// 1 - walker_total / flooding_total. Requires flooding_total > 0.
double message_reduction(std::int64_t walker_total, std::int64_t flooding_total);

// I_j = |{i != j : trust(i,j) > tau}| / (n-1) for every j. Requires tau > 0.
std::vector<double> global_importance(const NormalizedTrust& trust, double tau);

// sqrt(mean squared componentwise difference). Lengths must match.
double rmse_global(std::span<const double> a, std::span<const double> b);

}  // namespace trustwalk

#endif  // TRUSTWALK_METRICS_HPP
