#include "trustwalk/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace trustwalk {

int top_set_size(int dimension, double p) {
    if (dimension < 2 || !(p > 0.0) || p > 1.0) {
        throw std::invalid_argument("top_set_size: need n >= 2 and p in (0,1]");
    }
    int k = static_cast<int>(std::ceil(p * (dimension - 1)));
    if (k < 1) {
        throw std::invalid_argument("top_set_size: p*(n-1) below 1");
    }
    return k;
}

namespace {

// Candidate ids ranked by (trust desc, id asc), source excluded.
std::vector<int> ranked_candidates(const NormalizedTrust& trust, int source) {
    const int n = trust.dimension();
    std::vector<int> ids;
    ids.reserve(n - 1);
    for (int j = 0; j < n; ++j) {
        if (j != source) ids.push_back(j);
    }
    const auto& row = trust.rows();
    std::sort(ids.begin(), ids.end(), [&](int a, int b) {
        double ta = row(source, a), tb = row(source, b);
        if (ta != tb) return ta > tb;
        return a < b;
    });
    return ids;
}

std::vector<int> top_members(const NormalizedTrust& trust, int source, int k) {
    std::vector<int> ids = ranked_candidates(trust, source);
    ids.resize(k);
    std::sort(ids.begin(), ids.end());
    return ids;
}

// Average ranks (1 = most trusted) of `members` under the given row, with
// tied values sharing the mean of their rank range.
std::vector<double> average_ranks(const NormalizedTrust& trust, int source,
                                  const std::vector<int>& members) {
    const auto& row = trust.rows();
    std::vector<int> order(members.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        double ta = row(source, members[a]), tb = row(source, members[b]);
        if (ta != tb) return ta > tb;
        return members[a] < members[b];
    });
    std::vector<double> ranks(members.size(), 0.0);
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() &&
               row(source, members[order[j + 1]]) == row(source, members[order[i]])) {
            ++j;
        }
        double mean_rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = mean_rank;
        i = j + 1;
    }
    return ranks;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const double n = static_cast<double>(a.size());
    double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
    double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
    double cov = 0.0, va = 0.0, vb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        cov += (a[i] - ma) * (b[i] - mb);
        va += (a[i] - ma) * (a[i] - ma);
        vb += (b[i] - mb) * (b[i] - mb);
    }
    if (va == 0.0 || vb == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return cov / std::sqrt(va * vb);
}

}  // namespace

TopSet top_set(const NormalizedTrust& trust, int source, double p) {
    if (source < 0 || source >= trust.dimension()) {
        throw std::invalid_argument("top_set: source out of range");
    }
    TopSet set;
    set.source = source;
    set.p = p;
    set.members = top_members(trust, source, top_set_size(trust.dimension(), p));
    return set;
}

OverlapReport top_p_overlap(const NormalizedTrust& estimated,
                            const NormalizedTrust& reference, double p) {
    const int n = estimated.dimension();
    if (reference.dimension() != n) {
        throw std::invalid_argument("top_p_overlap: dimension mismatch");
    }
    const int k = top_set_size(n, p);
    OverlapReport report;
    report.per_source.resize(n, 0.0);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        if (estimated.rows().row(i).sum() == 0.0) {
            report.zero_row_sources.push_back(i);
            continue;  // no walker came back: overlap 0 for this source
        }
        std::vector<int> est = top_members(estimated, i, k);
        std::vector<int> ref = top_members(reference, i, k);
        std::vector<int> common;
        std::set_intersection(est.begin(), est.end(), ref.begin(), ref.end(),
                              std::back_inserter(common));
        double overlap = static_cast<double>(common.size()) / static_cast<double>(k);
        report.per_source[i] = overlap;
        sum += overlap;
    }
    report.mean = sum / n;
    return report;
}

std::optional<double> spearman_overlapping(const NormalizedTrust& estimated,
                                           const NormalizedTrust& reference,
                                           double p) {
    const int n = estimated.dimension();
    if (reference.dimension() != n) {
        throw std::invalid_argument("spearman_overlapping: dimension mismatch");
    }
    const int k = top_set_size(n, p);
    double sum = 0.0;
    int counted = 0;
    for (int i = 0; i < n; ++i) {
        std::vector<int> est = top_members(estimated, i, k);
        std::vector<int> ref = top_members(reference, i, k);
        std::vector<int> common;
        std::set_intersection(est.begin(), est.end(), ref.begin(), ref.end(),
                              std::back_inserter(common));
        if (common.size() < 2) continue;
        double rho = pearson(average_ranks(estimated, i, common),
                             average_ranks(reference, i, common));
        if (std::isnan(rho)) continue;  // constant ranking on one side
        sum += rho;
        ++counted;
    }
    if (counted == 0) return std::nullopt;
    return sum / counted;
}

double trust_difference_nonoverlapping(const NormalizedTrust& estimated,
                                       const NormalizedTrust& reference,
                                       double p) {
    const int n = estimated.dimension();
    if (reference.dimension() != n) {
        throw std::invalid_argument("trust_difference_nonoverlapping: dimension mismatch");
    }
    const int k = top_set_size(n, p);
    double sum = 0.0;
    std::int64_t pairs = 0;
    for (int i = 0; i < n; ++i) {
        std::vector<int> est = top_members(estimated, i, k);
        std::vector<int> ref = top_members(reference, i, k);
        std::vector<int> missed;  // reference top nodes the estimate did not rank
        std::set_difference(ref.begin(), ref.end(), est.begin(), est.end(),
                            std::back_inserter(missed));
        for (int j : missed) {
            sum += std::abs(reference(i, j) - estimated(i, j));
            ++pairs;
        }
    }
    return pairs == 0 ? 0.0 : sum / static_cast<double>(pairs);
}

double coverage(const HitMatrix& hits) {
    const int n = hits.dimension();
    if (n < 2) return 0.0;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        int reached = 0;
        for (int j = 0; j < n; ++j) {
            if (j != i && hits.counts(i, j) > 0) ++reached;
        }
        sum += static_cast<double>(reached) / (n - 1);
    }
    return sum / n;
}

double message_reduction(std::int64_t walker_total, std::int64_t flooding_total) {
    if (flooding_total <= 0) {
        throw std::invalid_argument("message_reduction: flooding_total must be positive");
    }
    return 1.0 - static_cast<double>(walker_total) / static_cast<double>(flooding_total);
}

std::vector<double> global_importance(const NormalizedTrust& trust, double tau) {
    if (!(tau > 0.0)) {
        throw std::invalid_argument("global_importance: tau must be positive");
    }
    const int n = trust.dimension();
    std::vector<double> importance(n, 0.0);
    for (int j = 0; j < n; ++j) {
        int supporters = 0;
        for (int i = 0; i < n; ++i) {
            if (i != j && trust(i, j) > tau) ++supporters;
        }
        importance[j] = static_cast<double>(supporters) / (n - 1);
    }
    return importance;
}

double rmse_global(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty()) {
        throw std::invalid_argument("rmse_global: length mismatch");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        sum += d * d;
    }
    return std::sqrt(sum / static_cast<double>(a.size()));
}

}  // namespace trustwalk
