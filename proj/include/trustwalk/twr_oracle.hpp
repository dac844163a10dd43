// TrustWebRank ground truth: exact and iterative indirect trust, row
// normalization, and the expected-hit matrix of the walker protocol.
//
// The exact form is T = (I - beta*S)^-1 * S, computed by a dense LU solve
// of (I - beta*S) X = S. The expected-hit matrix W * (I - gamma*S)^-1 * S
// shares the same resolvent.

#ifndef TRUSTWALK_TWR_ORACLE_HPP
#define TRUSTWALK_TWR_ORACLE_HPP

#include <cstdint>

#include <Eigen/Dense>

#include "trustwalk/trust_graph.hpp"

namespace trustwalk {

// Dense nonnegative indirect-trust values plus the damping they were
// computed at. The diagonal (self-trust) is computed by the solver but
// excluded from rankings, normalization and metrics downstream.
struct TrustMatrix {
    Eigen::MatrixXd values;
    double damping = 0.0;

    int dimension() const { return static_cast<int>(values.rows()); }
};

// Row-stochastic normalized trust. Rows with any nonzero entry sum to 1
// within 1e-12; all-zero rows stay all-zero. Diagonal is always zero.
class NormalizedTrust {
public:
    explicit NormalizedTrust(Eigen::MatrixXd rows);

    int dimension() const { return static_cast<int>(rows_.rows()); }
    const Eigen::MatrixXd& rows() const { return rows_; }
    double operator()(int i, int j) const { return rows_(i, j); }

    static constexpr double kRowSumTolerance = 1e-12;

private:
    Eigen::MatrixXd rows_;
};

// Solves (I - beta*S) X = S. Requires beta in [0, 1).
TrustMatrix exact_indirect_trust(const StochasticMatrix& S, double beta);

struct IterativeResult {
    TrustMatrix trust;
    int iterations = 0;
    // One unit per (node, out-edge, iteration): each node pushes its current
    // trust vector to every neighbor once per round.
    std::int64_t vector_messages = 0;
    // One unit per trust value actually carried: out-degree times the number
    // of destinations the sender currently knows, summed per round. This is
    // the flooding total the message-overhead comparison uses.
    std::int64_t value_messages = 0;
};

// Fixed-point iteration T <- S + beta*S*T starting from T = S, stopping when
// the max entrywise change drops below tol. Throws std::runtime_error if
// max_iterations is exceeded.
IterativeResult iterative_indirect_trust(const StochasticMatrix& S, double beta,
                                         double tol, int max_iterations = 10000);

// Zeroes the diagonal, then divides each row by its sum. All-zero rows are
// left unchanged.
NormalizedTrust normalize_rows(const Eigen::MatrixXd& values);
NormalizedTrust normalize_rows(const TrustMatrix& trust);

// W * (I - gamma*S)^-1 * S: analytic expectation of walker hit counts in
// Geometric damping mode. Requires gamma in (0,1) and W >= 1.
TrustMatrix expected_hits(const StochasticMatrix& S, double gamma, double walkers_per_node);
// Per-node walker counts (diagonal N of the paper): row i scaled by W_i.
TrustMatrix expected_hits(const StochasticMatrix& S, double gamma,
                          const Eigen::VectorXd& walkers_per_node);

// Dense CSV with one row per source node, full precision. Used for
// golden-file regression checks.
void write_matrix_csv(const Eigen::MatrixXd& m, std::ostream& out);
std::string matrix_csv_string(const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix_csv(std::istream& in);

}  // namespace trustwalk

#endif  // TRUSTWALK_TWR_ORACLE_HPP
