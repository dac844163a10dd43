#include "trustwalk/twr_oracle.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace trustwalk {

NormalizedTrust::NormalizedTrust(Eigen::MatrixXd rows) : rows_(std::move(rows)) {
    if (rows_.rows() != rows_.cols() || rows_.rows() == 0) {
        throw std::invalid_argument("normalized trust: must be square and non-empty");
    }
    for (Eigen::Index i = 0; i < rows_.rows(); ++i) {
        if (rows_(i, i) != 0.0) {
            throw std::invalid_argument("normalized trust: nonzero diagonal");
        }
        double sum = rows_.row(i).sum();
        if (rows_.row(i).minCoeff() < 0.0) {
            throw std::invalid_argument("normalized trust: negative entry");
        }
        if (sum != 0.0 && std::abs(sum - 1.0) > kRowSumTolerance) {
            throw std::invalid_argument("normalized trust: row " + std::to_string(i) +
                                        " sums to " + std::to_string(sum));
        }
    }
}

TrustMatrix exact_indirect_trust(const StochasticMatrix& S, double beta) {
    if (beta < 0.0 || beta >= 1.0) {
        throw std::invalid_argument("exact_indirect_trust: beta must be in [0,1)");
    }
    const int n = S.dimension();
    // Solve (I - beta*S) X = S; beta < 1 keeps the system nonsingular since
    // the spectral radius of beta*S is beta.
    Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n) - beta * S.rows();
    TrustMatrix result;
    result.values = Eigen::PartialPivLU<Eigen::MatrixXd>(system).solve(S.rows());
    result.damping = beta;
    return result;
}

IterativeResult iterative_indirect_trust(const StochasticMatrix& S, double beta,
                                         double tol, int max_iterations) {
    if (beta < 0.0 || beta >= 1.0) {
        throw std::invalid_argument("iterative_indirect_trust: beta must be in [0,1)");
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("iterative_indirect_trust: tol must be positive");
    }
    const int n = S.dimension();

    // Sparse copy of S for the per-iteration products; out-degrees drive the
    // message accounting.
    Eigen::SparseMatrix<double> sparse(n, n);
    std::vector<Eigen::Triplet<double>> triplets;
    std::vector<std::int64_t> out_degree(n, 0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double v = S(i, j);
            if (v > 0.0) {
                triplets.emplace_back(i, j, v);
                ++out_degree[i];
            }
        }
    }
    sparse.setFromTriplets(triplets.begin(), triplets.end());
    std::int64_t directed_edges = 0;
    for (std::int64_t d : out_degree) directed_edges += d;

    IterativeResult result;
    Eigen::MatrixXd current = S.rows();  // T^(0) = S
    Eigen::MatrixXd next(n, n);
    for (int m = 1; m <= max_iterations; ++m) {
        // Each node sends what it currently knows to every neighbor.
        result.vector_messages += directed_edges;
        for (int k = 0; k < n; ++k) {
            std::int64_t known = (current.row(k).array() > 0.0).count();
            result.value_messages += out_degree[k] * known;
        }

        next.noalias() = beta * (sparse * current);
        next += S.rows();
        double change = (next - current).cwiseAbs().maxCoeff();
        current.swap(next);
        if (change < tol) {
            result.iterations = m;
            result.trust.values = std::move(current);
            result.trust.damping = beta;
            return result;
        }
    }
    throw std::runtime_error("iterative_indirect_trust: no convergence within " +
                             std::to_string(max_iterations) + " iterations");
}

NormalizedTrust normalize_rows(const Eigen::MatrixXd& values) {
    if (values.rows() != values.cols() || values.rows() == 0) {
        throw std::invalid_argument("normalize_rows: must be square and non-empty");
    }
    if (values.minCoeff() < 0.0) {
        throw std::invalid_argument("normalize_rows: entries must be nonnegative");
    }
    Eigen::MatrixXd rows = values;
    rows.diagonal().setZero();  // self-trust is not reported
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
        double sum = rows.row(i).sum();
        if (sum > 0.0) rows.row(i) /= sum;
    }
    return NormalizedTrust(std::move(rows));
}

NormalizedTrust normalize_rows(const TrustMatrix& trust) {
    return normalize_rows(trust.values);
}

TrustMatrix expected_hits(const StochasticMatrix& S, double gamma, double walkers_per_node) {
    if (walkers_per_node < 1.0) {
        throw std::invalid_argument("expected_hits: walkers_per_node must be >= 1");
    }
    return expected_hits(S, gamma,
                         Eigen::VectorXd::Constant(S.dimension(), walkers_per_node));
}

TrustMatrix expected_hits(const StochasticMatrix& S, double gamma,
                          const Eigen::VectorXd& walkers_per_node) {
    if (!(gamma > 0.0) || gamma >= 1.0) {
        throw std::invalid_argument("expected_hits: gamma must be in (0,1)");
    }
    if (walkers_per_node.size() != S.dimension() || walkers_per_node.minCoeff() < 0.0) {
        throw std::invalid_argument("expected_hits: bad walkers_per_node vector");
    }
    TrustMatrix h1 = exact_indirect_trust(S, gamma);
    h1.values = walkers_per_node.asDiagonal() * h1.values;  // H = N * H1
    return h1;
}

void write_matrix_csv(const Eigen::MatrixXd& m, std::ostream& out) {
    char buf[48];
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
            if (j) out << ',';
            out << buf;
        }
        out << '\n';
    }
}

std::string matrix_csv_string(const Eigen::MatrixXd& m) {
    std::ostringstream out;
    write_matrix_csv(m, out);
    return out.str();
}

Eigen::MatrixXd read_matrix_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            std::size_t comma = line.find(',', pos);
            if (comma == std::string::npos) comma = line.size();
            row.push_back(std::stod(line.substr(pos, comma - pos)));
            pos = comma + 1;
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) return {};
    Eigen::MatrixXd m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size()) {
            throw std::runtime_error("read_matrix_csv: ragged rows");
        }
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

}  // namespace trustwalk
