#include "trustwalk/trust_graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "trustwalk/rng.hpp"

namespace trustwalk {

std::string to_string(Topology kind) {
    return kind == Topology::ScaleFree ? "scale_free" : "erdos_renyi";
}

std::int64_t TrustGraph::edge_count() const {
    std::int64_t total = 0;
    for (const auto& row : adjacency) total += static_cast<std::int64_t>(row.size());
    return total;
}

double TrustGraph::average_out_degree() const {
    if (node_count == 0) return 0.0;
    return static_cast<double>(edge_count()) / node_count;
}

void TrustGraph::validate() const {
    if (node_count <= 0 || static_cast<int>(adjacency.size()) != node_count) {
        throw std::logic_error("trust graph: adjacency size mismatch");
    }
    for (int i = 0; i < node_count; ++i) {
        const auto& row = adjacency[i];
        if (row.empty()) {
            throw std::logic_error("trust graph: node " + std::to_string(i) +
                                   " has out-degree 0");
        }
        int prev = -1;
        for (const TrustEdge& e : row) {
            if (e.target < 0 || e.target >= node_count) {
                throw std::logic_error("trust graph: edge target out of range");
            }
            if (e.target == i) {
                throw std::logic_error("trust graph: self-loop at node " + std::to_string(i));
            }
            if (e.target <= prev) {
                throw std::logic_error("trust graph: unsorted or duplicate edge");
            }
            if (!(e.weight > 0.0) || e.weight > 1.0) {
                throw std::logic_error("trust graph: weight outside (0,1]");
            }
            prev = e.target;
        }
    }
}

namespace {

// Undirected skeleton as per-node neighbor sets; turned into a directed
// TrustGraph (two directed edges per undirected edge) once weights are drawn.
using Skeleton = std::vector<std::set<int>>;

TrustGraph skeleton_to_graph(const Skeleton& skeleton, Topology kind, std::uint64_t seed) {
    TrustGraph g;
    g.node_count = static_cast<int>(skeleton.size());
    g.kind = kind;
    g.seed = seed;
    g.adjacency.resize(skeleton.size());
    for (std::size_t i = 0; i < skeleton.size(); ++i) {
        g.adjacency[i].reserve(skeleton[i].size());
        for (int j : skeleton[i]) {
            g.adjacency[i].push_back({j, 1.0});  // placeholder weight
        }
    }
    return g;
}

bool skeleton_connected(const Skeleton& skeleton) {
    const int n = static_cast<int>(skeleton.size());
    if (n == 0) return false;
    std::vector<char> seen(n, 0);
    std::queue<int> frontier;
    frontier.push(0);
    seen[0] = 1;
    int visited = 1;
    while (!frontier.empty()) {
        int u = frontier.front();
        frontier.pop();
        for (int v : skeleton[u]) {
            if (!seen[v]) {
                seen[v] = 1;
                ++visited;
                frontier.push(v);
            }
        }
    }
    return visited == n;
}

}  // namespace

TrustGraph generate_scale_free(int n, int m, std::uint64_t seed) {
    if (m < 1 || n <= m) {
        throw std::invalid_argument("generate_scale_free: need n > m >= 1");
    }
    std::mt19937_64 rng(derive_seed(seed, 0x5CA1E));
    Skeleton skeleton(n);

    // Preferential attachment via the repeated-endpoints list: sampling a
    // uniform element of `repeated` picks a node with probability
    // proportional to its degree.
    std::vector<int> repeated;
    repeated.reserve(static_cast<std::size_t>(2) * m * (n - m));
    std::vector<int> targets(m);
    for (int t = 0; t < m; ++t) targets[t] = t;  // first new node links to all seeds

    for (int source = m; source < n; ++source) {
        for (int t : targets) {
            skeleton[source].insert(t);
            skeleton[t].insert(source);
        }
        for (int t : targets) repeated.push_back(t);
        repeated.insert(repeated.end(), m, source);

        if (source + 1 < n) {
            std::set<int> next;
            std::uniform_int_distribution<std::size_t> pick(0, repeated.size() - 1);
            while (static_cast<int>(next.size()) < m) {
                next.insert(repeated[pick(rng)]);
            }
            targets.assign(next.begin(), next.end());
        }
    }

    TrustGraph g = skeleton_to_graph(skeleton, Topology::ScaleFree, seed);
    return assign_trust_weights(std::move(g), WeightModel::uniform_unit(),
                                derive_seed(seed, 0x3e16));
}

TrustGraph generate_erdos_renyi(int n, double p, std::uint64_t seed) {
    if (n < 2 || !(p > 0.0) || p > 1.0) {
        throw std::invalid_argument("generate_erdos_renyi: need n >= 2, p in (0,1]");
    }
    constexpr int kMaxAttempts = 100;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        std::mt19937_64 rng(derive_seed(seed, 0xE12D05 + attempt));
        std::uniform_real_distribution<double> coin(0.0, 1.0);
        Skeleton skeleton(n);
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (coin(rng) < p) {
                    skeleton[i].insert(j);
                    skeleton[j].insert(i);
                }
            }
        }
        if (!skeleton_connected(skeleton)) continue;
        TrustGraph g = skeleton_to_graph(skeleton, Topology::ErdosRenyi, seed);
        return assign_trust_weights(std::move(g), WeightModel::uniform_unit(),
                                    derive_seed(seed, 0x3e16));
    }
    throw std::runtime_error(
        "generate_erdos_renyi: no connected G(n,p) sample after 100 attempts");
}

TrustGraph assign_trust_weights(TrustGraph skeleton, const WeightModel& model,
                                std::uint64_t seed) {
    if (skeleton.edge_count() == 0) {
        throw std::invalid_argument("assign_trust_weights: skeleton has no edges");
    }
    if (model.kind == WeightModel::Kind::Constant &&
        (!(model.constant_value > 0.0) || model.constant_value > 1.0)) {
        throw std::invalid_argument("assign_trust_weights: constant weight outside (0,1]");
    }
    std::mt19937_64 rng(derive_seed(seed, 0x7105));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (auto& row : skeleton.adjacency) {
        for (TrustEdge& e : row) {
            e.weight = model.kind == WeightModel::Kind::Constant
                           ? model.constant_value
                           : 1.0 - unit(rng);  // maps [0,1) onto (0,1]
        }
    }
    return skeleton;
}

StochasticMatrix::StochasticMatrix(Eigen::MatrixXd rows) : rows_(std::move(rows)) {
    if (rows_.rows() != rows_.cols() || rows_.rows() == 0) {
        throw std::invalid_argument("stochastic matrix: must be square and non-empty");
    }
    for (Eigen::Index i = 0; i < rows_.rows(); ++i) {
        double sum = 0.0;
        for (Eigen::Index j = 0; j < rows_.cols(); ++j) {
            double v = rows_(i, j);
            if (v < 0.0 || v > 1.0) {
                throw std::invalid_argument("stochastic matrix: entry outside [0,1]");
            }
            sum += v;
        }
        if (std::abs(sum - 1.0) > kRowSumTolerance) {
            throw std::invalid_argument("stochastic matrix: row " + std::to_string(i) +
                                        " sums to " + std::to_string(sum));
        }
    }
}

StochasticMatrix row_normalize(const TrustGraph& graph) {
    const int n = graph.node_count;
    Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const auto& out = graph.adjacency[i];
        if (out.empty()) {
            throw std::invalid_argument("row_normalize: node " + std::to_string(i) +
                                        " has out-degree 0");
        }
        double total = 0.0;
        for (const TrustEdge& e : out) total += e.weight;
        for (const TrustEdge& e : out) rows(i, e.target) = e.weight / total;
    }
    return StochasticMatrix(std::move(rows));
}

void write_graph(const TrustGraph& graph, std::ostream& out) {
    out << "n " << graph.node_count << "\n";
    char buf[64];
    for (int i = 0; i < graph.node_count; ++i) {
        for (const TrustEdge& e : graph.adjacency[i]) {
            std::snprintf(buf, sizeof(buf), "%d %d %.17g\n", i, e.target, e.weight);
            out << buf;
        }
    }
}

TrustGraph read_graph(std::istream& in) {
    std::string tag;
    int n = 0;
    if (!(in >> tag >> n) || tag != "n" || n <= 0) {
        throw std::runtime_error("read_graph: bad header, expected 'n <node_count>'");
    }
    TrustGraph g;
    g.node_count = n;
    g.adjacency.resize(n);
    int src = 0, dst = 0;
    double w = 0.0;
    while (in >> src >> dst >> w) {
        if (src < 0 || src >= n || dst < 0 || dst >= n) {
            throw std::runtime_error("read_graph: edge endpoint out of range");
        }
        g.adjacency[src].push_back({dst, w});
    }
    for (auto& row : g.adjacency) {
        std::sort(row.begin(), row.end(),
                  [](const TrustEdge& a, const TrustEdge& b) { return a.target < b.target; });
    }
    g.validate();
    return g;
}

void save_graph(const TrustGraph& graph, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_graph: cannot open " + path);
    write_graph(graph, out);
    if (!out.good()) throw std::runtime_error("save_graph: write failed for " + path);
}

TrustGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_graph: cannot open " + path);
    return read_graph(in);
}

}  // namespace trustwalk
