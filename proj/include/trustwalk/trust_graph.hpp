// Synthetic trust topologies and the row-stochastic matrix S.
//
// A TrustGraph is a directed graph whose edge weights are direct trust
// values T_ij in (0,1]. Generators build a connected undirected skeleton
// (Barabasi-Albert or Erdos-Renyi), turn every undirected edge into two
// directed edges, and draw an independent weight for each direction.

#ifndef TRUSTWALK_TRUST_GRAPH_HPP
#define TRUSTWALK_TRUST_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace trustwalk {

enum class Topology { ScaleFree, ErdosRenyi };

std::string to_string(Topology kind);

struct TrustEdge {
    int target = 0;
    double weight = 0.0;
};

struct TrustGraph {
    int node_count = 0;
    // Out-edges per node, sorted by target id. No self-loops, no duplicates.
    std::vector<std::vector<TrustEdge>> adjacency;
    Topology kind = Topology::ScaleFree;
    std::uint64_t seed = 0;

    int out_degree(int node) const { return static_cast<int>(adjacency[node].size()); }
    std::int64_t edge_count() const;
    double average_out_degree() const;

    // Throws std::logic_error if an invariant is broken: weights in (0,1],
    // no self-loops or duplicate edges, every node with out-degree >= 1.
    void validate() const;
};

// How direct trust weights are drawn. The paper leaves this open; the
// default is Uniform(0,1] independently per directed edge.
struct WeightModel {
    enum class Kind { UniformUnit, Constant };
    Kind kind = Kind::UniformUnit;
    double constant_value = 1.0;

    static WeightModel uniform_unit() { return {Kind::UniformUnit, 1.0}; }
    static WeightModel constant(double value) { return {Kind::Constant, value}; }
};

// Barabasi-Albert preferential attachment: n > m >= 1, each new node
// attaches m undirected edges. The result is connected by construction.
TrustGraph generate_scale_free(int n, int m, std::uint64_t seed);

// G(n, p) skeleton, regenerated with a derived seed until connected
// (at most 100 attempts, then throws std::runtime_error).
TrustGraph generate_erdos_renyi(int n, double p, std::uint64_t seed);

// Redraws every directed edge weight i.i.d. from the model. Node and edge
// set are taken from `skeleton` unchanged.
TrustGraph assign_trust_weights(TrustGraph skeleton, const WeightModel& model,
                                std::uint64_t seed);

// Dense row-stochastic matrix. Construction validates: entries in [0,1],
// every row sum within 1e-12 of 1.
class StochasticMatrix {
public:
    explicit StochasticMatrix(Eigen::MatrixXd rows);

    int dimension() const { return static_cast<int>(rows_.rows()); }
    const Eigen::MatrixXd& rows() const { return rows_; }
    double operator()(int i, int j) const { return rows_(i, j); }

    static constexpr double kRowSumTolerance = 1e-12;

private:
    Eigen::MatrixXd rows_;
};

// S_ij = T_ij / sum_l T_il. Throws std::invalid_argument on a node with
// out-degree zero (unreachable for generated graphs).
StochasticMatrix row_normalize(const TrustGraph& graph);

// Edge-list text format: header line "n <node_count>", then one line per
// directed edge "src dst weight". Round-trips losslessly.
void write_graph(const TrustGraph& graph, std::ostream& out);
TrustGraph read_graph(std::istream& in);
void save_graph(const TrustGraph& graph, const std::string& path);
TrustGraph load_graph(const std::string& path);

}  // namespace trustwalk

#endif  // TRUSTWALK_TRUST_GRAPH_HPP
