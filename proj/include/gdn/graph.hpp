#ifndef GDN_GRAPH_HPP
#define GDN_GRAPH_HPP

#include <Eigen/Dense>

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "gdn/errors.hpp"

namespace gdn {

// A real-valued function on graph nodes, one entry per node in node order.
using Signal = Eigen::VectorXd;

// Node-pair graph distances; symmetric, zero diagonal, +infinity between
// connected components.
using DistanceMatrix = Eigen::MatrixXd;

enum class DistanceMode { hop, weighted };

struct EdgeSpec {
    std::string u;
    std::string v;
    double w = 1.0;
};

// Weighted undirected graph over opaque string node identifiers. Node order
// is fixed at construction (identifiers sorted), weights strictly positive,
// no self-loops, each unordered pair stored once.
class Graph {
public:
    Graph(std::vector<std::string> node_ids, const std::vector<EdgeSpec>& edges);

    int node_count() const { return static_cast<int>(nodes_.size()); }
    std::size_t edge_count() const { return edge_count_; }

    const std::vector<std::string>& nodes() const { return nodes_; }
    const std::string& node_id(int i) const { return nodes_[static_cast<std::size_t>(i)]; }

    // Index of a node id in node order, or -1 when absent.
    int index_of(const std::string& id) const;

    bool has_edge(int i, int j) const;
    // Weight of edge (i, j); 0 when the edge does not exist.
    double weight(int i, int j) const;

    // Neighbors of node i with weights, ascending by neighbor index.
    const std::vector<std::pair<int, double>>& neighbors(int i) const {
        return adjacency_[static_cast<std::size_t>(i)];
    }

    // All edges as (i, j, w) with i < j, lexicographically ordered.
    std::vector<std::tuple<int, int, double>> edges() const;

    // Same nodes and edge set with every weight replaced; `weights` must be
    // keyed like edges() output (parallel vector).
    Graph reweighted(const std::vector<double>& weights) const;

private:
    std::vector<std::string> nodes_;
    std::vector<std::vector<std::pair<int, double>>> adjacency_;
    std::size_t edge_count_ = 0;
};

// Parse a whitespace-separated edge list: lines "u v" or "u v w", '#' starts
// a comment, blank lines ignored. Missing weights default to 1.0.
Graph load_edge_list(std::istream& in);
Graph load_edge_list(const std::string& text);

// Canonical text form: one "u v w" line per edge, node pairs in node order,
// weights at full round-trip precision. Loading the result reproduces the
// graph byte-identically.
std::string to_edge_list(const Graph& g);

// All-pairs shortest-path distances. Hop mode counts each edge as length 1;
// weighted mode runs Dijkstra with edge length 1/w (higher similarity means
// shorter). Rows may be computed in parallel; output is schedule-independent.
DistanceMatrix all_pairs_distances(const Graph& g, DistanceMode mode, int threads = 1);

// Correlation distance d_ij = 1 - pearson(column i, column j) for every edge
// of g, in edges() order. `expr` is samples x nodes, columns in node order.
std::vector<double> edge_correlation_distances(const Graph& g, const Eigen::MatrixXd& expr);

// Reweight every edge to exp(-d_ij^2 / sigma^2) with d_ij the correlation
// distance above. Edge set unchanged; all new weights lie in (0, 1].
Graph coexpression_weights(const Graph& g, const Eigen::MatrixXd& expr, double sigma);

// Subgraph induced by the given node indices (any order; duplicates invalid).
// Kept nodes preserve their relative order.
Graph induced_subgraph(const Graph& g, const std::vector<int>& keep);

} // namespace gdn

#endif
