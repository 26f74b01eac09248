#include "gdn/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <tuple>

#include "gdn/parallel.hpp"

namespace gdn {

namespace {

double parse_weight(const std::string& tok, std::size_t line_no) {
    double w = 0.0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, w);
    if (ec != std::errc() || ptr != last)
        throw Error(errc::parse_error,
                    "line " + std::to_string(line_no) + ": bad weight '" + tok + "'");
    return w;
}

} // namespace

Graph::Graph(std::vector<std::string> node_ids, const std::vector<EdgeSpec>& edges) {
    std::sort(node_ids.begin(), node_ids.end());
    for (std::size_t i = 1; i < node_ids.size(); ++i)
        if (node_ids[i] == node_ids[i - 1])
            throw Error(errc::invalid_argument, "duplicate node id '" + node_ids[i] + "'");
    if (node_ids.empty()) throw Error(errc::empty_graph, "graph has no nodes");
    nodes_ = std::move(node_ids);
    adjacency_.assign(nodes_.size(), {});

    for (const auto& e : edges) {
        const int i = index_of(e.u);
        const int j = index_of(e.v);
        if (i < 0 || j < 0)
            throw Error(errc::invalid_argument,
                        "edge (" + e.u + ", " + e.v + ") references unknown node");
        if (i == j) throw Error(errc::self_loop, "self-loop at node '" + e.u + "'");
        if (!(e.w > 0.0) || !std::isfinite(e.w))
            throw Error(errc::non_positive_weight,
                        "edge (" + e.u + ", " + e.v + ") has weight " + std::to_string(e.w));
        if (has_edge(i, j))
            throw Error(errc::duplicate_edge, "edge (" + e.u + ", " + e.v + ") listed twice");
        adjacency_[static_cast<std::size_t>(i)].emplace_back(j, e.w);
        adjacency_[static_cast<std::size_t>(j)].emplace_back(i, e.w);
        ++edge_count_;
    }
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

int Graph::index_of(const std::string& id) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id);
    if (it == nodes_.end() || *it != id) return -1;
    return static_cast<int>(it - nodes_.begin());
}

bool Graph::has_edge(int i, int j) const {
    const auto& nbrs = adjacency_[static_cast<std::size_t>(i)];
    auto it = std::lower_bound(nbrs.begin(), nbrs.end(), std::make_pair(j, 0.0),
                               [](const auto& a, const auto& b) { return a.first < b.first; });
    return it != nbrs.end() && it->first == j;
}

double Graph::weight(int i, int j) const {
    const auto& nbrs = adjacency_[static_cast<std::size_t>(i)];
    auto it = std::lower_bound(nbrs.begin(), nbrs.end(), std::make_pair(j, 0.0),
                               [](const auto& a, const auto& b) { return a.first < b.first; });
    if (it == nbrs.end() || it->first != j) return 0.0;
    return it->second;
}

std::vector<std::tuple<int, int, double>> Graph::edges() const {
    std::vector<std::tuple<int, int, double>> out;
    out.reserve(edge_count_);
    for (int i = 0; i < node_count(); ++i)
        for (const auto& [j, w] : neighbors(i))
            if (j > i) out.emplace_back(i, j, w);
    return out;
}

Graph Graph::reweighted(const std::vector<double>& weights) const {
    const auto es = edges();
    if (weights.size() != es.size())
        throw Error(errc::dimension_mismatch, "weight vector does not match edge count");
    std::vector<EdgeSpec> specs;
    specs.reserve(es.size());
    for (std::size_t k = 0; k < es.size(); ++k) {
        const auto& [i, j, w] = es[k];
        specs.push_back({node_id(i), node_id(j), weights[k]});
    }
    return Graph(nodes_, specs);
}

Graph load_edge_list(std::istream& in) {
    std::vector<std::string> ids;
    std::vector<EdgeSpec> edges;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string u, v, w, extra;
        if (!(fields >> u)) continue; // blank
        if (!(fields >> v))
            throw Error(errc::parse_error, "line " + std::to_string(line_no) + ": expected 'u v [w]'");
        EdgeSpec e{u, v, 1.0};
        if (fields >> w) {
            e.w = parse_weight(w, line_no);
            if (fields >> extra)
                throw Error(errc::parse_error,
                            "line " + std::to_string(line_no) + ": trailing field '" + extra + "'");
        }
        ids.push_back(u);
        ids.push_back(v);
        edges.push_back(std::move(e));
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (ids.empty()) throw Error(errc::empty_graph, "edge list contains no nodes");
    return Graph(std::move(ids), edges);
}

Graph load_edge_list(const std::string& text) {
    std::istringstream in(text);
    return load_edge_list(in);
}

std::string to_edge_list(const Graph& g) {
    std::string out;
    char buf[64];
    for (const auto& [i, j, w] : g.edges()) {
        out += g.node_id(i);
        out += ' ';
        out += g.node_id(j);
        out += ' ';
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), w);
        out.append(buf, ptr);
        out += '\n';
    }
    return out;
}

DistanceMatrix all_pairs_distances(const Graph& g, DistanceMode mode, int threads) {
    const int n = g.node_count();
    if (n == 0) throw Error(errc::empty_graph, "graph has no nodes");
    const double inf = std::numeric_limits<double>::infinity();
    DistanceMatrix d(n, n);
    d.setConstant(inf);

    auto bfs_row = [&](int src) {
        auto row = d.row(src);
        std::queue<int> frontier;
        row(src) = 0.0;
        frontier.push(src);
        while (!frontier.empty()) {
            const int u = frontier.front();
            frontier.pop();
            for (const auto& [v, w] : g.neighbors(u)) {
                (void)w;
                if (row(v) == inf) {
                    row(v) = row(u) + 1.0;
                    frontier.push(v);
                }
            }
        }
    };

    auto dijkstra_row = [&](int src) {
        auto row = d.row(src);
        using Item = std::pair<double, int>;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
        row(src) = 0.0;
        heap.emplace(0.0, src);
        while (!heap.empty()) {
            const auto [dist, u] = heap.top();
            heap.pop();
            if (dist > row(u)) continue;
            for (const auto& [v, w] : g.neighbors(u)) {
                const double cand = dist + 1.0 / w;
                if (cand < row(v)) {
                    row(v) = cand;
                    heap.emplace(cand, v);
                }
            }
        }
    };

    if (mode == DistanceMode::hop)
        parallel_for(n, threads, bfs_row);
    else
        parallel_for(n, threads, dijkstra_row);
    // Path sums accumulate in opposite orders for the two directions, which
    // can differ by an ulp; canonicalize on the upper triangle.
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) d(j, i) = d(i, j);
    return d;
}

std::vector<double> edge_correlation_distances(const Graph& g, const Eigen::MatrixXd& expr) {
    const int n = g.node_count();
    if (expr.cols() != n)
        throw Error(errc::dimension_mismatch,
                    "expression matrix has " + std::to_string(expr.cols()) + " columns for " +
                        std::to_string(n) + " nodes");
    const auto m = expr.rows();
    if (m < 2) throw Error(errc::invalid_argument, "need at least 2 samples for correlations");

    // Center and normalize columns once; correlations become dot products.
    Eigen::MatrixXd z = expr.rowwise() - expr.colwise().mean();
    for (int j = 0; j < n; ++j) {
        const double norm = z.col(j).norm();
        if (norm == 0.0)
            throw Error(errc::zero_variance_column,
                        "column '" + g.node_id(j) + "' has zero variance");
        z.col(j) /= norm;
    }

    std::vector<double> dist;
    dist.reserve(g.edge_count());
    for (const auto& [i, j, w] : g.edges()) {
        (void)w;
        const double rho = std::clamp(z.col(i).dot(z.col(j)), -1.0, 1.0);
        dist.push_back(1.0 - rho);
    }
    return dist;
}

Graph coexpression_weights(const Graph& g, const Eigen::MatrixXd& expr, double sigma) {
    if (!(sigma > 0.0))
        throw Error(errc::invalid_argument, "sigma must be positive");
    const auto dist = edge_correlation_distances(g, expr);
    std::vector<double> weights;
    weights.reserve(dist.size());
    for (const double d : dist) weights.push_back(std::exp(-(d * d) / (sigma * sigma)));
    return g.reweighted(weights);
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& keep) {
    std::vector<char> keep_mask(static_cast<std::size_t>(g.node_count()), 0);
    std::vector<std::string> ids;
    ids.reserve(keep.size());
    for (const int i : keep) {
        if (i < 0 || i >= g.node_count())
            throw Error(errc::invalid_argument, "node index out of range");
        if (keep_mask[static_cast<std::size_t>(i)])
            throw Error(errc::invalid_argument, "duplicate node index in subset");
        keep_mask[static_cast<std::size_t>(i)] = 1;
        ids.push_back(g.node_id(i));
    }
    std::vector<EdgeSpec> edges;
    for (const auto& [i, j, w] : g.edges())
        if (keep_mask[static_cast<std::size_t>(i)] && keep_mask[static_cast<std::size_t>(j)])
            edges.push_back({g.node_id(i), g.node_id(j), w});
    return Graph(std::move(ids), edges);
}

} // namespace gdn
