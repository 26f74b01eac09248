#include "gdn/partition.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

namespace gdn {

Partition partition_from_labels(const std::vector<int>& labels) {
    Partition p;
    p.assignment.resize(labels.size());
    std::unordered_map<int, int> relabel;
    relabel.reserve(labels.size());
    for (std::size_t q = 0; q < labels.size(); ++q) {
        auto [it, inserted] = relabel.try_emplace(labels[q], static_cast<int>(p.clusters.size()));
        if (inserted) p.clusters.emplace_back();
        p.assignment[q] = it->second;
        p.clusters[static_cast<std::size_t>(it->second)].push_back(static_cast<int>(q));
    }
    return p;
}

Partition trivial_partition(int node_count) {
    std::vector<int> labels(static_cast<std::size_t>(node_count), 0);
    return partition_from_labels(labels);
}

Partition singleton_partition(int node_count) {
    std::vector<int> labels(static_cast<std::size_t>(node_count));
    for (int q = 0; q < node_count; ++q) labels[static_cast<std::size_t>(q)] = q;
    return partition_from_labels(labels);
}

void validate_partition(const Partition& p) {
    const int n = p.node_count();
    if (p.clusters.empty()) throw Error(errc::invalid_argument, "partition has no clusters");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (std::size_t c = 0; c < p.clusters.size(); ++c) {
        if (p.clusters[c].empty())
            throw Error(errc::invalid_argument, "cluster " + std::to_string(c) + " is empty");
        for (const int q : p.clusters[c]) {
            if (q < 0 || q >= n)
                throw Error(errc::invalid_argument, "node index out of range");
            if (seen[static_cast<std::size_t>(q)])
                throw Error(errc::invalid_argument,
                            "node " + std::to_string(q) + " appears in two clusters");
            seen[static_cast<std::size_t>(q)] = 1;
            if (p.assignment[static_cast<std::size_t>(q)] != static_cast<int>(c))
                throw Error(errc::invalid_argument,
                            "assignment disagrees with clusters at node " + std::to_string(q));
        }
    }
    for (int q = 0; q < n; ++q)
        if (!seen[static_cast<std::size_t>(q)])
            throw Error(errc::invalid_argument,
                        "node " + std::to_string(q) + " missing from every cluster");
}

bool is_refinement(const Partition& fine, const Partition& coarse) {
    if (fine.node_count() != coarse.node_count()) return false;
    for (const auto& cluster : fine.clusters) {
        const int home = coarse.assignment[static_cast<std::size_t>(cluster.front())];
        for (const int q : cluster)
            if (coarse.assignment[static_cast<std::size_t>(q)] != home) return false;
    }
    return true;
}

void validate_filtration(const Filtration& f) {
    if (f.levels.empty()) throw Error(errc::too_few_levels, "filtration has no levels");
    if (f.levels.front().cluster_count() != 1)
        throw Error(errc::invalid_argument, "level 0 must be the one-cluster partition");
    for (const auto& level : f.levels) {
        if (level.node_count() != f.node_count)
            throw Error(errc::dimension_mismatch, "level node count mismatch");
        validate_partition(level);
    }
    for (std::size_t t = 1; t < f.levels.size(); ++t) {
        if (f.levels[t].cluster_count() <= f.levels[t - 1].cluster_count())
            throw Error(errc::invalid_argument,
                        "cluster counts must strictly increase across levels");
        if (!is_refinement(f.levels[t], f.levels[t - 1]))
            throw Error(errc::invalid_argument,
                        "level " + std::to_string(t) + " does not refine level " +
                            std::to_string(t - 1));
    }
}

} // namespace gdn
