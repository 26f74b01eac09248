#ifndef GDN_PARTITION_HPP
#define GDN_PARTITION_HPP

#include <vector>

#include "gdn/errors.hpp"

namespace gdn {

// Disjoint cover of the node index set [0, n). Clusters are listed in order
// of their smallest member; `assignment[q]` is the cluster index of node q.
struct Partition {
    std::vector<std::vector<int>> clusters;
    std::vector<int> assignment;

    int node_count() const { return static_cast<int>(assignment.size()); }
    int cluster_count() const { return static_cast<int>(clusters.size()); }
};

// Build a Partition from a node -> cluster-label map (labels need not be
// contiguous). Clusters come out ordered by smallest member and relabeled.
Partition partition_from_labels(const std::vector<int>& labels);

Partition trivial_partition(int node_count);
Partition singleton_partition(int node_count);

// Throws unless clusters are nonempty, pairwise disjoint, cover [0, n)
// exactly, and agree with `assignment`.
void validate_partition(const Partition& p);

// True when every cluster of `fine` is contained in a single cluster of
// `coarse` (both over the same node set).
bool is_refinement(const Partition& fine, const Partition& coarse);

// Nested chain of partitions: levels[0] is the one-cluster partition and
// cluster counts strictly increase with the level index.
struct Filtration {
    int node_count = 0;
    std::vector<Partition> levels;

    int level_count() const { return static_cast<int>(levels.size()); }
    const Partition& level(int t) const { return levels[static_cast<std::size_t>(t)]; }
};

// Throws unless every level is a valid partition, level 0 is trivial, counts
// strictly increase, and each level refines the previous one.
void validate_filtration(const Filtration& f);

} // namespace gdn

#endif
