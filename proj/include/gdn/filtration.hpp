#ifndef GDN_FILTRATION_HPP
#define GDN_FILTRATION_HPP

#include <cstdint>
#include <vector>

#include "gdn/graph.hpp"
#include "gdn/partition.hpp"

namespace gdn {

// Greedy average-linkage agglomeration on edge weight: starting from
// singletons, repeatedly merge the cluster pair (a, b) maximizing
// inter-cluster weight / (|a| * |b|), snapshotting a level whenever the
// cluster count hits one of `target_sizes`. Ties break on the
// lexicographically smallest pair of cluster indices; pairs with zero
// inter-cluster weight merge only once no positive-weight pair remains.
// Returned levels are [one-cluster partition] + snapshots, coarse to fine.
Filtration multilevel_filtration(const Graph& g, const std::vector<int>& target_sizes);

// Same agglomeration loop with merge pairs drawn uniformly at random from a
// seeded stream; bit-identical output for identical (inputs, seed).
Filtration random_filtration(int node_count, const std::vector<int>& target_sizes,
                             std::uint64_t seed);

// Discretized unit interval: nodes 0 .. 2^T - 1, level t splits them into
// 2^t contiguous blocks of length 2^(T-t).
Filtration dyadic_filtration(int T);

// min over t of |A_{t+1}| / |A_t|; the chain grows geometrically when > 1.
double growth_constant(const Filtration& f);

// g(t) = ||f_t - f|| - ||f_{t+1} - f|| for t = 0 .. T-1, where f_t is the
// cluster average of `f_true` at level t (Euclidean norm over nodes). Each
// entry is >= 0 up to rounding: the averages are projections onto nested
// subspaces.
std::vector<double> uniformity_gaps(const Signal& f_true, const Filtration& filt);

} // namespace gdn

#endif
