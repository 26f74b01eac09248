#include "gdn/filtration.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <string>

#include "gdn/averaging.hpp"
#include "gdn/rng.hpp"

namespace gdn {

namespace {

void check_target_sizes(const std::vector<int>& sizes, int node_count) {
    if (sizes.empty()) throw Error(errc::sizes_out_of_range, "no target sizes given");
    int prev = 0;
    for (const int s : sizes) {
        if (s <= prev)
            throw Error(errc::sizes_out_of_range, "target sizes must be strictly ascending");
        prev = s;
    }
    if (sizes.front() < 1 || sizes.back() > node_count)
        throw Error(errc::sizes_out_of_range,
                    "target sizes must lie in [1, " + std::to_string(node_count) + "]");
}

// Shared agglomeration state: cluster ids are the smallest node index a
// cluster contains (merging keeps the smaller id), so ordering clusters by
// id equals ordering by smallest member.
struct Agglomeration {
    explicit Agglomeration(int n)
        : active_count(n), members(static_cast<std::size_t>(n)) {
        for (int q = 0; q < n; ++q) members[static_cast<std::size_t>(q)] = {q};
        for (int q = 0; q < n; ++q) actives.insert(q);
    }

    int active_count;
    std::set<int> actives;
    std::vector<std::vector<int>> members; // empty once merged away

    void absorb(int a, int b) {
        auto& ma = members[static_cast<std::size_t>(a)];
        auto& mb = members[static_cast<std::size_t>(b)];
        ma.insert(ma.end(), mb.begin(), mb.end());
        mb.clear();
        mb.shrink_to_fit();
        actives.erase(b);
        --active_count;
    }

    Partition snapshot(int node_count) const {
        std::vector<int> labels(static_cast<std::size_t>(node_count), -1);
        for (const int id : actives)
            for (const int q : members[static_cast<std::size_t>(id)])
                labels[static_cast<std::size_t>(q)] = id;
        return partition_from_labels(labels);
    }
};

Filtration assemble_levels(int node_count, const std::vector<int>& target_sizes,
                           std::map<int, Partition>&& snapshots) {
    Filtration f;
    f.node_count = node_count;
    if (!snapshots.count(1)) f.levels.push_back(trivial_partition(node_count));
    for (auto& [size, part] : snapshots) {
        (void)size;
        f.levels.push_back(std::move(part));
    }
    (void)target_sizes;
    return f;
}

} // namespace

Filtration multilevel_filtration(const Graph& g, const std::vector<int>& target_sizes) {
    const int n = g.node_count();
    check_target_sizes(target_sizes, n);

    Agglomeration agg(n);
    std::vector<int> size(static_cast<std::size_t>(n), 1);
    std::vector<int> version(static_cast<std::size_t>(n), 0);
    // Positive inter-cluster weights only; absent key means weight zero.
    std::vector<std::map<int, double>> nbr(static_cast<std::size_t>(n));
    for (const auto& [i, j, w] : g.edges()) {
        nbr[static_cast<std::size_t>(i)][j] = w;
        nbr[static_cast<std::size_t>(j)][i] = w;
    }

    struct Candidate {
        double score;
        int a, b;
        int ver_a, ver_b;
    };
    // Max score on top; ties prefer the lexicographically smallest (a, b).
    auto below = [](const Candidate& x, const Candidate& y) {
        if (x.score != y.score) return x.score < y.score;
        if (x.a != y.a) return x.a > y.a;
        return x.b > y.b;
    };
    std::priority_queue<Candidate, std::vector<Candidate>, decltype(below)> heap(below);
    for (const auto& [i, j, w] : g.edges()) heap.push({w, i, j, 0, 0});

    auto push_pairs_of = [&](int a) {
        for (const auto& [c, w] : nbr[static_cast<std::size_t>(a)]) {
            const int lo = std::min(a, c);
            const int hi = std::max(a, c);
            const double score =
                w / (static_cast<double>(size[static_cast<std::size_t>(a)]) *
                     static_cast<double>(size[static_cast<std::size_t>(c)]));
            heap.push({score, lo, hi,
                       version[static_cast<std::size_t>(lo)],
                       version[static_cast<std::size_t>(hi)]});
        }
    };

    auto next_merge = [&]() -> std::pair<int, int> {
        while (!heap.empty()) {
            const Candidate top = heap.top();
            if (agg.members[static_cast<std::size_t>(top.a)].empty() ||
                agg.members[static_cast<std::size_t>(top.b)].empty() ||
                version[static_cast<std::size_t>(top.a)] != top.ver_a ||
                version[static_cast<std::size_t>(top.b)] != top.ver_b) {
                heap.pop();
                continue;
            }
            return {top.a, top.b};
        }
        // No positive-weight pair left: smallest pair of active ids.
        auto it = agg.actives.begin();
        const int a = *it;
        const int b = *std::next(it);
        return {a, b};
    };

    auto merge = [&](int a, int b) {
        // Fold b's adjacency into a's.
        auto& na = nbr[static_cast<std::size_t>(a)];
        auto& nb = nbr[static_cast<std::size_t>(b)];
        na.erase(b);
        for (const auto& [c, w] : nb) {
            if (c == a) continue;
            na[c] += w;
            auto& nc = nbr[static_cast<std::size_t>(c)];
            nc.erase(b);
            nc[a] = na[c];
        }
        nb.clear();
        size[static_cast<std::size_t>(a)] += size[static_cast<std::size_t>(b)];
        ++version[static_cast<std::size_t>(a)];
        ++version[static_cast<std::size_t>(b)];
        agg.absorb(a, b);
        push_pairs_of(a);
    };

    std::vector<int> targets_desc(target_sizes.rbegin(), target_sizes.rend());
    std::map<int, Partition> snapshots;
    for (const int target : targets_desc) {
        while (agg.active_count > target) {
            const auto [a, b] = next_merge();
            merge(a, b);
        }
        snapshots.emplace(target, agg.snapshot(n));
    }
    return assemble_levels(n, target_sizes, std::move(snapshots));
}

Filtration random_filtration(int node_count, const std::vector<int>& target_sizes,
                             std::uint64_t seed) {
    if (node_count < 1) throw Error(errc::invalid_argument, "node count must be positive");
    check_target_sizes(target_sizes, node_count);

    Agglomeration agg(node_count);
    std::vector<int> active_list(static_cast<std::size_t>(node_count));
    for (int q = 0; q < node_count; ++q) active_list[static_cast<std::size_t>(q)] = q;

    RngStream rng(seed, 0);
    std::vector<int> targets_desc(target_sizes.rbegin(), target_sizes.rend());
    std::map<int, Partition> snapshots;
    for (const int target : targets_desc) {
        while (agg.active_count > target) {
            const std::size_t m = active_list.size();
            std::size_t u = static_cast<std::size_t>(rng.next_below(m));
            std::size_t v = static_cast<std::size_t>(rng.next_below(m - 1));
            if (v >= u) ++v;
            const int a = std::min(active_list[u], active_list[v]);
            const int b = std::max(active_list[u], active_list[v]);
            agg.absorb(a, b);
            // Drop b from the active list by swap-remove.
            const std::size_t pos = (active_list[u] == b) ? u : v;
            active_list[pos] = active_list.back();
            active_list.pop_back();
        }
        snapshots.emplace(target, agg.snapshot(node_count));
    }
    return assemble_levels(node_count, target_sizes, std::move(snapshots));
}

Filtration dyadic_filtration(int T) {
    if (T < 0 || T > 20)
        throw Error(errc::invalid_argument, "T must lie in [0, 20]");
    const int n = 1 << T;
    Filtration f;
    f.node_count = n;
    f.levels.reserve(static_cast<std::size_t>(T) + 1);
    for (int t = 0; t <= T; ++t) {
        const int block = 1 << (T - t);
        std::vector<int> labels(static_cast<std::size_t>(n));
        for (int q = 0; q < n; ++q) labels[static_cast<std::size_t>(q)] = q / block;
        f.levels.push_back(partition_from_labels(labels));
    }
    return f;
}

double growth_constant(const Filtration& f) {
    if (f.level_count() < 2)
        throw Error(errc::too_few_levels, "need at least 2 levels for a growth constant");
    double best = std::numeric_limits<double>::infinity();
    for (int t = 0; t + 1 < f.level_count(); ++t) {
        const double ratio = static_cast<double>(f.level(t + 1).cluster_count()) /
                             static_cast<double>(f.level(t).cluster_count());
        best = std::min(best, ratio);
    }
    return best;
}

std::vector<double> uniformity_gaps(const Signal& f_true, const Filtration& filt) {
    if (f_true.size() != filt.node_count)
        throw Error(errc::dimension_mismatch, "signal length does not match filtration");
    std::vector<double> errors;
    errors.reserve(static_cast<std::size_t>(filt.level_count()));
    for (const auto& level : filt.levels)
        errors.push_back((cluster_average(f_true, level) - f_true).norm());
    std::vector<double> gaps;
    gaps.reserve(errors.size() - 1);
    for (std::size_t t = 0; t + 1 < errors.size(); ++t)
        gaps.push_back(errors[t] - errors[t + 1]);
    return gaps;
}

} // namespace gdn
