#ifndef GDN_AVERAGING_HPP
#define GDN_AVERAGING_HPP

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "gdn/graph.hpp"
#include "gdn/partition.hpp"

namespace gdn {

// Reconstruction error against a sweep of regularization parameters (level
// index t or kernel bandwidth alpha). `std_error` is the standard error of
// the mean over `trials`; `norm_scale` is the divisor already applied to
// counting-measure norms (sqrt(n) for level curves so regimes of different
// size are comparable, 1 for kernel curves).
struct ErrorCurve {
    std::vector<double> params;
    std::vector<double> mean_error;
    std::vector<double> std_error;
    int trials = 1;
    double norm_scale = 1.0;

    int point_count() const { return static_cast<int>(params.size()); }
};

namespace detail {

// Shifted mean: deviations from the first member sum to exactly zero on a
// constant cluster, so averaging an already-averaged signal is a bitwise
// no-op (exact idempotence).
template <typename Derived>
double cluster_mean(const Eigen::MatrixBase<Derived>& s, const std::vector<int>& cluster) {
    const double base = s(cluster.front());
    double dev = 0.0;
    for (const int q : cluster) dev += s(q) - base;
    return base + dev / static_cast<double>(cluster.size());
}

} // namespace detail

// Conditional expectation of s given the partition: every node takes the
// mean of its cluster.
template <typename Derived>
Eigen::VectorXd cluster_average(const Eigen::MatrixBase<Derived>& s, const Partition& p) {
    if (s.size() != p.node_count())
        throw Error(errc::dimension_mismatch, "signal length does not match partition");
    Eigen::VectorXd out(s.size());
    for (const auto& cluster : p.clusters) {
        const double mean = detail::cluster_mean(s, cluster);
        for (const int q : cluster) out(q) = mean;
    }
    return out;
}

// Per-cluster means in cluster order; length = cluster count.
template <typename Derived>
Eigen::VectorXd reduced_features(const Eigen::MatrixBase<Derived>& s, const Partition& p) {
    if (s.size() != p.node_count())
        throw Error(errc::dimension_mismatch, "signal length does not match partition");
    Eigen::VectorXd out(p.cluster_count());
    for (int c = 0; c < p.cluster_count(); ++c)
        out(c) = detail::cluster_mean(s, p.clusters[static_cast<std::size_t>(c)]);
    return out;
}

// ||cluster_average(s, p)||^2 without materializing the averaged signal:
// sum over clusters of (cluster sum)^2 / |cluster|.
template <typename Derived>
double averaged_sq_norm(const Eigen::MatrixBase<Derived>& s, const Partition& p) {
    if (s.size() != p.node_count())
        throw Error(errc::dimension_mismatch, "signal length does not match partition");
    double total = 0.0;
    for (const auto& cluster : p.clusters) {
        double sum = 0.0;
        for (const int q : cluster) sum += s(q);
        total += sum * sum / static_cast<double>(cluster.size());
    }
    return total;
}

// Cluster averages of s at every level of the filtration; element 0 is the
// global-mean constant signal.
std::vector<Signal> martingale_sequence(const Signal& s, const Filtration& filt);

// Single-trial error curve R(t) = ||f_true - cluster_average(f_obs, A_t)|| /
// sqrt(n) per level (trials = 1, std_error = 0, norm_scale = sqrt(n)).
ErrorCurve error_curve_exact(const Signal& f_true, const Signal& f_obs, const Filtration& filt);

} // namespace gdn

#endif
