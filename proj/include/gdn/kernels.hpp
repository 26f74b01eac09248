#ifndef GDN_KERNELS_HPP
#define GDN_KERNELS_HPP

#include <Eigen/Dense>

#include <vector>

#include "gdn/averaging.hpp"
#include "gdn/graph.hpp"

namespace gdn {

// Row-stochastic Gaussian smoothing operator at one bandwidth. As alpha
// shrinks the matrix tends to the identity (delta kernel); as alpha grows it
// tends to uniform averaging over each connected component.
struct KernelMatrix {
    Eigen::MatrixXd entries;
    double bandwidth = 0.0;

    int size() const { return static_cast<int>(entries.rows()); }
};

// K(q, r) = exp(-d(q, r)^2 / (2 alpha^2)) row-normalized. Infinite distances
// contribute exactly zero affinity; the unit diagonal keeps row sums
// positive.
KernelMatrix kernel_matrix(const DistanceMatrix& d, double alpha);

// out(q) = sum_r K(q, r) s(r).
template <typename Derived>
Eigen::VectorXd kernel_smooth(const KernelMatrix& k, const Eigen::MatrixBase<Derived>& s) {
    if (s.size() != k.entries.rows())
        throw Error(errc::dimension_mismatch, "signal length does not match kernel");
    return k.entries * s;
}

// Exact expectation of ||f - K(f + epsilon g)||^2 over standard normal g:
// squared bias ||f - Kf||^2 plus epsilon^2 times the sum of squared kernel
// entries. Euclidean norm over nodes.
double expected_error_sq(const Signal& f_true, const KernelMatrix& k, double epsilon);

// Logarithmic bandwidth grid from 0.05 * (smallest positive distance) to
// 5 * (largest finite distance), bracketing the identity and uniform limits.
std::vector<double> default_alpha_grid(const DistanceMatrix& d, int points = 50);

struct AlphaSearch {
    double alpha_star = 0.0;
    ErrorCurve curve; // R(alpha) = sqrt(expected_error_sq), closed form
};

// Closed-form error over the grid; returns the argmin bandwidth (smallest
// alpha on ties) and the full curve (trials = 0 marks it exact).
AlphaSearch optimal_alpha(const Signal& f_true, const DistanceMatrix& d, double epsilon,
                          const std::vector<double>& grid);

} // namespace gdn

#endif
