#ifndef GDN_SIMLAB_HPP
#define GDN_SIMLAB_HPP

#include <cstdint>
#include <vector>

#include "gdn/averaging.hpp"
#include "gdn/filtration.hpp"
#include "gdn/kernels.hpp"

namespace gdn {

struct NoiseSpec {
    double epsilon = 0.2;
    std::uint64_t seed = 42;
    int trials = 200;
};

// Shape summary of an error curve. `interior` holds exactly when the argmin
// sits strictly between the first and last points.
struct CurveVerdict {
    int argmin_index = 0;
    bool interior = false;
    bool head_decreasing = false;
    bool tail_increasing = false;
};

struct Lemma2Row {
    int level = 0;
    long long k = 0;          // cluster count at this level
    double empirical_mean = 0.0; // mean over trials of ||eta_t|| / epsilon
    double predicted = 0.0;      // chi_norm_mean(k)
    double std_error = 0.0;
    double z_score = 0.0;
    double empirical_var = 0.0; // tends to 1/2 as k grows
};

// n iid draws from N(0, epsilon^2) on the stream derived from
// (spec.seed, trial_index). Distinct trial indices give independent streams.
Signal gaussian_noise(int n, const NoiseSpec& spec, int trial_index);

// E sqrt(chi^2_k) = sqrt(2) Gamma((k+1)/2) / Gamma(k/2), via log-gamma; the
// asymptotic series sqrt(k) (1 - 1/(4k) + ...) takes over for huge k.
double chi_norm_mean(long long k);

// Mean and standard error per level of R(t) = ||f_true - E(f_true + eta |
// A_t)|| / sqrt(n) over seeded noise trials.
ErrorCurve mc_martingale_curve(const Signal& f_true, const Filtration& filt,
                               const NoiseSpec& spec, int threads = 1);

// Mean and standard error per grid bandwidth of the squared error
// ||f_true - K_alpha (f_true + eta)||^2 (Euclidean norm over nodes); the
// sampled counterpart of expected_error_sq.
ErrorCurve mc_kernel_curve(const Signal& f_true, const DistanceMatrix& d,
                           const std::vector<double>& grid, const NoiseSpec& spec,
                           int threads = 1);

// Per level: empirical mean and variance of ||eta_t|| / epsilon against the
// chi-norm prediction, with the z-score of the mean.
std::vector<Lemma2Row> lemma2_check(const Filtration& filt, const NoiseSpec& spec,
                                    int threads = 1);

CurveVerdict curve_verdict(const ErrorCurve& c);

} // namespace gdn

#endif
