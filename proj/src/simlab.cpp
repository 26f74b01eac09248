#include "gdn/simlab.hpp"

#include <algorithm>
#include <cmath>

#include "gdn/parallel.hpp"
#include "gdn/rng.hpp"

namespace gdn {

namespace {

void check_spec(const NoiseSpec& spec) {
    if (spec.trials < 1) throw Error(errc::invalid_argument, "trials must be >= 1");
    if (spec.epsilon < 0.0) throw Error(errc::invalid_argument, "epsilon must be nonnegative");
}

// Column-wise mean and standard error of the mean (0 when trials == 1).
void summarize_columns(const Eigen::MatrixXd& samples, ErrorCurve& curve) {
    const auto trials = samples.rows();
    for (Eigen::Index c = 0; c < samples.cols(); ++c) {
        const double mean = samples.col(c).mean();
        double se = 0.0;
        if (trials > 1) {
            const double ss = (samples.col(c).array() - mean).square().sum();
            se = std::sqrt(ss / static_cast<double>(trials - 1)) /
                 std::sqrt(static_cast<double>(trials));
        }
        curve.mean_error.push_back(mean);
        curve.std_error.push_back(se);
    }
}

} // namespace

Signal gaussian_noise(int n, const NoiseSpec& spec, int trial_index) {
    check_spec(spec);
    if (trial_index < 0 || trial_index >= spec.trials)
        throw Error(errc::invalid_argument, "trial index out of range");
    if (n < 0) throw Error(errc::invalid_argument, "n must be nonnegative");
    RngStream rng(spec.seed, static_cast<std::uint64_t>(trial_index));
    Signal out(n);
    for (int i = 0; i < n; ++i) out(i) = spec.epsilon * rng.next_normal();
    return out;
}

double chi_norm_mean(long long k) {
    if (k < 1) throw Error(errc::invalid_argument, "k must be >= 1");
    const double kd = static_cast<double>(k);
    if (k > 1000000LL) {
        // sqrt(k) (1 - 1/(4k) + 1/(32k^2) + 5/(128k^3) - 21/(2048k^4))
        const double inv = 1.0 / kd;
        return std::sqrt(kd) *
               (1.0 + inv * (-0.25 + inv * (1.0 / 32.0 + inv * (5.0 / 128.0 - inv * 21.0 / 2048.0))));
    }
    const double half = 0.5 * kd;
    return std::exp(0.5 * std::log(2.0) + std::lgamma(half + 0.5) - std::lgamma(half));
}

ErrorCurve mc_martingale_curve(const Signal& f_true, const Filtration& filt,
                               const NoiseSpec& spec, int threads) {
    check_spec(spec);
    if (f_true.size() != filt.node_count)
        throw Error(errc::dimension_mismatch, "signal length does not match filtration");
    const int levels = filt.level_count();
    const double scale = std::sqrt(static_cast<double>(filt.node_count));

    Eigen::MatrixXd samples(spec.trials, levels);
    parallel_for(spec.trials, threads, [&](int trial) {
        const Signal f_obs = f_true + gaussian_noise(static_cast<int>(f_true.size()), spec, trial);
        for (int t = 0; t < levels; ++t)
            samples(trial, t) = (f_true - cluster_average(f_obs, filt.level(t))).norm() / scale;
    });

    ErrorCurve curve;
    curve.trials = spec.trials;
    curve.norm_scale = scale;
    for (int t = 0; t < levels; ++t) curve.params.push_back(static_cast<double>(t));
    summarize_columns(samples, curve);
    return curve;
}

ErrorCurve mc_kernel_curve(const Signal& f_true, const DistanceMatrix& d,
                           const std::vector<double>& grid, const NoiseSpec& spec,
                           int threads) {
    check_spec(spec);
    if (grid.empty()) throw Error(errc::empty_grid, "alpha grid is empty");
    if (f_true.size() != d.rows())
        throw Error(errc::dimension_mismatch, "signal length does not match distances");

    const int points = static_cast<int>(grid.size());
    std::vector<KernelMatrix> kernels;
    std::vector<Signal> bias; // f - K f, fixed across trials
    kernels.reserve(grid.size());
    bias.reserve(grid.size());
    for (const double alpha : grid) {
        kernels.push_back(kernel_matrix(d, alpha));
        bias.push_back(f_true - kernels.back().entries * f_true);
    }

    Eigen::MatrixXd samples(spec.trials, points);
    parallel_for(spec.trials, threads, [&](int trial) {
        const Signal noise = gaussian_noise(static_cast<int>(f_true.size()), spec, trial);
        for (int i = 0; i < points; ++i) {
            const std::size_t ui = static_cast<std::size_t>(i);
            samples(trial, i) = (bias[ui] - kernels[ui].entries * noise).squaredNorm();
        }
    });

    ErrorCurve curve;
    curve.trials = spec.trials;
    curve.norm_scale = 1.0;
    curve.params = grid;
    summarize_columns(samples, curve);
    return curve;
}

std::vector<Lemma2Row> lemma2_check(const Filtration& filt, const NoiseSpec& spec, int threads) {
    if (!(spec.epsilon > 0.0))
        throw Error(errc::non_positive_epsilon, "the ratio ||eta_t|| / epsilon needs epsilon > 0");
    if (spec.trials < 1) throw Error(errc::invalid_argument, "trials must be >= 1");

    const int levels = filt.level_count();
    // ||eta_t|| / epsilon equals ||g_t|| for unit noise g, so draw g directly.
    NoiseSpec unit = spec;
    unit.epsilon = 1.0;

    Eigen::MatrixXd samples(spec.trials, levels);
    parallel_for(spec.trials, threads, [&](int trial) {
        const Signal g = gaussian_noise(filt.node_count, unit, trial);
        for (int t = 0; t < levels; ++t)
            samples(trial, t) = std::sqrt(averaged_sq_norm(g, filt.level(t)));
    });

    std::vector<Lemma2Row> rows;
    rows.reserve(static_cast<std::size_t>(levels));
    for (int t = 0; t < levels; ++t) {
        Lemma2Row row;
        row.level = t;
        row.k = filt.level(t).cluster_count();
        row.empirical_mean = samples.col(t).mean();
        row.predicted = chi_norm_mean(row.k);
        if (spec.trials > 1) {
            const double ss = (samples.col(t).array() - row.empirical_mean).square().sum();
            row.empirical_var = ss / static_cast<double>(spec.trials - 1);
            row.std_error = std::sqrt(row.empirical_var / static_cast<double>(spec.trials));
            row.z_score = (row.std_error > 0.0)
                              ? (row.empirical_mean - row.predicted) / row.std_error
                              : 0.0;
        }
        rows.push_back(row);
    }
    return rows;
}

CurveVerdict curve_verdict(const ErrorCurve& c) {
    const int n = c.point_count();
    if (n < 3) throw Error(errc::too_few_points, "a verdict needs at least 3 curve points");
    CurveVerdict v;
    for (int i = 1; i < n; ++i)
        if (c.mean_error[static_cast<std::size_t>(i)] <
            c.mean_error[static_cast<std::size_t>(v.argmin_index)])
            v.argmin_index = i;
    v.head_decreasing = c.mean_error[0] > c.mean_error[1];
    v.tail_increasing = c.mean_error[static_cast<std::size_t>(n - 1)] >
                        c.mean_error[static_cast<std::size_t>(n - 2)];
    v.interior = v.argmin_index > 0 && v.argmin_index < n - 1;
    return v;
}

} // namespace gdn
