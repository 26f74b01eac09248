#include "gdn/averaging.hpp"

namespace gdn {

std::vector<Signal> martingale_sequence(const Signal& s, const Filtration& filt) {
    if (s.size() != filt.node_count)
        throw Error(errc::dimension_mismatch, "signal length does not match filtration");
    std::vector<Signal> out;
    out.reserve(static_cast<std::size_t>(filt.level_count()));
    for (const auto& level : filt.levels) out.push_back(cluster_average(s, level));
    return out;
}

ErrorCurve error_curve_exact(const Signal& f_true, const Signal& f_obs, const Filtration& filt) {
    if (f_true.size() != filt.node_count || f_obs.size() != filt.node_count)
        throw Error(errc::dimension_mismatch, "signal length does not match filtration");
    ErrorCurve curve;
    curve.trials = 1;
    curve.norm_scale = std::sqrt(static_cast<double>(filt.node_count));
    for (int t = 0; t < filt.level_count(); ++t) {
        curve.params.push_back(static_cast<double>(t));
        const double err = (f_true - cluster_average(f_obs, filt.level(t))).norm();
        curve.mean_error.push_back(err / curve.norm_scale);
        curve.std_error.push_back(0.0);
    }
    return curve;
}

} // namespace gdn
