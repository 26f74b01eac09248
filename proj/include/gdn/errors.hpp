#ifndef GDN_ERRORS_HPP
#define GDN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gdn {

// Validation failures carry one of these codes so callers (and the CLI)
// can map them without parsing messages.
enum class errc {
    duplicate_edge,
    self_loop,
    non_positive_weight,
    empty_graph,
    parse_error,
    zero_variance_column,
    dimension_mismatch,
    sizes_out_of_range,
    too_few_levels,
    non_positive_alpha,
    empty_grid,
    too_few_points,
    non_positive_epsilon,
    missing_label,
    non_binary_label,
    missing_value,
    duplicate_id,
    empty_intersection,
    single_class,
    no_positives,
    non_positive_reg,
    too_few_samples,
    invalid_level,
    invalid_argument,
    io_error,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::duplicate_edge: return "DuplicateEdge";
        case errc::self_loop: return "SelfLoop";
        case errc::non_positive_weight: return "NonPositiveWeight";
        case errc::empty_graph: return "EmptyGraph";
        case errc::parse_error: return "ParseError";
        case errc::zero_variance_column: return "ZeroVarianceColumn";
        case errc::dimension_mismatch: return "DimensionMismatch";
        case errc::sizes_out_of_range: return "SizesOutOfRange";
        case errc::too_few_levels: return "TooFewLevels";
        case errc::non_positive_alpha: return "NonPositiveAlpha";
        case errc::empty_grid: return "EmptyGrid";
        case errc::too_few_points: return "TooFewPoints";
        case errc::non_positive_epsilon: return "NonPositiveEpsilon";
        case errc::missing_label: return "MissingLabel";
        case errc::non_binary_label: return "NonBinaryLabel";
        case errc::missing_value: return "MissingValue";
        case errc::duplicate_id: return "DuplicateId";
        case errc::empty_intersection: return "EmptyIntersection";
        case errc::single_class: return "SingleClass";
        case errc::no_positives: return "NoPositives";
        case errc::non_positive_reg: return "NonPositiveReg";
        case errc::too_few_samples: return "TooFewSamples";
        case errc::invalid_level: return "InvalidLevel";
        case errc::invalid_argument: return "InvalidArgument";
        case errc::io_error: return "IoError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

} // namespace gdn

#endif
