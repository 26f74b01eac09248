#include "gdn/io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace gdn {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(errc::io_error, "cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw Error(errc::io_error, "failed reading '" + path + "'");
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(errc::io_error, "cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw Error(errc::io_error, "failed writing '" + path + "'");
}

std::string curve_to_csv(const ErrorCurve& curve) {
    std::string out = "param,mean_error,std_error,trials\n";
    for (int i = 0; i < curve.point_count(); ++i) {
        const std::size_t u = static_cast<std::size_t>(i);
        out += format_double(curve.params[u]);
        out += ',';
        out += format_double(curve.mean_error[u]);
        out += ',';
        out += format_double(curve.std_error[u]);
        out += ',';
        out += std::to_string(curve.trials);
        out += '\n';
    }
    return out;
}

std::string partition_to_csv(const Partition& p, const std::vector<std::string>& node_ids) {
    if (static_cast<int>(node_ids.size()) != p.node_count())
        throw Error(errc::dimension_mismatch, "node id list does not match partition");
    std::string out = "node_id,cluster_index\n";
    for (int q = 0; q < p.node_count(); ++q) {
        out += node_ids[static_cast<std::size_t>(q)];
        out += ',';
        out += std::to_string(p.assignment[static_cast<std::size_t>(q)]);
        out += '\n';
    }
    return out;
}

ordered_json save_filtration_levels(const Filtration& f, const std::vector<std::string>& node_ids,
                                    const std::string& dir) {
    std::filesystem::create_directories(dir);
    ordered_json manifest;
    manifest["node_count"] = f.node_count;
    manifest["levels"] = ordered_json::array();
    for (int t = 0; t < f.level_count(); ++t) {
        const std::string file = "level_" + std::to_string(t) + ".csv";
        write_text_file((std::filesystem::path(dir) / file).string(),
                        partition_to_csv(f.level(t), node_ids));
        manifest["levels"].push_back(
            {{"index", t}, {"clusters", f.level(t).cluster_count()}, {"file", file}});
    }
    return manifest;
}

ordered_json verdict_to_json(const CurveVerdict& v) {
    return ordered_json{{"argmin_index", v.argmin_index},
                        {"interior", v.interior},
                        {"head_decreasing", v.head_decreasing},
                        {"tail_increasing", v.tail_increasing}};
}

ordered_json lemma2_to_json(const std::vector<Lemma2Row>& rows) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows)
        arr.push_back({{"t", r.level},
                       {"k", r.k},
                       {"empirical", r.empirical_mean},
                       {"predicted", r.predicted},
                       {"std_error", r.std_error},
                       {"z_score", r.z_score},
                       {"empirical_var", r.empirical_var}});
    return arr;
}

ordered_json cv_report_to_json(const CVReport& report) {
    ordered_json per_size = ordered_json::array();
    for (const auto& s : report.per_size)
        per_size.push_back({{"k", s.k},
                            {"auroc_mean", s.auroc_mean},
                            {"auroc_std", s.auroc_std},
                            {"auprc_mean", s.auprc_mean},
                            {"auprc_std", s.auprc_std}});
    return ordered_json{{"mode", report.mode},
                        {"cluster_sizes", report.cluster_sizes},
                        {"folds", report.folds},
                        {"repeats", report.repeats},
                        {"reg_strength", report.reg_strength},
                        {"epochs", report.epochs},
                        {"sigma", report.sigma},
                        {"seed", report.seed},
                        {"per_size", per_size}};
}

std::string cv_report_to_table_csv(const CVReport& report) {
    auto cell = [](double mean, double sd) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.3f(%.3f)", mean, sd);
        return std::string(buf);
    };
    std::string out = "metric";
    for (const auto& s : report.per_size) {
        out += ",k=" + std::to_string(s.k);
    }
    out += "\nAUROC";
    for (const auto& s : report.per_size) out += ',' + cell(s.auroc_mean, s.auroc_std);
    out += "\nAUPRC";
    for (const auto& s : report.per_size) out += ',' + cell(s.auprc_mean, s.auprc_std);
    out += '\n';
    return out;
}

} // namespace gdn
