#ifndef GDN_IO_HPP
#define GDN_IO_HPP

#include <json.hpp>

#include <string>
#include <vector>

#include "gdn/averaging.hpp"
#include "gdn/partition.hpp"
#include "gdn/pipeline.hpp"
#include "gdn/simlab.hpp"

namespace gdn {

using ordered_json = nlohmann::ordered_json;

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// "param,mean_error,std_error,trials" rows at full round-trip precision.
std::string curve_to_csv(const ErrorCurve& curve);

// "node_id,cluster_index" rows in node order.
std::string partition_to_csv(const Partition& p, const std::vector<std::string>& node_ids);

// Writes one partition CSV per level into `dir` (level_<t>.csv) and returns
// the manifest describing them.
ordered_json save_filtration_levels(const Filtration& f, const std::vector<std::string>& node_ids,
                                    const std::string& dir);

ordered_json verdict_to_json(const CurveVerdict& v);
ordered_json lemma2_to_json(const std::vector<Lemma2Row>& rows);
ordered_json cv_report_to_json(const CVReport& report);

// Two metric rows (mean with the standard deviation in parentheses), one
// column per cluster size.
std::string cv_report_to_table_csv(const CVReport& report);

} // namespace gdn

#endif
