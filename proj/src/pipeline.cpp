#include "gdn/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "gdn/averaging.hpp"
#include "gdn/io.hpp"
#include "gdn/rng.hpp"

namespace gdn {

namespace {

// One RNG stream per (repeat, fold, size, purpose) tuple, so no consumer's
// draws depend on another's.
enum Purpose : std::uint64_t { purpose_folds = 0, purpose_classifier = 1, purpose_random_filt = 2 };

std::uint64_t pack_stream(std::uint64_t repeat, std::uint64_t fold, std::uint64_t size_idx,
                          std::uint64_t purpose) {
    return (repeat << 24) | (fold << 16) | (size_idx << 8) | purpose;
}

std::string strip_cr(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == '\n')) s.pop_back();
    return s;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

double parse_cell(const std::string& cell, std::size_t line_no) {
    std::size_t a = cell.find_first_not_of(" \t");
    if (a == std::string::npos)
        throw Error(errc::missing_value, "empty feature cell at line " + std::to_string(line_no));
    std::size_t b = cell.find_last_not_of(" \t");
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data() + a, cell.data() + b + 1, v);
    if (ec != std::errc() || ptr != cell.data() + b + 1)
        throw Error(errc::parse_error,
                    "bad numeric cell '" + cell + "' at line " + std::to_string(line_no));
    if (!std::isfinite(v))
        throw Error(errc::missing_value, "non-finite value at line " + std::to_string(line_no));
    return v;
}

// Column-wise cluster means of a samples x nodes matrix; row r of the result
// equals reduced_features applied to row r (same shifted-mean arithmetic).
Eigen::MatrixXd reduce_matrix(const Eigen::MatrixXd& x, const Partition& p) {
    if (x.cols() != p.node_count())
        throw Error(errc::dimension_mismatch, "feature columns do not match partition");
    Eigen::MatrixXd out(x.rows(), p.cluster_count());
    for (int c = 0; c < p.cluster_count(); ++c) {
        const auto& cluster = p.clusters[static_cast<std::size_t>(c)];
        const Eigen::VectorXd base = x.col(cluster.front());
        Eigen::VectorXd dev = Eigen::VectorXd::Zero(x.rows());
        for (const int q : cluster) dev += x.col(q) - base;
        out.col(c) = base + dev / static_cast<double>(cluster.size());
    }
    return out;
}

const Partition& level_with_size(const Filtration& filt, int k) {
    for (const auto& level : filt.levels)
        if (level.cluster_count() == k) return level;
    throw Error(errc::invalid_level,
                "filtration has no level with " + std::to_string(k) + " clusters");
}

double median(std::vector<double> v) {
    if (v.empty()) throw Error(errc::invalid_argument, "median of empty vector");
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    double hi = v[mid];
    if (v.size() % 2 == 0) {
        const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
        return 0.5 * (lo + hi);
    }
    return hi;
}

} // namespace

const char* cv_mode_name(CvMode mode) {
    switch (mode) {
        case CvMode::ppi: return "ppi";
        case CvMode::ppi_expr: return "ppi_expr";
        case CvMode::random: return "random";
        case CvMode::all_genes: return "all_genes";
    }
    return "unknown";
}

CvMode cv_mode_from_name(const std::string& name) {
    if (name == "ppi") return CvMode::ppi;
    if (name == "ppi_expr") return CvMode::ppi_expr;
    if (name == "random") return CvMode::random;
    if (name == "all_genes") return CvMode::all_genes;
    throw Error(errc::invalid_argument, "unknown mode '" + name + "'");
}

Dataset load_dataset(std::istream& features_csv, std::istream& labels_csv) {
    Dataset d;
    std::string line;

    // Header: sample-id column name followed by node ids.
    if (!std::getline(features_csv, line))
        throw Error(errc::parse_error, "features CSV is empty");
    auto header = split_csv_line(strip_cr(line));
    if (header.size() < 2)
        throw Error(errc::parse_error, "features CSV header needs at least one node column");
    d.node_ids.assign(header.begin() + 1, header.end());
    {
        auto sorted = d.node_ids;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 1; i < sorted.size(); ++i)
            if (sorted[i] == sorted[i - 1])
                throw Error(errc::duplicate_id, "duplicate node id '" + sorted[i] + "'");
    }

    std::vector<std::vector<double>> rows;
    std::size_t line_no = 1;
    while (std::getline(features_csv, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != header.size())
            throw Error(errc::missing_value,
                        "line " + std::to_string(line_no) + ": expected " +
                            std::to_string(header.size()) + " cells, got " +
                            std::to_string(cells.size()));
        if (std::find(d.sample_ids.begin(), d.sample_ids.end(), cells[0]) != d.sample_ids.end())
            throw Error(errc::duplicate_id, "duplicate sample id '" + cells[0] + "'");
        d.sample_ids.push_back(cells[0]);
        std::vector<double> row;
        row.reserve(cells.size() - 1);
        for (std::size_t c = 1; c < cells.size(); ++c) row.push_back(parse_cell(cells[c], line_no));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw Error(errc::parse_error, "features CSV has no sample rows");

    d.features.resize(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(d.node_ids.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            d.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];

    // Labels: "sample_id,label" rows, header line optional.
    std::vector<std::pair<std::string, int>> label_rows;
    std::size_t lno = 0;
    while (std::getline(labels_csv, line)) {
        ++lno;
        line = strip_cr(line);
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != 2)
            throw Error(errc::parse_error,
                        "labels line " + std::to_string(lno) + ": expected 'sample_id,label'");
        if (lno == 1 && cells[1] == "label") continue;
        int value = -1;
        if (cells[1] == "0") value = 0;
        else if (cells[1] == "1") value = 1;
        else
            throw Error(errc::non_binary_label,
                        "label '" + cells[1] + "' for sample '" + cells[0] + "' is not 0 or 1");
        for (const auto& [id, v] : label_rows)
            if (id == cells[0])
                throw Error(errc::duplicate_id, "duplicate label for sample '" + cells[0] + "'");
        label_rows.emplace_back(cells[0], value);
    }

    d.labels.resize(d.sample_ids.size());
    for (std::size_t i = 0; i < d.sample_ids.size(); ++i) {
        auto it = std::find_if(label_rows.begin(), label_rows.end(),
                               [&](const auto& kv) { return kv.first == d.sample_ids[i]; });
        if (it == label_rows.end())
            throw Error(errc::missing_label, "no label for sample '" + d.sample_ids[i] + "'");
        d.labels[i] = it->second;
    }
    const auto positives = std::count(d.labels.begin(), d.labels.end(), 1);
    if (positives == 0 || positives == static_cast<std::ptrdiff_t>(d.labels.size()))
        throw Error(errc::single_class, "dataset must contain both classes");
    return d;
}

Dataset load_dataset(const std::string& features_csv, const std::string& labels_csv) {
    std::istringstream f(features_csv), l(labels_csv);
    return load_dataset(f, l);
}

std::string dataset_features_csv(const Dataset& d) {
    std::string out = "sample_id";
    for (const auto& id : d.node_ids) {
        out += ',';
        out += id;
    }
    out += '\n';
    for (int i = 0; i < d.sample_count(); ++i) {
        out += d.sample_ids[static_cast<std::size_t>(i)];
        for (int j = 0; j < d.feature_count(); ++j) {
            out += ',';
            out += format_double(d.features(i, j));
        }
        out += '\n';
    }
    return out;
}

std::string dataset_labels_csv(const Dataset& d) {
    std::string out = "sample_id,label\n";
    for (std::size_t i = 0; i < d.sample_ids.size(); ++i) {
        out += d.sample_ids[i];
        out += ',';
        out += d.labels[i] ? '1' : '0';
        out += '\n';
    }
    return out;
}

Dataset align_to_graph(const Dataset& d, const Graph& g, AlignStats* stats) {
    std::vector<int> dataset_col_for_node(static_cast<std::size_t>(g.node_count()), -1);
    for (std::size_t c = 0; c < d.node_ids.size(); ++c) {
        const int gi = g.index_of(d.node_ids[c]);
        if (gi >= 0) dataset_col_for_node[static_cast<std::size_t>(gi)] = static_cast<int>(c);
    }
    std::vector<int> kept_cols;
    for (int gi = 0; gi < g.node_count(); ++gi)
        if (dataset_col_for_node[static_cast<std::size_t>(gi)] >= 0)
            kept_cols.push_back(dataset_col_for_node[static_cast<std::size_t>(gi)]);
    if (kept_cols.empty())
        throw Error(errc::empty_intersection, "no dataset column matches a graph node");

    Dataset out;
    out.labels = d.labels;
    out.sample_ids = d.sample_ids;
    out.features.resize(d.features.rows(), static_cast<Eigen::Index>(kept_cols.size()));
    out.node_ids.reserve(kept_cols.size());
    for (std::size_t k = 0; k < kept_cols.size(); ++k) {
        out.features.col(static_cast<Eigen::Index>(k)) = d.features.col(kept_cols[k]);
        out.node_ids.push_back(d.node_ids[static_cast<std::size_t>(kept_cols[k])]);
    }
    if (stats) {
        stats->kept = static_cast<int>(kept_cols.size());
        stats->dropped_dataset_columns = d.feature_count() - stats->kept;
        stats->graph_nodes_without_data = g.node_count() - stats->kept;
    }
    return out;
}

Dataset reduce_dataset(const Dataset& d, const Partition& p) {
    Dataset out;
    out.features = reduce_matrix(d.features, p);
    out.labels = d.labels;
    out.sample_ids = d.sample_ids;
    out.node_ids.reserve(static_cast<std::size_t>(p.cluster_count()));
    for (int c = 0; c < p.cluster_count(); ++c) out.node_ids.push_back(std::to_string(c));
    return out;
}

LinearModel train_classifier(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                             double reg_strength, int epochs, std::uint64_t seed) {
    const int m = static_cast<int>(features.rows());
    const int p = static_cast<int>(features.cols());
    if (static_cast<int>(labels.size()) != m)
        throw Error(errc::dimension_mismatch, "label count does not match sample count");
    if (!(reg_strength > 0.0))
        throw Error(errc::non_positive_reg, "regularization strength must be positive");
    if (epochs < 1) throw Error(errc::invalid_argument, "epochs must be >= 1");
    const auto positives = std::count(labels.begin(), labels.end(), 1);
    if (positives == 0 || positives == m)
        throw Error(errc::single_class, "training data must contain both classes");

    // z-score from the training data only
    const Eigen::RowVectorXd mu = features.colwise().mean();
    Eigen::RowVectorXd sd =
        ((features.rowwise() - mu).array().square().colwise().sum() / static_cast<double>(m))
            .sqrt();
    for (int j = 0; j < p; ++j)
        if (sd(j) == 0.0) sd(j) = 1.0;
    Eigen::MatrixXd z = (features.rowwise() - mu).array().rowwise() / sd.array();

    Eigen::VectorXd w = Eigen::VectorXd::Zero(p);
    double b = 0.0;
    std::vector<int> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    RngStream rng(seed, 0);

    const double lambda = reg_strength;
    long long t = 0;
    for (int epoch = 0; epoch < epochs; ++epoch) {
        shuffle_indices(order, rng);
        for (const int i : order) {
            ++t;
            const double eta = 1.0 / (lambda * static_cast<double>(t));
            const double y = labels[static_cast<std::size_t>(i)] ? 1.0 : -1.0;
            const double margin = y * (z.row(i).dot(w) + b);
            w *= 1.0 - eta * lambda;
            if (margin < 1.0) {
                w += (eta * y) * z.row(i).transpose();
                b += eta * y;
            }
        }
    }

    LinearModel model;
    model.weights = (w.array() / sd.transpose().array()).matrix();
    model.bias = b - model.weights.dot(mu.transpose());
    return model;
}

double auroc(const std::vector<double>& scores, const std::vector<int>& labels) {
    const std::size_t n = scores.size();
    if (labels.size() != n)
        throw Error(errc::dimension_mismatch, "scores and labels differ in length");
    const auto pos = std::count(labels.begin(), labels.end(), 1);
    const auto neg = static_cast<std::ptrdiff_t>(n) - pos;
    if (pos == 0 || neg == 0)
        throw Error(errc::single_class, "AUROC needs both classes");

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Rank-sum with midranks for ties; exact in floating point (half-integer
    // sums below 2^53), so it matches the pairwise count bit for bit.
    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores[idx[j]] == scores[idx[i]]) ++j;
        const double mid_rank = 0.5 * static_cast<double>(i + 1 + j);
        for (std::size_t k = i; k < j; ++k)
            if (labels[idx[k]] == 1) rank_sum_pos += mid_rank;
        i = j;
    }
    const double p = static_cast<double>(pos);
    return (rank_sum_pos - p * (p + 1.0) / 2.0) / (p * static_cast<double>(neg));
}

double auprc(const std::vector<double>& scores, const std::vector<int>& labels) {
    const std::size_t n = scores.size();
    if (labels.size() != n)
        throw Error(errc::dimension_mismatch, "scores and labels differ in length");
    const auto pos = std::count(labels.begin(), labels.end(), 1);
    if (pos == 0) throw Error(errc::no_positives, "AUPRC needs at least one positive");

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    double sum = 0.0;
    long long tp = 0;
    for (std::size_t r = 0; r < n; ++r) {
        if (labels[idx[r]] == 1) {
            ++tp;
            sum += static_cast<double>(tp) / static_cast<double>(r + 1);
        }
    }
    return sum / static_cast<double>(pos);
}

std::vector<int> stratified_folds(const std::vector<int>& labels, int folds, std::uint64_t seed,
                                  std::uint64_t stream) {
    if (folds < 2) throw Error(errc::invalid_argument, "need at least 2 folds");
    std::vector<int> pos, neg;
    for (std::size_t i = 0; i < labels.size(); ++i)
        (labels[i] ? pos : neg).push_back(static_cast<int>(i));
    if (static_cast<int>(pos.size()) < folds || static_cast<int>(neg.size()) < folds)
        throw Error(errc::too_few_samples,
                    "each class needs at least " + std::to_string(folds) + " samples");
    RngStream rng(seed, stream);
    shuffle_indices(pos, rng);
    shuffle_indices(neg, rng);
    std::vector<int> fold_of(labels.size());
    for (std::size_t i = 0; i < pos.size(); ++i)
        fold_of[static_cast<std::size_t>(pos[i])] = static_cast<int>(i) % folds;
    for (std::size_t i = 0; i < neg.size(); ++i)
        fold_of[static_cast<std::size_t>(neg[i])] = static_cast<int>(i) % folds;
    return fold_of;
}

RepeatResult run_cv_repeat(const Dataset& aligned, const Graph& g, const CvOptions& opts,
                           const std::vector<int>& fold_of_sample, int repeat_index,
                           const Filtration* fixed_filt) {
    const int m = aligned.sample_count();
    const int p = aligned.feature_count();
    if (static_cast<int>(fold_of_sample.size()) != m)
        throw Error(errc::dimension_mismatch, "fold assignment does not match sample count");
    const bool uses_graph = opts.mode == CvMode::ppi || opts.mode == CvMode::ppi_expr;
    if (uses_graph && aligned.node_ids != g.nodes())
        throw Error(errc::invalid_argument, "dataset is not aligned to the graph");

    RepeatResult rr;
    rr.fold_of_sample = fold_of_sample;
    rr.sizes = (opts.mode == CvMode::all_genes) ? std::vector<int>{p} : opts.cluster_sizes;
    const int n_sizes = static_cast<int>(rr.sizes.size());
    if (n_sizes == 0) throw Error(errc::sizes_out_of_range, "no cluster sizes to evaluate");

    const auto rep = static_cast<std::uint64_t>(repeat_index);

    // Fold-independent partitions can be fixed up front.
    std::vector<Partition> shared_partitions;
    if (opts.mode == CvMode::ppi) {
        if (!fixed_filt)
            throw Error(errc::invalid_argument, "ppi mode needs the fixed filtration");
        for (const int k : rr.sizes) shared_partitions.push_back(level_with_size(*fixed_filt, k));
    } else if (opts.mode == CvMode::random) {
        RngStream rng(opts.seed, pack_stream(rep, 0, 0, purpose_random_filt));
        const Filtration filt = random_filtration(p, rr.sizes, rng.next_u64());
        for (const int k : rr.sizes) shared_partitions.push_back(level_with_size(filt, k));
    } else if (opts.mode == CvMode::all_genes) {
        shared_partitions.push_back(singleton_partition(p));
    }

    std::vector<Eigen::MatrixXd> shared_reduced;
    for (const auto& part : shared_partitions)
        shared_reduced.push_back(reduce_matrix(aligned.features, part));

    rr.scores_per_size.assign(static_cast<std::size_t>(n_sizes),
                              std::vector<double>(static_cast<std::size_t>(m), 0.0));
    rr.partition_per_fold.resize(static_cast<std::size_t>(opts.folds));
    rr.model_per_fold.resize(static_cast<std::size_t>(opts.folds));

    for (int fold = 0; fold < opts.folds; ++fold) {
        std::vector<int> train_rows, test_rows;
        for (int i = 0; i < m; ++i)
            (fold_of_sample[static_cast<std::size_t>(i)] == fold ? test_rows : train_rows)
                .push_back(i);
        if (train_rows.empty() || test_rows.empty())
            throw Error(errc::too_few_samples, "a fold is empty");

        // Partitions for this fold: train-split-derived in ppi_expr mode.
        std::vector<Partition> partitions;
        std::vector<Eigen::MatrixXd> reduced;
        if (opts.mode == CvMode::ppi_expr) {
            Eigen::MatrixXd expr_train(train_rows.size(), p);
            for (std::size_t r = 0; r < train_rows.size(); ++r)
                expr_train.row(static_cast<Eigen::Index>(r)) =
                    aligned.features.row(train_rows[r]);
            double sigma = opts.sigma;
            if (!(sigma > 0.0))
                sigma = std::max(median(edge_correlation_distances(g, expr_train)), 1e-12);
            const Graph gw = coexpression_weights(g, expr_train, sigma);
            const Filtration filt = multilevel_filtration(gw, rr.sizes);
            for (const int k : rr.sizes) {
                partitions.push_back(level_with_size(filt, k));
                reduced.push_back(reduce_matrix(aligned.features, partitions.back()));
            }
        } else {
            partitions = shared_partitions;
            reduced = shared_reduced;
        }
        rr.partition_per_fold[static_cast<std::size_t>(fold)] = partitions;

        for (int s = 0; s < n_sizes; ++s) {
            const Eigen::MatrixXd& rx = reduced[static_cast<std::size_t>(s)];
            Eigen::MatrixXd train_x(train_rows.size(), rx.cols());
            std::vector<int> train_y(train_rows.size());
            for (std::size_t r = 0; r < train_rows.size(); ++r) {
                train_x.row(static_cast<Eigen::Index>(r)) = rx.row(train_rows[r]);
                train_y[r] = aligned.labels[static_cast<std::size_t>(train_rows[r])];
            }
            RngStream seeder(opts.seed, pack_stream(rep, static_cast<std::uint64_t>(fold),
                                                    static_cast<std::uint64_t>(s),
                                                    purpose_classifier));
            const LinearModel model = train_classifier(train_x, train_y, opts.reg_strength,
                                                       opts.epochs, seeder.next_u64());
            for (const int i : test_rows)
                rr.scores_per_size[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)] =
                    model.score(rx.row(i).transpose());
            rr.model_per_fold[static_cast<std::size_t>(fold)].push_back(model);
        }
    }

    for (int s = 0; s < n_sizes; ++s) {
        rr.auroc_per_size.push_back(auroc(rr.scores_per_size[static_cast<std::size_t>(s)],
                                          aligned.labels));
        rr.auprc_per_size.push_back(auprc(rr.scores_per_size[static_cast<std::size_t>(s)],
                                          aligned.labels));
    }
    return rr;
}

CVReport cross_validate(const Dataset& d, const Graph& g, const CvOptions& opts) {
    if (opts.repeats < 1) throw Error(errc::invalid_argument, "repeats must be >= 1");

    AlignStats stats;
    const Dataset aligned = align_to_graph(d, g, &stats);
    Graph g_used = g;
    if (stats.graph_nodes_without_data > 0) {
        // Aligned columns follow graph node order, so they are sorted.
        std::vector<int> kept;
        for (int i = 0; i < g.node_count(); ++i)
            if (std::binary_search(aligned.node_ids.begin(), aligned.node_ids.end(), g.node_id(i)))
                kept.push_back(i);
        g_used = induced_subgraph(g, kept);
    }

    Filtration fixed;
    const Filtration* fixed_ptr = nullptr;
    if (opts.mode == CvMode::ppi) {
        fixed = multilevel_filtration(g_used, opts.cluster_sizes);
        fixed_ptr = &fixed;
    }

    std::vector<std::vector<double>> aurocs, auprcs; // [size][repeat]
    std::vector<int> sizes;
    for (int r = 0; r < opts.repeats; ++r) {
        const auto folds = stratified_folds(aligned.labels, opts.folds, opts.seed,
                                            pack_stream(static_cast<std::uint64_t>(r), 0, 0,
                                                        purpose_folds));
        const RepeatResult rr = run_cv_repeat(aligned, g_used, opts, folds, r, fixed_ptr);
        if (r == 0) {
            sizes = rr.sizes;
            aurocs.assign(sizes.size(), {});
            auprcs.assign(sizes.size(), {});
        }
        for (std::size_t s = 0; s < sizes.size(); ++s) {
            aurocs[s].push_back(rr.auroc_per_size[s]);
            auprcs[s].push_back(rr.auprc_per_size[s]);
        }
    }

    CVReport report;
    report.mode = cv_mode_name(opts.mode);
    report.cluster_sizes = sizes;
    report.folds = opts.folds;
    report.repeats = opts.repeats;
    report.reg_strength = opts.reg_strength;
    report.epochs = opts.epochs;
    report.sigma = opts.sigma;
    report.seed = opts.seed;
    auto mean_std = [](const std::vector<double>& v) {
        const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
        double ss = 0.0;
        for (const double x : v) ss += (x - mean) * (x - mean);
        const double sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
        return std::pair<double, double>(mean, sd);
    };
    for (std::size_t s = 0; s < sizes.size(); ++s) {
        CVReport::SizeResult res;
        res.k = sizes[s];
        std::tie(res.auroc_mean, res.auroc_std) = mean_std(aurocs[s]);
        std::tie(res.auprc_mean, res.auprc_std) = mean_std(auprcs[s]);
        report.per_size.push_back(res);
    }
    return report;
}

Dataset synthetic_dataset(const Graph& g, const Filtration& filt, int planted_level,
                          double effect, double noise, int n_samples, std::uint64_t seed) {
    if (filt.node_count != g.node_count())
        throw Error(errc::dimension_mismatch, "filtration does not match graph");
    if (planted_level < 0 || planted_level >= filt.level_count())
        throw Error(errc::invalid_level,
                    "planted level " + std::to_string(planted_level) + " not in filtration");
    if (noise < 0.0) throw Error(errc::invalid_argument, "noise must be nonnegative");
    if (n_samples < 2) throw Error(errc::invalid_argument, "need at least 2 samples");

    const Partition& part = filt.level(planted_level);
    const int n = g.node_count();
    const int k = part.cluster_count();

    // Random half of the clusters carries the class difference, each with a
    // random sign; the difference is constant within a cluster.
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    RngStream pick(seed, 1);
    shuffle_indices(perm, pick);
    Eigen::VectorXd delta = Eigen::VectorXd::Zero(n);
    for (int s = 0; s < k / 2; ++s) {
        const double sign = (pick.next_u64() & 1ULL) ? 1.0 : -1.0;
        for (const int q : part.clusters[static_cast<std::size_t>(perm[static_cast<std::size_t>(s)])])
            delta(q) = sign * effect / 2.0;
    }

    Dataset d;
    d.node_ids = g.nodes();
    d.features.resize(n_samples, n);
    d.labels.resize(static_cast<std::size_t>(n_samples));
    const int width = static_cast<int>(std::to_string(n_samples - 1).size());
    for (int i = 0; i < n_samples; ++i) {
        const int y = i % 2;
        d.labels[static_cast<std::size_t>(i)] = y;
        std::string id = std::to_string(i);
        d.sample_ids.push_back("s" + std::string(static_cast<std::size_t>(width) - id.size(), '0') +
                               id);
        RngStream rng(seed, 2 + static_cast<std::uint64_t>(i));
        const double class_side = y ? 0.5 : -0.5;
        for (int q = 0; q < n; ++q)
            d.features(i, q) = class_side * delta(q) + noise * rng.next_normal();
    }
    return d;
}

} // namespace gdn
