#ifndef GDN_PIPELINE_HPP
#define GDN_PIPELINE_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gdn/filtration.hpp"
#include "gdn/graph.hpp"
#include "gdn/partition.hpp"

namespace gdn {

struct Dataset {
    Eigen::MatrixXd features; // samples x nodes
    std::vector<int> labels;  // 0 or 1 per sample
    std::vector<std::string> sample_ids;
    std::vector<std::string> node_ids; // aligned to feature columns

    int sample_count() const { return static_cast<int>(features.rows()); }
    int feature_count() const { return static_cast<int>(features.cols()); }
};

struct LinearModel {
    Eigen::VectorXd weights; // original (unstandardized) feature scale
    double bias = 0.0;

    double score(const Eigen::VectorXd& x) const { return weights.dot(x) + bias; }
};

enum class CvMode { ppi, ppi_expr, random, all_genes };

const char* cv_mode_name(CvMode mode);
CvMode cv_mode_from_name(const std::string& name);

struct CvOptions {
    std::vector<int> cluster_sizes;
    int folds = 5;
    int repeats = 20;
    double sigma = 0.0; // <= 0 selects the median correlation distance per split
    CvMode mode = CvMode::ppi;
    std::uint64_t seed = 42;
    double reg_strength = 0.01;
    int epochs = 200;
};

struct CVReport {
    std::string mode;
    std::vector<int> cluster_sizes;
    int folds = 0;
    int repeats = 0;
    double reg_strength = 0.0;
    int epochs = 0;
    double sigma = 0.0;
    std::uint64_t seed = 0;

    struct SizeResult {
        int k = 0;
        double auroc_mean = 0.0, auroc_std = 0.0;
        double auprc_mean = 0.0, auprc_std = 0.0;
    };
    std::vector<SizeResult> per_size;
};

// Features CSV: header "sample_id,<node ids...>", one row per sample.
// Labels CSV: "sample_id,label" rows (header line optional), label in {0,1}.
Dataset load_dataset(std::istream& features_csv, std::istream& labels_csv);
Dataset load_dataset(const std::string& features_csv, const std::string& labels_csv);

std::string dataset_features_csv(const Dataset& d);
std::string dataset_labels_csv(const Dataset& d);

struct AlignStats {
    int kept = 0;
    int dropped_dataset_columns = 0;
    int graph_nodes_without_data = 0;
};

// Restrict columns to the dataset/graph intersection, reordered to the
// graph's node order.
Dataset align_to_graph(const Dataset& d, const Graph& g, AlignStats* stats = nullptr);

// Replace each sample row by its per-cluster means; column ids become
// cluster indices.
Dataset reduce_dataset(const Dataset& d, const Partition& p);

// L2-regularized linear hinge-loss model fit by seeded stochastic
// subgradient descent (step 1/(lambda t)). Features are z-scored internally
// from the training data; returned weights act on the original scale.
LinearModel train_classifier(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                             double reg_strength, int epochs, std::uint64_t seed);

// Mann-Whitney statistic: fraction of (positive, negative) pairs ranked
// concordantly, ties counted 1/2.
double auroc(const std::vector<double>& scores, const std::vector<int>& labels);

// Average precision over positives in descending-score order; ties keep
// their original order (stable sort).
double auprc(const std::vector<double>& scores, const std::vector<int>& labels);

// Class-stratified fold assignment: each class is shuffled and dealt
// round-robin over folds.
std::vector<int> stratified_folds(const std::vector<int>& labels, int folds, std::uint64_t seed,
                                  std::uint64_t stream);

// One repeat of the cross-validation protocol with a fixed fold assignment.
// Exposed so the no-leakage contract is directly testable: everything
// train-derived (partitions, standardization, model parameters) must be
// bit-identical under any perturbation of test-fold feature values.
struct RepeatResult {
    std::vector<int> fold_of_sample;
    std::vector<int> sizes;                          // evaluated cluster counts
    std::vector<double> auroc_per_size;
    std::vector<double> auprc_per_size;
    std::vector<std::vector<double>> scores_per_size; // pooled test scores per sample
    std::vector<std::vector<Partition>> partition_per_fold; // [fold][size index]
    std::vector<std::vector<LinearModel>> model_per_fold;   // [fold][size index]
};

// `aligned` must already be column-aligned to `g` (see align_to_graph).
// `fixed_filt` supplies the data-independent filtration in ppi mode.
RepeatResult run_cv_repeat(const Dataset& aligned, const Graph& g, const CvOptions& opts,
                           const std::vector<int>& fold_of_sample, int repeat_index,
                           const Filtration* fixed_filt);

// Full protocol: per repeat, stratified folds are drawn, train-fold-derived
// partitions reduce both sides, models score the held-out fold, and pooled
// scores give one AUROC/AUPRC per cluster size. Reports mean and standard
// deviation over repeats.
CVReport cross_validate(const Dataset& d, const Graph& g, const CvOptions& opts);

// Balanced two-class dataset whose class means differ by +/- effect/2 on a
// random half of the clusters at `planted_level` (constant within cluster),
// plus iid N(0, noise^2) per node per sample.
Dataset synthetic_dataset(const Graph& g, const Filtration& filt, int planted_level,
                          double effect, double noise, int n_samples, std::uint64_t seed);

} // namespace gdn

#endif
