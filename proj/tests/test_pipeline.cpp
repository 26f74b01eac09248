#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gdn/pipeline.hpp"
#include "gdn/rng.hpp"
#include "support/test_graphs.hpp"

using namespace gdn;
using namespace gdn::testsupport;

namespace {

const char* kFeatures =
    "sample_id,g1,g2,g3\n"
    "s1,0.5,1.0,2.0\n"
    "s2,0.25,0.75,1.5\n"
    "s3,5.0,4.0,3.0\n"
    "s4,6.0,5.5,2.5\n";

const char* kLabels = "s1,0\ns2,0\ns3,1\ns4,1\n";

// O(P*N) pairwise concordance count, ties worth 1/2.
double brute_auroc(const std::vector<double>& scores, const std::vector<int>& labels) {
    double concordant = 0.0;
    long long pairs = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (labels[i] != 1) continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (labels[j] != 0) continue;
            ++pairs;
            if (scores[i] > scores[j]) concordant += 1.0;
            else if (scores[i] == scores[j]) concordant += 0.5;
        }
    }
    return concordant / static_cast<double>(pairs);
}

} // namespace

TEST_CASE("dataset loading") {
    const Dataset d = load_dataset(kFeatures, kLabels);
    CHECK(d.sample_count() == 4);
    CHECK(d.feature_count() == 3);
    CHECK(d.labels == std::vector<int>{0, 0, 1, 1});
    CHECK(d.features(2, 0) == 5.0);
    CHECK(d.node_ids == std::vector<std::string>{"g1", "g2", "g3"});

    // labels file with a header is accepted too
    const Dataset d2 = load_dataset(kFeatures, std::string("sample_id,label\n") + kLabels);
    CHECK(d2.labels == d.labels);
}

TEST_CASE("dataset loading failures") {
    CHECK_THROWS_WITH_AS(load_dataset(kFeatures, "s1,0\ns2,0\ns3,1\ns4,2\n"),
                         doctest::Contains("NonBinaryLabel"), Error);
    CHECK_THROWS_WITH_AS(load_dataset(kFeatures, "s1,0\ns2,0\ns3,1\n"),
                         doctest::Contains("MissingLabel"), Error);
    CHECK_THROWS_WITH_AS(
        load_dataset("sample_id,g1,g2\ns1,1.0,\ns2,2,3\n", "s1,0\ns2,1\n"),
        doctest::Contains("MissingValue"), Error);
    CHECK_THROWS_WITH_AS(
        load_dataset("sample_id,g1,g2\ns1,1,2\ns1,2,3\n", "s1,0\n"),
        doctest::Contains("DuplicateId"), Error);
    CHECK_THROWS_WITH_AS(
        load_dataset("sample_id,g1,g1\ns1,1,2\ns2,2,3\n", "s1,0\ns2,1\n"),
        doctest::Contains("DuplicateId"), Error);
    CHECK_THROWS_WITH_AS(load_dataset(kFeatures, "s1,0\ns2,0\ns3,0\ns4,0\n"),
                         doctest::Contains("SingleClass"), Error);
    CHECK_THROWS_WITH_AS(
        load_dataset(kFeatures, "s1,0\ns2,0\ns3,1\ns4,1\ns1,1\n"),
        doctest::Contains("DuplicateId"), Error);
}

TEST_CASE("dataset CSV round trip") {
    const Dataset d = load_dataset(kFeatures, kLabels);
    const Dataset back = load_dataset(dataset_features_csv(d), dataset_labels_csv(d));
    CHECK(back.node_ids == d.node_ids);
    CHECK(back.sample_ids == d.sample_ids);
    CHECK(back.labels == d.labels);
    CHECK((back.features - d.features).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("aligning a dataset to a graph") {
    const Graph g = load_edge_list("g1 g3");
    AlignStats stats;
    const Dataset aligned = align_to_graph(load_dataset(kFeatures, kLabels), g, &stats);
    CHECK(aligned.node_ids == std::vector<std::string>{"g1", "g3"});
    CHECK(stats.kept == 2);
    CHECK(stats.dropped_dataset_columns == 1);
    CHECK(stats.graph_nodes_without_data == 0);
    CHECK(aligned.features(0, 1) == 2.0); // old g3 column

    // column order permutes to graph order even when ids all match
    const Graph g2 = load_edge_list("g3 g1\ng1 g2");
    const Dataset full = align_to_graph(load_dataset(kFeatures, kLabels), g2);
    CHECK(full.node_ids == std::vector<std::string>{"g1", "g2", "g3"});

    const Graph other = load_edge_list("x y");
    CHECK_THROWS_WITH_AS(align_to_graph(load_dataset(kFeatures, kLabels), other),
                         doctest::Contains("EmptyIntersection"), Error);
}

TEST_CASE("dataset reduction") {
    const Dataset d = load_dataset(kFeatures, kLabels);

    const Dataset same = reduce_dataset(d, singleton_partition(3));
    CHECK((same.features - d.features).cwiseAbs().maxCoeff() == 0.0);
    CHECK(same.node_ids == std::vector<std::string>{"0", "1", "2"});

    const Dataset one = reduce_dataset(d, trivial_partition(3));
    REQUIRE(one.feature_count() == 1);
    for (int i = 0; i < 4; ++i)
        CHECK(one.features(i, 0) == doctest::Approx(d.features.row(i).mean()).epsilon(1e-15));

    Eigen::MatrixXd m(2, 4);
    m << 1, 2, 3, 4, 5, 6, 7, 8;
    Dataset d2;
    d2.features = m;
    d2.labels = {0, 1};
    d2.sample_ids = {"a", "b"};
    d2.node_ids = {"w", "x", "y", "z"};
    const Dataset red = reduce_dataset(d2, partition_from_labels({0, 0, 1, 1}));
    CHECK(red.features(0, 0) == 1.5);
    CHECK(red.features(0, 1) == 3.5);
    CHECK(red.features(1, 0) == 5.5);
    CHECK(red.features(1, 1) == 7.5);
}

TEST_CASE("reduction commutes with row subsetting") {
    RngStream rng(15, 0);
    Dataset d;
    d.features.resize(12, 20);
    for (Eigen::Index i = 0; i < 12; ++i)
        for (Eigen::Index j = 0; j < 20; ++j) d.features(i, j) = rng.next_normal();
    for (int i = 0; i < 12; ++i) {
        d.sample_ids.push_back("s" + std::to_string(i));
        d.labels.push_back(i % 2);
    }
    for (int j = 0; j < 20; ++j) d.node_ids.push_back("g" + std::to_string(j));
    const Partition p = random_filtration(20, {6}, 2).level(1);

    const Dataset reduced_full = reduce_dataset(d, p);
    Dataset subset;
    subset.features = d.features.topRows(5);
    subset.labels = {0, 1, 0, 1, 0};
    subset.sample_ids = {"a", "b", "c", "d", "e"};
    subset.node_ids = d.node_ids;
    const Dataset reduced_subset = reduce_dataset(subset, p);
    CHECK((reduced_subset.features - reduced_full.features.topRows(5)).cwiseAbs().maxCoeff() ==
          0.0);
}

TEST_CASE("linear classifier on a separable pair") {
    Eigen::MatrixXd x(2, 2);
    x << -1.0, 0.5, 1.0, -0.5;
    const std::vector<int> y{0, 1};
    const LinearModel m = train_classifier(x, y, 0.01, 200, 7);
    CHECK(m.score(x.row(0).transpose()) < 0.0);
    CHECK(m.score(x.row(1).transpose()) > 0.0);
    // hinge loss at the solution is (near) zero
    const double h0 = std::max(0.0, 1.0 + m.score(x.row(0).transpose()));
    const double h1 = std::max(0.0, 1.0 - m.score(x.row(1).transpose()));
    CHECK(h0 + h1 <= 1e-6);

    const LinearModel m2 = train_classifier(x, y, 0.01, 200, 7);
    CHECK((m.weights - m2.weights).cwiseAbs().maxCoeff() == 0.0);
    CHECK(m.bias == m2.bias);

    CHECK_THROWS_WITH_AS(train_classifier(x, {1, 1}, 0.01, 10, 7),
                         doctest::Contains("SingleClass"), Error);
    CHECK_THROWS_WITH_AS(train_classifier(x, y, 0.0, 10, 7),
                         doctest::Contains("NonPositiveReg"), Error);
}

TEST_CASE("classifier reaches near-Bayes accuracy on separated blobs") {
    // two spherical blobs 3 sigma apart: Bayes accuracy is Phi(1.5) ~ 0.933
    RngStream rng(21, 0);
    const int train_n = 100, test_n = 200, dim = 2;
    auto draw = [&](int n, Eigen::MatrixXd& x, std::vector<int>& y) {
        x.resize(n, dim);
        y.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const int label = i % 2;
            y[static_cast<std::size_t>(i)] = label;
            for (int j = 0; j < dim; ++j)
                x(i, j) = rng.next_normal() + (j == 0 && label ? 3.0 : 0.0);
        }
    };
    Eigen::MatrixXd train_x, test_x;
    std::vector<int> train_y, test_y;
    draw(train_n, train_x, train_y);
    draw(test_n, test_x, test_y);

    const LinearModel m = train_classifier(train_x, train_y, 0.01, 200, 5);
    int correct = 0;
    for (int i = 0; i < test_n; ++i) {
        const bool predicted = m.score(test_x.row(i).transpose()) > 0.0;
        if (predicted == (test_y[static_cast<std::size_t>(i)] == 1)) ++correct;
    }
    CHECK(static_cast<double>(correct) / test_n >= 0.9);
}

TEST_CASE("auroc worked examples") {
    CHECK(auroc({0.1, 0.4, 0.35, 0.8}, {0, 0, 1, 1}) == 0.75);
    CHECK(auroc({0.0, 0.1, 0.9, 1.0}, {0, 0, 1, 1}) == 1.0);
    CHECK(auroc({0.5, 0.5, 0.5, 0.5}, {0, 1, 0, 1}) == 0.5);
    CHECK_THROWS_WITH_AS(auroc({0.1, 0.2}, {1, 1}), doctest::Contains("SingleClass"), Error);
}

TEST_CASE("auroc equals brute-force concordance on 1000 random instances") {
    RngStream rng(1234, 0);
    for (int it = 0; it < 1000; ++it) {
        const int n = 4 + static_cast<int>(rng.next_below(47));
        std::vector<double> scores;
        std::vector<int> labels;
        bool saw0 = false, saw1 = false;
        for (int i = 0; i < n; ++i) {
            // quantized scores force plenty of ties
            const bool coarse = (it % 2) == 0;
            const double s = coarse
                                 ? static_cast<double>(rng.next_below(5)) / 4.0
                                 : rng.next_unit();
            scores.push_back(s);
            const int y = (rng.next_u64() & 1) ? 1 : 0;
            labels.push_back(y);
            (y ? saw1 : saw0) = true;
        }
        if (!saw0) labels[0] = 0;
        if (!saw1) labels[1] = 1;
        CHECK(auroc(scores, labels) == brute_auroc(scores, labels));
    }
}

TEST_CASE("auroc is invariant under strictly increasing transforms") {
    RngStream rng(55, 0);
    std::vector<double> scores;
    std::vector<int> labels;
    for (int i = 0; i < 40; ++i) {
        scores.push_back(rng.next_normal());
        labels.push_back(static_cast<int>(rng.next_u64() & 1));
    }
    labels[0] = 0;
    labels[1] = 1;
    std::vector<double> transformed;
    for (const double s : scores) transformed.push_back(std::exp(s));
    CHECK(auroc(scores, labels) == auroc(transformed, labels));
}

TEST_CASE("auprc worked examples") {
    CHECK(auprc({0.9, 0.8, 0.7}, {1, 0, 1}) == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
    CHECK(auprc({0.0, 0.3, 0.8, 0.9}, {0, 0, 1, 1}) == 1.0);
    // one positive ranked last of n
    CHECK(auprc({0.9, 0.8, 0.7, 0.1}, {0, 0, 0, 1}) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK_THROWS_WITH_AS(auprc({0.1, 0.2}, {0, 0}), doctest::Contains("NoPositives"), Error);
}

TEST_CASE("stratified folds balance both classes") {
    std::vector<int> labels;
    for (int i = 0; i < 37; ++i) labels.push_back(i < 17 ? 1 : 0);
    const auto fold_of = stratified_folds(labels, 5, 99, 3);
    std::vector<int> pos_count(5, 0), neg_count(5, 0);
    for (std::size_t i = 0; i < labels.size(); ++i)
        (labels[i] ? pos_count : neg_count)[static_cast<std::size_t>(fold_of[i])]++;
    for (int f = 0; f < 5; ++f) {
        CHECK(std::abs(pos_count[static_cast<std::size_t>(f)] - 17 / 5) <= 1);
        CHECK(std::abs(neg_count[static_cast<std::size_t>(f)] - 20 / 5) <= 1);
    }
    CHECK_THROWS_WITH_AS(stratified_folds({0, 0, 0, 1, 1, 0, 0, 0}, 5, 1, 0),
                         doctest::Contains("TooFewSamples"), Error);
}

TEST_CASE("synthetic dataset basics") {
    const Graph g = random_connected_graph(32, 0.15, 8);
    const Filtration filt = multilevel_filtration(g, {8});

    const Dataset a = synthetic_dataset(g, filt, 1, 0.8, 0.5, 20, 4);
    const Dataset b = synthetic_dataset(g, filt, 1, 0.8, 0.5, 20, 4);
    CHECK((a.features - b.features).cwiseAbs().maxCoeff() == 0.0);
    CHECK(a.labels == b.labels);
    CHECK(dataset_features_csv(a) == dataset_features_csv(b));
    CHECK(a.sample_count() == 20);
    CHECK(std::count(a.labels.begin(), a.labels.end(), 1) == 10);

    // class-mean difference is constant within clusters and 0 or effect/2
    const Dataset clean = synthetic_dataset(g, filt, 1, 0.8, 0.0, 4, 4);
    const Eigen::VectorXd diff = clean.features.row(1) - clean.features.row(0);
    for (const auto& cluster : filt.level(1).clusters) {
        for (const int q : cluster) CHECK(diff(q) == diff(cluster.front()));
        CHECK((std::abs(diff(cluster.front())) == 0.4 || diff(cluster.front()) == 0.0));
    }

    CHECK_THROWS_WITH_AS(synthetic_dataset(g, filt, 5, 0.5, 1.0, 10, 1),
                         doctest::Contains("InvalidLevel"), Error);
}

TEST_CASE("noise-free planted signal classifies perfectly at the planted level") {
    const Graph g = random_connected_graph(48, 0.12, 19);
    const Filtration filt = multilevel_filtration(g, {12});
    const Dataset d = synthetic_dataset(g, filt, 1, 1.0, 0.0, 30, 6);

    CvOptions opts;
    opts.cluster_sizes = {12};
    opts.mode = CvMode::ppi;
    opts.repeats = 3;
    opts.seed = 11;
    const CVReport report = cross_validate(d, g, opts);
    CHECK(report.per_size.at(0).auroc_mean == 1.0);
    CHECK(report.per_size.at(0).auprc_mean == 1.0);
}

TEST_CASE("permuted labels land near AUROC 0.5") {
    // permutation null: re-permute the labels for every repeat, so the mean
    // averages over the null distribution rather than one unlucky draw
    const Graph g = random_connected_graph(32, 0.15, 23);
    const Filtration filt = multilevel_filtration(g, {8});
    const Dataset base = synthetic_dataset(g, filt, 1, 0.6, 1.0, 60, 9);

    double total = 0.0;
    const int repeats = 20;
    for (int rep = 0; rep < repeats; ++rep) {
        Dataset permuted = base;
        RngStream rng(100, static_cast<std::uint64_t>(rep));
        shuffle_indices(permuted.labels, rng);
        CvOptions opts;
        opts.cluster_sizes = {8};
        opts.mode = CvMode::ppi;
        opts.repeats = 1;
        opts.seed = static_cast<std::uint64_t>(rep);
        total += cross_validate(permuted, g, opts).per_size.at(0).auroc_mean;
    }
    CHECK(std::abs(total / repeats - 0.5) <= 0.05);
}

TEST_CASE("null planted signal is indistinguishable on average") {
    const Graph g = random_connected_graph(32, 0.15, 23);
    const Filtration filt = multilevel_filtration(g, {8});
    double total = 0.0;
    const int draws = 5;
    for (std::uint64_t ds = 1; ds <= draws; ++ds) {
        const Dataset null_d = synthetic_dataset(g, filt, 1, 0.0, 1.0, 60, ds);
        CvOptions opts;
        opts.cluster_sizes = {8};
        opts.mode = CvMode::ppi;
        opts.repeats = 8;
        opts.seed = 31 + ds;
        total += cross_validate(null_d, g, opts).per_size.at(0).auroc_mean;
    }
    // small-sample CV on pure noise scatters widely per dataset (and skews
    // slightly pessimistic); the average over independent draws stays near 1/2
    CHECK(std::abs(total / draws - 0.5) <= 0.12);
}

TEST_CASE("all_genes mode equals evaluating raw aligned features") {
    const Graph g = random_connected_graph(16, 0.2, 41);
    const Filtration filt = multilevel_filtration(g, {4});
    const Dataset d = synthetic_dataset(g, filt, 1, 0.6, 1.0, 40, 13);

    CvOptions raw;
    raw.mode = CvMode::all_genes;
    raw.repeats = 4;
    raw.seed = 17;

    CvOptions singleton;
    singleton.mode = CvMode::ppi;
    singleton.cluster_sizes = {16}; // singleton level: identity partition
    singleton.repeats = 4;
    singleton.seed = 17;

    const CVReport a = cross_validate(d, g, raw);
    const CVReport b = cross_validate(d, g, singleton);
    REQUIRE(a.per_size.size() == 1);
    CHECK(a.per_size[0].k == 16);
    CHECK(a.per_size[0].auroc_mean == b.per_size[0].auroc_mean);
    CHECK(a.per_size[0].auprc_mean == b.per_size[0].auprc_mean);
}

TEST_CASE("cross validation is reproducible bit for bit") {
    const Graph g = random_connected_graph(24, 0.18, 51);
    const Filtration filt = multilevel_filtration(g, {6});
    const Dataset d = synthetic_dataset(g, filt, 1, 0.5, 1.0, 30, 3);

    CvOptions opts;
    opts.cluster_sizes = {3, 6};
    opts.mode = CvMode::random;
    opts.repeats = 5;
    opts.seed = 77;
    const CVReport a = cross_validate(d, g, opts);
    const CVReport b = cross_validate(d, g, opts);
    REQUIRE(a.per_size.size() == b.per_size.size());
    for (std::size_t s = 0; s < a.per_size.size(); ++s) {
        CHECK(a.per_size[s].auroc_mean == b.per_size[s].auroc_mean);
        CHECK(a.per_size[s].auroc_std == b.per_size[s].auroc_std);
        CHECK(a.per_size[s].auprc_mean == b.per_size[s].auprc_mean);
        CHECK(a.per_size[s].auprc_std == b.per_size[s].auprc_std);
    }
}

TEST_CASE("test-fold perturbations never leak into training artifacts") {
    const Graph g = random_connected_graph(24, 0.2, 61);
    const Filtration filt = multilevel_filtration(g, {6});
    Dataset d = synthetic_dataset(g, filt, 1, 0.5, 1.0, 30, 21);

    CvOptions opts;
    opts.cluster_sizes = {6};
    opts.mode = CvMode::ppi_expr;
    opts.folds = 5;
    opts.seed = 5;

    const auto fold_of = stratified_folds(d.labels, opts.folds, opts.seed, 0);
    const RepeatResult base = run_cv_repeat(d, g, opts, fold_of, 0, nullptr);

    Dataset poked = d;
    for (int i = 0; i < poked.sample_count(); ++i)
        if (fold_of[static_cast<std::size_t>(i)] == 0)
            poked.features.row(i).array() += 13.7; // corrupt the test fold only
    const RepeatResult perturbed = run_cv_repeat(poked, g, opts, fold_of, 0, nullptr);

    // fold 0's training partition and model are bit-identical
    CHECK(base.partition_per_fold[0][0].assignment ==
          perturbed.partition_per_fold[0][0].assignment);
    CHECK((base.model_per_fold[0][0].weights - perturbed.model_per_fold[0][0].weights)
              .cwiseAbs()
              .maxCoeff() == 0.0);
    CHECK(base.model_per_fold[0][0].bias == perturbed.model_per_fold[0][0].bias);
    // while its test scores do change
    bool any_difference = false;
    for (int i = 0; i < d.sample_count(); ++i)
        if (fold_of[static_cast<std::size_t>(i)] == 0 &&
            base.scores_per_size[0][static_cast<std::size_t>(i)] !=
                perturbed.scores_per_size[0][static_cast<std::size_t>(i)])
            any_difference = true;
    CHECK(any_difference);
}
