#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <charconv>
#include <cstdio>
#include <filesystem>

#include "gdn/filtration.hpp"
#include "gdn/io.hpp"
#include "gdn/rng.hpp"
#include "support/test_graphs.hpp"

using namespace gdn;
using namespace gdn::testsupport;

TEST_CASE("format_double round-trips arbitrary doubles") {
    RngStream rng(1, 0);
    for (int i = 0; i < 2000; ++i) {
        double v = rng.next_normal() * std::pow(10.0, static_cast<double>(rng.next_below(20)) - 10.0);
        const std::string text = format_double(v);
        double back = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), back);
        REQUIRE(ec == std::errc());
        CHECK(back == v);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0) == "1");
}

TEST_CASE("error curve CSV layout") {
    ErrorCurve c;
    c.params = {0, 1, 2};
    c.mean_error = {0.5, 0.25, 0.125};
    c.std_error = {0, 0, 0};
    c.trials = 7;
    CHECK(curve_to_csv(c) ==
          "param,mean_error,std_error,trials\n"
          "0,0.5,0,7\n"
          "1,0.25,0,7\n"
          "2,0.125,0,7\n");
}

TEST_CASE("partition CSV layout") {
    const Partition p = partition_from_labels({0, 0, 1});
    CHECK(partition_to_csv(p, {"a", "b", "c"}) ==
          "node_id,cluster_index\n"
          "a,0\n"
          "b,0\n"
          "c,1\n");
    CHECK_THROWS_AS(partition_to_csv(p, {"a", "b"}), Error);
}

TEST_CASE("filtration level files and manifest") {
    const auto dir = std::filesystem::temp_directory_path() / "gdn_io_test";
    std::filesystem::remove_all(dir);
    const Filtration f = dyadic_filtration(2);
    const auto ids = padded_ids(4);
    const ordered_json manifest = save_filtration_levels(f, ids, dir.string());

    CHECK(manifest["node_count"] == 4);
    REQUIRE(manifest["levels"].size() == 3);
    CHECK(manifest["levels"][1]["clusters"] == 2);
    CHECK(manifest["levels"][2]["file"] == "level_2.csv");
    for (int t = 0; t < 3; ++t)
        CHECK(std::filesystem::exists(dir / ("level_" + std::to_string(t) + ".csv")));
    CHECK(read_text_file((dir / "level_1.csv").string()) ==
          "node_id,cluster_index\nn0,0\nn1,0\nn2,1\nn3,1\n");
    std::filesystem::remove_all(dir);
}

TEST_CASE("verdict and lemma2 JSON") {
    CurveVerdict v;
    v.argmin_index = 3;
    v.interior = true;
    v.head_decreasing = true;
    v.tail_increasing = false;
    CHECK(verdict_to_json(v).dump() ==
          R"({"argmin_index":3,"interior":true,"head_decreasing":true,"tail_increasing":false})");

    Lemma2Row row;
    row.level = 1;
    row.k = 2;
    row.empirical_mean = 1.25;
    row.predicted = 1.25331;
    const auto arr = lemma2_to_json({row});
    CHECK(arr[0]["t"] == 1);
    CHECK(arr[0]["k"] == 2);
    CHECK(arr[0]["empirical"] == 1.25);
}

TEST_CASE("CV report JSON schema and table") {
    CVReport r;
    r.mode = "ppi";
    r.cluster_sizes = {4, 8};
    r.folds = 5;
    r.repeats = 3;
    r.reg_strength = 0.01;
    r.epochs = 200;
    r.sigma = 0.0;
    r.seed = 42;
    r.per_size = {{4, 0.732, 0.018, 0.524, 0.029}, {8, 0.534, 0.044, 0.362, 0.032}};

    const ordered_json j = cv_report_to_json(r);
    CHECK(j["mode"] == "ppi");
    CHECK(j["cluster_sizes"] == ordered_json::array({4, 8}));
    CHECK(j["folds"] == 5);
    CHECK(j["repeats"] == 3);
    CHECK(j["per_size"][0]["k"] == 4);
    CHECK(j["per_size"][0]["auroc_mean"] == 0.732);
    CHECK(j["per_size"][1]["auprc_std"] == 0.032);
    // stable key order: insertion order is preserved
    const std::string dumped = j.dump();
    CHECK(dumped.find("\"mode\"") < dumped.find("\"cluster_sizes\""));
    CHECK(dumped.find("\"cluster_sizes\"") < dumped.find("\"per_size\""));

    CHECK(cv_report_to_table_csv(r) ==
          "metric,k=4,k=8\n"
          "AUROC,0.732(0.018),0.534(0.044)\n"
          "AUPRC,0.524(0.029),0.362(0.032)\n");
}

TEST_CASE("text file round trip and errors") {
    const auto path = std::filesystem::temp_directory_path() / "gdn_io_file.txt";
    write_text_file(path.string(), "hello\n");
    CHECK(read_text_file(path.string()) == "hello\n");
    std::filesystem::remove(path);
    CHECK_THROWS_WITH_AS(read_text_file((path / "nope").string()), doctest::Contains("IoError"),
                         Error);
}
