#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "gdn/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string stdout_text;
    std::string stderr_text;
};

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path dir = fs::temp_directory_path() / "gdn_cli_capture";
    fs::create_directories(dir);
    const fs::path out = dir / ("out" + std::to_string(counter));
    const fs::path err = dir / ("err" + std::to_string(counter));
    ++counter;
    const std::string cmd = std::string(CLI_BINARY) + " " + args + " >" + out.string() + " 2>" +
                            err.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(status);
    r.stdout_text = gdn::read_text_file(out.string());
    r.stderr_text = gdn::read_text_file(err.string());
    return r;
}

fs::path sandbox() {
    const fs::path dir = fs::temp_directory_path() / "gdn_cli_test";
    fs::create_directories(dir);
    return dir;
}

fs::path write_two_triangles() {
    const fs::path p = sandbox() / "triangles.txt";
    gdn::write_text_file(p.string(), "a b\nb c\na c\nd e\ne f\nd f\n");
    return p;
}

fs::path write_random_graph() {
    // deterministic 20-node graph: ring plus skip links
    std::string text;
    for (int i = 0; i < 20; ++i) {
        auto id = [](int v) {
            std::string s = std::to_string(v % 20);
            return "n" + std::string(2 - s.size(), '0') + s;
        };
        text += id(i) + " " + id(i + 1) + "\n";
        if (i % 3 == 0) text += id(i) + " " + id(i + 7) + "\n";
    }
    const fs::path p = sandbox() / "ring20.txt";
    gdn::write_text_file(p.string(), text);
    return p;
}

} // namespace

TEST_CASE("cluster writes partition files and a manifest") {
    const fs::path graph = write_two_triangles();
    const fs::path out = sandbox() / "cluster_out";
    const RunResult r =
        run_cli("cluster --graph " + graph.string() + " --sizes 2 --out " + out.string());
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(out / "manifest.json"));
    CHECK(gdn::read_text_file((out / "level_1.csv").string()) ==
          "node_id,cluster_index\na,0\nb,0\nc,0\nd,1\ne,1\nf,1\n");
    const json manifest = json::parse(gdn::read_text_file((out / "manifest.json").string()));
    CHECK(manifest["levels"].size() == 2);
    CHECK(manifest["config"]["sizes"][0] == 2);
}

TEST_CASE("single-size cluster run emits one combined cluster") {
    const fs::path graph = write_two_triangles();
    const fs::path out = sandbox() / "cluster_one";
    const RunResult r =
        run_cli("cluster --graph " + graph.string() + " --sizes 1 --out " + out.string());
    CHECK(r.exit_code == 0);
    CHECK(gdn::read_text_file((out / "level_0.csv").string()) ==
          "node_id,cluster_index\na,0\nb,0\nc,0\nd,0\ne,0\nf,0\n");
}

TEST_CASE("bad graph path exits with the I/O code") {
    const RunResult r = run_cli("cluster --graph /nonexistent/g.txt --sizes 2 --out /tmp/x");
    CHECK(r.exit_code == 2);
    CHECK(r.stderr_text.find("IoError") != std::string::npos);
}

TEST_CASE("unknown flags exit with the config code") {
    const RunResult r = run_cli("cluster --nope 1");
    CHECK(r.exit_code == 1);
}

TEST_CASE("martingale simulation is seed deterministic") {
    const fs::path out1 = sandbox() / "mart1";
    const fs::path out2 = sandbox() / "mart2";
    const std::string args = "simulate-martingale --T 6 --trials 40 --seed 9 --out ";
    CHECK(run_cli(args + out1.string()).exit_code == 0);
    CHECK(run_cli(args + out2.string() + " --threads 4").exit_code == 0);
    CHECK(gdn::read_text_file((out1 / "curve.csv").string()) ==
          gdn::read_text_file((out2 / "curve.csv").string()));
}

TEST_CASE("martingale verdicts at the noise extremes") {
    const fs::path out_noise = sandbox() / "mart_const";
    const RunResult noisy = run_cli(
        "simulate-martingale --T 6 --profile constant --epsilon 0.2 --trials 60 --out " +
        out_noise.string());
    CHECK(noisy.exit_code == 0);
    json v = json::parse(gdn::read_text_file((out_noise / "verdict.json").string()));
    CHECK(v["verdict"]["argmin_index"] == 0); // pure noise quenching

    const fs::path out_clean = sandbox() / "mart_clean";
    const RunResult clean = run_cli(
        "simulate-martingale --T 6 --profile sin --epsilon 0 --trials 5 --out " +
        out_clean.string());
    CHECK(clean.exit_code == 0);
    v = json::parse(gdn::read_text_file((out_clean / "verdict.json").string()));
    CHECK(v["verdict"]["argmin_index"] == 6); // bias only: finest level wins

    CHECK(run_cli("simulate-martingale --T 4 --graph g.txt --out /tmp/x").exit_code == 1);
    CHECK(run_cli("simulate-martingale --out /tmp/x").exit_code == 1);
}

TEST_CASE("kernel simulation compares Monte Carlo with the closed form") {
    const fs::path graph = write_random_graph();
    const fs::path out = sandbox() / "kern";
    const RunResult r = run_cli("simulate-kernel --graph " + graph.string() +
                                " --trials 200 --seed 4 --out " + out.string());
    CHECK(r.exit_code == 0);
    const json cmp = json::parse(gdn::read_text_file((out / "comparison.json").string()));
    CHECK(cmp["max_abs_z"].get<double>() <= 4.0);
    CHECK(cmp["comparison"].size() == 50);

    // zero noise: both curves coincide pointwise
    const fs::path out0 = sandbox() / "kern0";
    CHECK(run_cli("simulate-kernel --graph " + graph.string() +
                  " --epsilon 0 --trials 3 --grid-points 8 --out " + out0.string())
              .exit_code == 0);
    const json cmp0 = json::parse(gdn::read_text_file((out0 / "comparison.json").string()));
    for (const auto& point : cmp0["comparison"])
        CHECK(point["mc_mean"].get<double>() == point["closed_form"].get<double>());

    // a single-point grid cannot produce a verdict
    const RunResult tiny = run_cli("simulate-kernel --graph " + graph.string() +
                                   " --grid 1:2:1 --trials 5 --out " + (sandbox() / "k1").string());
    CHECK(tiny.exit_code == 1);
    CHECK(tiny.stderr_text.find("TooFewPoints") != std::string::npos);
}

TEST_CASE("lemma2 subcommand") {
    const fs::path out = sandbox() / "lemma2";
    const RunResult r = run_cli("lemma2 --T 6 --trials 3000 --seed 12 --out " + out.string());
    CHECK(r.exit_code == 0);
    const json table = json::parse(gdn::read_text_file((out / "lemma2.json").string()));
    CHECK(table["max_abs_z"].get<double>() <= 4.0);
    REQUIRE(table["table"].size() == 7);
    CHECK(table["table"][0]["predicted"].get<double>() == doctest::Approx(0.79788).epsilon(1e-4));

    CHECK(run_cli("lemma2 --T 4 --epsilon 0 --out /tmp/x").exit_code == 1);
}

TEST_CASE("synth then evaluate round trip") {
    const fs::path graph = write_random_graph();
    const fs::path synth_out = sandbox() / "synth";
    const std::string synth_args = "synth --graph " + graph.string() +
                                   " --sizes 5 --planted-level 1 --effect 1.5 --noise 1 "
                                   "--samples 30 --seed 8 --out ";
    CHECK(run_cli(synth_args + synth_out.string()).exit_code == 0);

    // bit-identical rerun
    const fs::path synth_out2 = sandbox() / "synth2";
    CHECK(run_cli(synth_args + synth_out2.string()).exit_code == 0);
    CHECK(gdn::read_text_file((synth_out / "features.csv").string()) ==
          gdn::read_text_file((synth_out2 / "features.csv").string()));
    CHECK(gdn::read_text_file((synth_out / "labels.csv").string()) ==
          gdn::read_text_file((synth_out2 / "labels.csv").string()));

    const fs::path eval_out = sandbox() / "eval";
    const RunResult ev = run_cli("evaluate --graph " + graph.string() + " --features " +
                                 (synth_out / "features.csv").string() + " --labels " +
                                 (synth_out / "labels.csv").string() +
                                 " --sizes 5 --mode ppi --repeats 3 --seed 2 --out " +
                                 eval_out.string());
    CHECK(ev.exit_code == 0);
    const json report = json::parse(gdn::read_text_file((eval_out / "report.json").string()));
    CHECK(report["report"]["per_size"][0]["k"] == 5);
    CHECK(report["report"]["per_size"][0]["auroc_mean"].get<double>() > 0.5);
    CHECK(fs::exists(eval_out / "table.csv"));

    const fs::path eval_all = sandbox() / "eval_all";
    const RunResult ag = run_cli("evaluate --graph " + graph.string() + " --features " +
                                 (synth_out / "features.csv").string() + " --labels " +
                                 (synth_out / "labels.csv").string() +
                                 " --mode all_genes --repeats 2 --out " + eval_all.string());
    CHECK(ag.exit_code == 0);
    const json all_report = json::parse(gdn::read_text_file((eval_all / "report.json").string()));
    CHECK(all_report["report"]["per_size"][0]["k"] == 20);
}
