// Command-line front end: reproducible experiments over the library, each
// emitting CSV/JSON artifacts with the resolved configuration echoed in.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include "gdn/filtration.hpp"
#include "gdn/graph.hpp"
#include "gdn/io.hpp"
#include "gdn/kernels.hpp"
#include "gdn/pipeline.hpp"
#include "gdn/simlab.hpp"

namespace {

using gdn::ordered_json;

constexpr int exit_ok = 0;
constexpr int exit_config = 1;
constexpr int exit_io = 2;

std::vector<int> parse_sizes(const std::string& text) {
    std::vector<int> sizes;
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        try {
            sizes.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw gdn::Error(gdn::errc::invalid_argument, "bad size '" + tok + "'");
        }
    }
    if (sizes.empty())
        throw gdn::Error(gdn::errc::invalid_argument, "no sizes in '" + text + "'");
    return sizes;
}

std::vector<double> parse_grid(const std::string& spec, const gdn::DistanceMatrix& d,
                               int default_points) {
    if (spec == "auto") return gdn::default_alpha_grid(d, default_points);
    double lo = 0.0, hi = 0.0;
    int points = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(spec);
    if (!(in >> lo >> c1 >> hi >> c2 >> points) || c1 != ':' || c2 != ':' || points < 1 ||
        !(lo > 0.0) || !(hi > lo))
        throw gdn::Error(gdn::errc::invalid_argument,
                         "grid must be 'auto' or 'min:max:points', got '" + spec + "'");
    std::vector<double> grid;
    if (points == 1) return {lo};
    const double llo = std::log(lo), step = (std::log(hi) - llo) / (points - 1);
    for (int i = 0; i < points; ++i) grid.push_back(std::exp(llo + step * i));
    return grid;
}

gdn::Signal profile_signal(const std::string& profile, int n, const std::string& signal_path) {
    gdn::Signal s(n);
    if (profile == "sin") {
        for (int i = 0; i < n; ++i) s(i) = std::sin(2.0 * M_PI * (i + 0.5) / n);
    } else if (profile == "step") {
        for (int i = 0; i < n; ++i) s(i) = (i < n / 2) ? 0.0 : 1.0;
    } else if (profile == "constant") {
        s.setOnes();
    } else if (profile == "from-file") {
        if (signal_path.empty())
            throw gdn::Error(gdn::errc::invalid_argument, "profile from-file needs --signal");
        std::istringstream in(gdn::read_text_file(signal_path));
        std::vector<double> values;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            try {
                values.push_back(std::stod(line));
            } catch (const std::exception&) {
                throw gdn::Error(gdn::errc::parse_error, "bad signal value '" + line + "'");
            }
        }
        if (static_cast<int>(values.size()) != n)
            throw gdn::Error(gdn::errc::dimension_mismatch,
                             "signal file has " + std::to_string(values.size()) +
                                 " values for " + std::to_string(n) + " nodes");
        for (int i = 0; i < n; ++i) s(i) = values[static_cast<std::size_t>(i)];
    } else {
        throw gdn::Error(gdn::errc::invalid_argument, "unknown profile '" + profile + "'");
    }
    return s;
}

gdn::Graph load_graph(const std::string& path) {
    return gdn::load_edge_list(gdn::read_text_file(path));
}

std::string out_path(const std::string& dir, const std::string& file) {
    std::filesystem::create_directories(dir);
    return (std::filesystem::path(dir) / file).string();
}

ordered_json curve_points_json(const gdn::ErrorCurve& c) {
    ordered_json arr = ordered_json::array();
    for (int i = 0; i < c.point_count(); ++i) {
        const auto u = static_cast<std::size_t>(i);
        arr.push_back({{"param", c.params[u]},
                       {"mean_error", c.mean_error[u]},
                       {"std_error", c.std_error[u]}});
    }
    return arr;
}

struct MartingaleArgs {
    int T = -1;
    std::string graph_path;
    std::string sizes_text = "64,128,256,512,1024,2048";
    std::string profile = "sin";
    std::string signal_path;
    double epsilon = 0.2;
    int trials = 200;
    std::uint64_t seed = 42;
    int threads = 1;
    std::string out;
};

int run_martingale(const MartingaleArgs& a) {
    if ((a.T >= 0) == !a.graph_path.empty())
        throw gdn::Error(gdn::errc::invalid_argument, "give exactly one of --T or --graph");
    gdn::Filtration filt;
    ordered_json source;
    if (a.T >= 0) {
        filt = gdn::dyadic_filtration(a.T);
        source = {{"kind", "dyadic"}, {"T", a.T}};
    } else {
        const gdn::Graph g = load_graph(a.graph_path);
        const auto sizes = parse_sizes(a.sizes_text);
        filt = gdn::multilevel_filtration(g, sizes);
        source = {{"kind", "graph"}, {"graph", a.graph_path}, {"sizes", sizes}};
    }
    const gdn::Signal f = profile_signal(a.profile, filt.node_count, a.signal_path);
    const gdn::NoiseSpec spec{a.epsilon, a.seed, a.trials};
    const gdn::ErrorCurve curve = gdn::mc_martingale_curve(f, filt, spec, a.threads);
    const gdn::CurveVerdict verdict = gdn::curve_verdict(curve);

    std::vector<int> level_sizes;
    for (const auto& level : filt.levels) level_sizes.push_back(level.cluster_count());

    ordered_json result;
    result["config"] = {{"source", source},       {"profile", a.profile},
                        {"epsilon", a.epsilon},   {"trials", a.trials},
                        {"seed", a.seed},         {"threads", a.threads}};
    result["level_cluster_counts"] = level_sizes;
    result["norm_scale"] = curve.norm_scale;
    result["verdict"] = gdn::verdict_to_json(verdict);
    result["curve"] = curve_points_json(curve);

    gdn::write_text_file(out_path(a.out, "curve.csv"), gdn::curve_to_csv(curve));
    gdn::write_text_file(out_path(a.out, "verdict.json"), result.dump(2) + "\n");
    std::cout << "martingale curve: argmin level " << verdict.argmin_index
              << (verdict.interior ? " (interior)" : " (boundary)") << "\n";
    return exit_ok;
}

struct KernelArgs {
    std::string graph_path;
    std::string profile = "sin";
    std::string signal_path;
    std::string grid = "auto";
    int grid_points = 50;
    std::string distance = "hop";
    double epsilon = 0.2;
    int trials = 200;
    std::uint64_t seed = 42;
    int threads = 1;
    std::string out;
};

int run_kernel(const KernelArgs& a) {
    const gdn::Graph g = load_graph(a.graph_path);
    const auto mode = [&] {
        if (a.distance == "hop") return gdn::DistanceMode::hop;
        if (a.distance == "weighted") return gdn::DistanceMode::weighted;
        throw gdn::Error(gdn::errc::invalid_argument, "distance must be hop or weighted");
    }();
    const auto d = gdn::all_pairs_distances(g, mode, a.threads);
    const auto grid = parse_grid(a.grid, d, a.grid_points);
    const gdn::Signal f = profile_signal(a.profile, g.node_count(), a.signal_path);

    const gdn::NoiseSpec spec{a.epsilon, a.seed, a.trials};
    const gdn::ErrorCurve mc = gdn::mc_kernel_curve(f, d, grid, spec, a.threads);
    const gdn::CurveVerdict verdict = gdn::curve_verdict(mc);

    // closed-form counterpart (exact expectation) plus per-point z-scores
    gdn::ErrorCurve exact;
    exact.trials = 0;
    exact.params = grid;
    double max_abs_z = 0.0;
    ordered_json comparison = ordered_json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double closed =
            gdn::expected_error_sq(f, gdn::kernel_matrix(d, grid[i]), a.epsilon);
        exact.mean_error.push_back(closed);
        exact.std_error.push_back(0.0);
        const double se = mc.std_error[i];
        const double z = se > 0.0 ? (mc.mean_error[i] - closed) / se : 0.0;
        max_abs_z = std::max(max_abs_z, std::abs(z));
        comparison.push_back({{"alpha", grid[i]},
                              {"mc_mean", mc.mean_error[i]},
                              {"mc_std_error", se},
                              {"closed_form", closed},
                              {"z_score", z}});
    }

    ordered_json result;
    result["config"] = {{"graph", a.graph_path}, {"profile", a.profile},
                        {"distance", a.distance}, {"grid", a.grid},
                        {"grid_points", static_cast<int>(grid.size())},
                        {"epsilon", a.epsilon},   {"trials", a.trials},
                        {"seed", a.seed},         {"threads", a.threads}};
    result["verdict"] = gdn::verdict_to_json(verdict);
    result["max_abs_z"] = max_abs_z;
    result["comparison"] = comparison;

    gdn::write_text_file(out_path(a.out, "mc_curve.csv"), gdn::curve_to_csv(mc));
    gdn::write_text_file(out_path(a.out, "exact_curve.csv"), gdn::curve_to_csv(exact));
    gdn::write_text_file(out_path(a.out, "comparison.json"), result.dump(2) + "\n");
    std::cout << "kernel curve: argmin alpha index " << verdict.argmin_index << ", max |z| "
              << max_abs_z << "\n";
    return exit_ok;
}

struct Lemma2Args {
    int T = -1;
    std::string graph_path;
    std::string sizes_text = "64,128,256,512,1024,2048";
    double epsilon = 0.5;
    int trials = 10000;
    std::uint64_t seed = 42;
    int threads = 1;
    std::string out;
};

int run_lemma2(const Lemma2Args& a) {
    if ((a.T >= 0) == !a.graph_path.empty())
        throw gdn::Error(gdn::errc::invalid_argument, "give exactly one of --T or --graph");
    gdn::Filtration filt;
    ordered_json source;
    if (a.T >= 0) {
        filt = gdn::dyadic_filtration(a.T);
        source = {{"kind", "dyadic"}, {"T", a.T}};
    } else {
        const gdn::Graph g = load_graph(a.graph_path);
        const auto sizes = parse_sizes(a.sizes_text);
        filt = gdn::multilevel_filtration(g, sizes);
        source = {{"kind", "graph"}, {"graph", a.graph_path}, {"sizes", sizes}};
    }
    const gdn::NoiseSpec spec{a.epsilon, a.seed, a.trials};
    const auto rows = gdn::lemma2_check(filt, spec, a.threads);

    double max_abs_z = 0.0;
    for (const auto& r : rows) max_abs_z = std::max(max_abs_z, std::abs(r.z_score));

    ordered_json result;
    result["config"] = {{"source", source}, {"epsilon", a.epsilon},
                        {"trials", a.trials}, {"seed", a.seed}, {"threads", a.threads}};
    result["max_abs_z"] = max_abs_z;
    result["table"] = gdn::lemma2_to_json(rows);
    gdn::write_text_file(out_path(a.out, "lemma2.json"), result.dump(2) + "\n");
    std::cout << "lemma2 table: " << rows.size() << " levels, max |z| " << max_abs_z << "\n";
    return exit_ok;
}

struct EvaluateArgs {
    std::string graph_path;
    std::string features_path;
    std::string labels_path;
    std::string sizes_text = "64,128,256,512,1024,2048";
    std::string mode = "ppi";
    int folds = 5;
    int repeats = 20;
    double sigma = 0.0;
    double reg_strength = 0.01;
    int epochs = 200;
    std::uint64_t seed = 42;
    std::string out;
};

int run_evaluate(const EvaluateArgs& a) {
    const gdn::Graph g = load_graph(a.graph_path);
    std::istringstream features(gdn::read_text_file(a.features_path));
    std::istringstream labels(gdn::read_text_file(a.labels_path));
    const gdn::Dataset d = gdn::load_dataset(features, labels);

    gdn::CvOptions opts;
    opts.cluster_sizes = parse_sizes(a.sizes_text);
    opts.folds = a.folds;
    opts.repeats = a.repeats;
    opts.sigma = a.sigma;
    opts.mode = gdn::cv_mode_from_name(a.mode);
    opts.seed = a.seed;
    opts.reg_strength = a.reg_strength;
    opts.epochs = a.epochs;
    const gdn::CVReport report = gdn::cross_validate(d, g, opts);

    ordered_json result;
    result["config"] = {{"graph", a.graph_path},   {"features", a.features_path},
                        {"labels", a.labels_path}, {"sizes", opts.cluster_sizes},
                        {"mode", a.mode},          {"folds", a.folds},
                        {"repeats", a.repeats},    {"sigma", a.sigma},
                        {"reg_strength", a.reg_strength}, {"epochs", a.epochs},
                        {"seed", a.seed}};
    result["report"] = gdn::cv_report_to_json(report);
    gdn::write_text_file(out_path(a.out, "report.json"), result.dump(2) + "\n");
    gdn::write_text_file(out_path(a.out, "table.csv"), gdn::cv_report_to_table_csv(report));
    std::cout << gdn::cv_report_to_table_csv(report);
    return exit_ok;
}

struct SynthArgs {
    std::string graph_path;
    std::string sizes_text = "64,128,256,512,1024,2048";
    int planted_level = 1;
    double effect = 0.5;
    double noise = 2.0;
    int samples = 120;
    std::uint64_t seed = 42;
    std::string out;
};

int run_synth(const SynthArgs& a) {
    const gdn::Graph g = load_graph(a.graph_path);
    const auto sizes = parse_sizes(a.sizes_text);
    const gdn::Filtration filt = gdn::multilevel_filtration(g, sizes);
    const gdn::Dataset d =
        gdn::synthetic_dataset(g, filt, a.planted_level, a.effect, a.noise, a.samples, a.seed);

    ordered_json result;
    result["config"] = {{"graph", a.graph_path}, {"sizes", sizes},
                        {"planted_level", a.planted_level},
                        {"planted_clusters", filt.level(a.planted_level).cluster_count()},
                        {"effect", a.effect},     {"noise", a.noise},
                        {"samples", a.samples},   {"seed", a.seed}};
    gdn::write_text_file(out_path(a.out, "features.csv"), gdn::dataset_features_csv(d));
    gdn::write_text_file(out_path(a.out, "labels.csv"), gdn::dataset_labels_csv(d));
    gdn::write_text_file(out_path(a.out, "synth.json"), result.dump(2) + "\n");
    std::cout << "wrote " << a.samples << " samples over " << g.node_count() << " nodes\n";
    return exit_ok;
}

struct ClusterArgs {
    std::string graph_path;
    std::string sizes_text = "64,128,256,512,1024,2048";
    std::string out;
};

int run_cluster(const ClusterArgs& a) {
    const gdn::Graph g = load_graph(a.graph_path);
    const auto sizes = parse_sizes(a.sizes_text);
    const gdn::Filtration filt = gdn::multilevel_filtration(g, sizes);
    std::filesystem::create_directories(a.out);
    ordered_json manifest = gdn::save_filtration_levels(filt, g.nodes(), a.out);
    manifest["config"] = {{"graph", a.graph_path}, {"sizes", sizes}};
    gdn::write_text_file(out_path(a.out, "manifest.json"), manifest.dump(2) + "\n");
    std::cout << "wrote " << filt.level_count() << " levels\n";
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph signal denoising experiments"};
    app.require_subcommand(1);

    ClusterArgs cl;
    auto* cluster = app.add_subcommand("cluster", "Nested graph clustering to partition files");
    cluster->add_option("--graph", cl.graph_path, "edge list file")->required();
    cluster->add_option("--sizes", cl.sizes_text, "ascending cluster counts");
    cluster->add_option("--out,-o", cl.out, "output directory")->required();

    MartingaleArgs ma;
    auto* mart = app.add_subcommand("simulate-martingale",
                                    "Monte Carlo error curve for cluster averaging");
    mart->add_option("--T", ma.T, "dyadic harness depth (nodes = 2^T)");
    mart->add_option("--graph", ma.graph_path, "edge list file");
    mart->add_option("--sizes", ma.sizes_text, "cluster counts (graph mode)");
    mart->add_option("--profile", ma.profile, "sin|step|constant|from-file");
    mart->add_option("--signal", ma.signal_path, "signal file for profile from-file");
    mart->add_option("--epsilon", ma.epsilon, "noise amplitude");
    mart->add_option("--trials", ma.trials, "Monte Carlo trials");
    mart->add_option("--seed", ma.seed, "master seed");
    mart->add_option("--threads", ma.threads, "worker threads");
    mart->add_option("--out,-o", ma.out, "output directory")->required();

    KernelArgs ka;
    auto* kern = app.add_subcommand("simulate-kernel",
                                    "Monte Carlo vs closed-form kernel regression error");
    kern->add_option("--graph", ka.graph_path, "edge list file")->required();
    kern->add_option("--profile", ka.profile, "sin|step|constant|from-file");
    kern->add_option("--signal", ka.signal_path, "signal file for profile from-file");
    kern->add_option("--grid", ka.grid, "'auto' or min:max:points (log spaced)");
    kern->add_option("--grid-points", ka.grid_points, "points for the auto grid");
    kern->add_option("--distance", ka.distance, "hop|weighted");
    kern->add_option("--epsilon", ka.epsilon, "noise amplitude");
    kern->add_option("--trials", ka.trials, "Monte Carlo trials");
    kern->add_option("--seed", ka.seed, "master seed");
    kern->add_option("--threads", ka.threads, "worker threads");
    kern->add_option("--out,-o", ka.out, "output directory")->required();

    Lemma2Args la;
    auto* lem = app.add_subcommand("lemma2", "Averaged-noise statistics vs the chi-norm law");
    lem->add_option("--T", la.T, "dyadic harness depth");
    lem->add_option("--graph", la.graph_path, "edge list file");
    lem->add_option("--sizes", la.sizes_text, "cluster counts (graph mode)");
    lem->add_option("--epsilon", la.epsilon, "noise amplitude (must be > 0)");
    lem->add_option("--trials", la.trials, "Monte Carlo trials");
    lem->add_option("--seed", la.seed, "master seed");
    lem->add_option("--threads", la.threads, "worker threads");
    lem->add_option("--out,-o", la.out, "output directory")->required();

    EvaluateArgs ea;
    auto* ev = app.add_subcommand("evaluate", "Cross-validated cluster-feature classification");
    ev->add_option("--graph", ea.graph_path, "edge list file")->required();
    ev->add_option("--features", ea.features_path, "features CSV")->required();
    ev->add_option("--labels", ea.labels_path, "labels CSV")->required();
    ev->add_option("--sizes", ea.sizes_text, "cluster counts to sweep");
    ev->add_option("--mode", ea.mode, "ppi|ppi_expr|random|all_genes");
    ev->add_option("--folds", ea.folds, "cross-validation folds");
    ev->add_option("--repeats", ea.repeats, "fold-assignment repeats");
    ev->add_option("--sigma", ea.sigma, "co-expression bandwidth (<=0: median heuristic)");
    ev->add_option("--reg", ea.reg_strength, "hinge-loss L2 strength");
    ev->add_option("--epochs", ea.epochs, "SGD epochs");
    ev->add_option("--seed", ea.seed, "master seed");
    ev->add_option("--out,-o", ea.out, "output directory")->required();

    SynthArgs sa;
    auto* sy = app.add_subcommand("synth", "Planted-signal synthetic dataset");
    sy->add_option("--graph", sa.graph_path, "edge list file")->required();
    sy->add_option("--sizes", sa.sizes_text, "cluster counts for the planting filtration");
    sy->add_option("--planted-level", sa.planted_level, "filtration level carrying the signal");
    sy->add_option("--effect", sa.effect, "class-mean separation on planted clusters");
    sy->add_option("--noise", sa.noise, "per-node noise standard deviation");
    sy->add_option("--samples", sa.samples, "sample count (balanced classes)");
    sy->add_option("--seed", sa.seed, "master seed");
    sy->add_option("--out,-o", sa.out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    try {
        if (app.got_subcommand(cluster)) return run_cluster(cl);
        if (app.got_subcommand(mart)) return run_martingale(ma);
        if (app.got_subcommand(kern)) return run_kernel(ka);
        if (app.got_subcommand(lem)) return run_lemma2(la);
        if (app.got_subcommand(ev)) return run_evaluate(ea);
        if (app.got_subcommand(sy)) return run_synth(sa);
    } catch (const gdn::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == gdn::errc::io_error ? exit_io : exit_config;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: IoError: " << e.what() << "\n";
        return exit_io;
    } catch (const std::exception& e) {
        std::cerr << "error: Unexpected: " << e.what() << "\n";
        return exit_config;
    }
    return exit_config;
}
