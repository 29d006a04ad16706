#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "heatclust/csv.hpp"
#include "heatclust/datasets.hpp"
#include "heatclust/errors.hpp"
#include "heatclust/report.hpp"
#include "heatclust/spectral.hpp"
#include "heatclust/svg.hpp"

namespace heatclust {

namespace cli {

struct GenOptions {
    std::string family;
    Index n = 500;
    double sigma = 0.05;
    std::uint64_t seed = 0;
    std::string out;
    std::string labels_out;
};

inline void run_gen(const GenOptions& options) {
    const LabeledPointCloud data = generate_dataset(options.family, options.n, options.sigma,
                                                    options.seed);
    write_point_cloud_csv(data.cloud, options.out);
    if (!options.labels_out.empty()) write_labels_csv(data.truth_labels, options.labels_out);
}

struct ClusterOptions {
    std::string input;
    std::string kernel = "row-ball";
    std::string bandwidth = "auto";
    Index grid = 30;
    Index subsamples = 10;
    double fraction = 0.8;
    double t = 1.0;
    double tol = 1e-6;
    std::uint64_t seed = 0;
    std::string out_labels;
    std::string out_report;
    std::string out_curve;
    std::string out_phi;
    bool header = false;
    bool strict = false;
    unsigned threads = 1;
};

inline ClusterConfig parse_cluster_config(const ClusterOptions& options) {
    ClusterConfig config;
    if (options.kernel == "row-ball")
        config.family = KernelFamily::row_normalized_ball;
    else if (options.kernel == "lebesgue-ball")
        config.family = KernelFamily::lebesgue_ball;
    else
        throw std::invalid_argument("unknown kernel '" + options.kernel +
                                    "' (expected row-ball or lebesgue-ball)");

    if (options.bandwidth == "auto") {
        config.mode = BandwidthMode::elbow;
    } else if (options.bandwidth == "max") {
        config.mode = BandwidthMode::max;
    } else {
        config.mode = BandwidthMode::fixed;
        try {
            std::size_t consumed = 0;
            config.fixed_r = std::stod(options.bandwidth, &consumed);
            if (consumed != options.bandwidth.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw std::invalid_argument("bandwidth must be 'auto', 'max', or a positive number");
        }
        if (!(config.fixed_r > 0.0))
            throw std::invalid_argument("fixed bandwidth must be positive");
    }
    config.grid_size = options.grid;
    config.subsamples = options.subsamples;
    config.fraction = options.fraction;
    config.t = options.t;
    config.tol = options.tol;
    config.seed = options.seed;
    config.threads = options.threads;
    return config;
}

inline nlohmann::ordered_json echo_config(const ClusterOptions& options) {
    nlohmann::ordered_json j;
    j["input"] = options.input;
    j["kernel"] = options.kernel;
    j["bandwidth"] = options.bandwidth;
    j["grid"] = options.grid;
    j["subsamples"] = options.subsamples;
    j["fraction"] = options.fraction;
    j["t"] = options.t;
    j["tol"] = options.tol;
    j["seed"] = options.seed;
    j["threads"] = options.threads;
    j["header"] = options.header;
    j["strict"] = options.strict;
    return j;
}

// Exit code 0 on success, 2 when --strict promotes warnings.
inline int run_cluster(const ClusterOptions& options) {
    const auto started = std::chrono::steady_clock::now();
    const PointCloud cloud = read_point_cloud_csv(options.input, options.header);
    const ClusterConfig config = parse_cluster_config(options);
    const ClusterRun run = cluster_run(cloud, config);
    const double elapsed_ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - started)
                                  .count();

    if (!options.out_labels.empty()) write_labels_csv(run.result.labels, options.out_labels);
    if (!options.out_curve.empty() && !run.curve.values.empty())
        write_curve_csv(run.curve, options.out_curve);
    if (!options.out_phi.empty()) write_phi_csv(run.phi, options.out_phi);
    if (!options.out_report.empty()) {
        RunReport report = make_report(run, cloud.size(), echo_config(options));
        report.timings_ms["total"] = elapsed_ms;
        std::ofstream out = detail::open_output(options.out_report);
        out << to_json(report).dump(2) << '\n';
    }

    for (const std::string& warning : run.result.warnings)
        std::cerr << "warning: " << warning << '\n';
    return options.strict && !run.result.warnings.empty() ? 2 : 0;
}

struct PlotOptions {
    std::string mode;  // curve | phi | clusters
    std::string input;
    std::string labels;
    std::string report;
    double r_hat = -1.0;
    std::string out;
    double azimuth = 30.0;
    double elevation = 20.0;
    bool header = false;
};

inline void run_plot(const PlotOptions& options) {
    std::string svg;
    if (options.mode == "curve") {
        const CurveData curve = read_curve_csv(options.input);
        double r_hat = options.r_hat;
        if (!options.report.empty()) {
            std::ifstream in = detail::open_input(options.report);
            r_hat = nlohmann::json::parse(in).at("r_hat").get<double>();
        }
        svg = render_curve_svg(curve, r_hat);
    } else if (options.mode == "phi") {
        const PointCloud phi = read_point_cloud_csv(options.input, false);
        std::vector<int> labels;
        if (!options.labels.empty()) labels = read_labels_csv(options.labels);
        svg = render_scatter_svg(phi.coords, labels, "Image of the eliminated eigenmap",
                                 options.azimuth, options.elevation);
    } else if (options.mode == "clusters") {
        const PointCloud cloud = read_point_cloud_csv(options.input, options.header);
        const std::vector<int> labels = read_labels_csv(options.labels);
        svg = render_scatter_svg(cloud.coords, labels, "Clusters", options.azimuth,
                                 options.elevation);
    } else {
        throw std::invalid_argument("unknown plot mode '" + options.mode + "'");
    }
    std::ofstream out = detail::open_output(options.out);
    out << svg;
}

}  // namespace cli

// Full command-line front end; returns the process exit code.
// Exit codes: 0 success, 1 bad input or malformed CSV (message names the
// line), 2 warnings promoted by --strict, 3 numerical failure.
inline int cli_main(const std::vector<std::string>& args) {
    CLI::App app{"Topological clustering of point clouds via graph heat operators"};
    app.require_subcommand(1);

    cli::GenOptions gen;
    CLI::App* cmd_gen = app.add_subcommand("gen", "Generate a synthetic labeled dataset");
    cmd_gen->add_option("family", gen.family, "three-circles | blobs | two-circles")->required();
    cmd_gen->add_option("--n", gen.n, "number of points");
    cmd_gen->add_option("--sigma", gen.sigma, "coordinate noise standard deviation");
    cmd_gen->add_option("--seed", gen.seed, "root RNG seed")->required();
    cmd_gen->add_option("--out", gen.out, "points CSV path")->required();
    cmd_gen->add_option("--labels-out", gen.labels_out, "truth labels CSV path");

    cli::ClusterOptions cluster;
    CLI::App* cmd_cluster = app.add_subcommand("cluster", "Cluster a point-cloud CSV");
    cmd_cluster->add_option("--input", cluster.input, "points CSV")->required();
    cmd_cluster->add_option("--kernel", cluster.kernel, "row-ball | lebesgue-ball");
    cmd_cluster->add_option("--bandwidth", cluster.bandwidth, "auto | max | <float>");
    cmd_cluster->add_option("--grid", cluster.grid, "radius grid size R");
    cmd_cluster->add_option("--subsamples", cluster.subsamples, "cross-validation subsample count N");
    cmd_cluster->add_option("--fraction", cluster.fraction, "subsample fraction in (0,1)");
    cmd_cluster->add_option("--t", cluster.t, "diffusion time");
    cmd_cluster->add_option("--tol", cluster.tol, "unit-eigenvalue tolerance");
    cmd_cluster->add_option("--seed", cluster.seed, "root RNG seed")->required();
    cmd_cluster->add_option("--out-labels", cluster.out_labels, "labels CSV path");
    cmd_cluster->add_option("--out-report", cluster.out_report, "report JSON path");
    cmd_cluster->add_option("--out-curve", cluster.out_curve, "variance curve CSV path");
    cmd_cluster->add_option("--out-phi", cluster.out_phi, "eliminated eigenmap CSV path");
    cmd_cluster->add_flag("--header", cluster.header, "input CSV has a header row");
    cmd_cluster->add_flag("--strict", cluster.strict, "exit 2 on degenerate-input warnings");
    cmd_cluster->add_option("--threads", cluster.threads, "worker threads for the variance curve");

    cli::PlotOptions plot;
    CLI::App* cmd_plot = app.add_subcommand("plot", "Render a static SVG figure");
    CLI::App* plot_curve = cmd_plot->add_subcommand("curve", "variance curve with the selected bandwidth");
    plot_curve->add_option("--input", plot.input, "curve CSV")->required();
    plot_curve->add_option("--report", plot.report, "report JSON supplying r_hat");
    plot_curve->add_option("--rhat", plot.r_hat, "selected bandwidth to mark");
    plot_curve->add_option("--out", plot.out, "output SVG")->required();
    CLI::App* plot_phi = cmd_plot->add_subcommand("phi", "scatter of the eliminated eigenmap image");
    plot_phi->add_option("--input", plot.input, "phi CSV")->required();
    plot_phi->add_option("--labels", plot.labels, "labels CSV for coloring");
    plot_phi->add_option("--out", plot.out, "output SVG")->required();
    plot_phi->add_option("--azimuth", plot.azimuth, "projection azimuth, degrees");
    plot_phi->add_option("--elevation", plot.elevation, "projection elevation, degrees");
    CLI::App* plot_clusters = cmd_plot->add_subcommand("clusters", "projected cluster scatter");
    plot_clusters->add_option("--input", plot.input, "points CSV")->required();
    plot_clusters->add_option("--labels", plot.labels, "labels CSV")->required();
    plot_clusters->add_option("--out", plot.out, "output SVG")->required();
    plot_clusters->add_option("--azimuth", plot.azimuth, "projection azimuth, degrees");
    plot_clusters->add_option("--elevation", plot.elevation, "projection elevation, degrees");
    plot_clusters->add_flag("--header", plot.header, "input CSV has a header row");
    cmd_plot->require_subcommand(1);

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("heatclust");
    for (const std::string& arg : args) argv.push_back(arg.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (cmd_gen->parsed()) {
            cli::run_gen(gen);
            return 0;
        }
        if (cmd_cluster->parsed()) return cli::run_cluster(cluster);
        for (CLI::App* sub : {plot_curve, plot_phi, plot_clusters})
            if (sub->parsed()) {
                plot.mode = sub->get_name();
                cli::run_plot(plot);
                return 0;
            }
    } catch (const CsvError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace heatclust
