// cavmerge: fit and merge K-means clusterings, generate benchmark data, and
// run benchmark suites. Exit codes: 0 success, 1 usage error, 2 data error,
// 3 internal error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cavmerge/cavmerge.hpp"

namespace {

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw cavmerge::DataError("cannot write file: " + path);
    out << content;
    if (!out) throw cavmerge::DataError("write failed: " + path);
}

std::string labels_to_text(const std::vector<int>& labels) {
    std::string out;
    for (int id : labels) {
        out += std::to_string(id);
        out += '\n';
    }
    return out;
}

struct FitOptions {
    std::string input;
    std::string label_col;
    int k = 0;
    int k_max = 0;
    int n_starts = 25;
    int clusters = 0;
    double threshold = 0.0;
    std::uint64_t seed = 1;
    bool standardize = false;
    int threads = 0;
    std::string out_labels, out_scores, out_dendro, out_plot, out_summary;
    std::vector<int> plot_dims;
};

int run_fit(const FitOptions& opt) {
    using namespace cavmerge;
    const LabeledDataset dataset =
        load_csv(opt.input, opt.label_col.empty()
                                ? std::nullopt
                                : std::optional<std::string>(opt.label_col));

    PipelineConfig config;
    config.force_k = opt.k;
    config.k_max = opt.k_max;
    config.n_starts = opt.n_starts;
    config.seed = opt.seed;
    config.standardize = opt.standardize;
    config.threads = opt.threads;
    if (opt.clusters > 0) {
        config.target_clusters = opt.clusters;
    } else if (opt.threshold > 0.0) {
        config.score_threshold = opt.threshold;
    } else {
        // Default cut: the number of ground-truth classes in the input.
        config.target_clusters = dataset.true_labels.k;
    }

    const PipelineResult result = run_pipeline(dataset, config);

    if (!opt.out_labels.empty())
        write_text_file(opt.out_labels, labels_to_text(result.final.final_labels.labels));
    if (!opt.out_scores.empty())
        write_text_file(opt.out_scores, score_matrix_to_csv(result.scores));
    if (!opt.out_dendro.empty())
        write_text_file(opt.out_dendro, dendrogram_to_csv(result.dendrogram));
    if (!opt.out_plot.empty()) {
        if (dataset.data.cols() == 2 && opt.plot_dims.empty()) {
            plot_svg(dataset.data, result.final.final_labels.labels, opt.out_plot);
        } else {
            if (opt.plot_dims.size() != 2)
                throw std::invalid_argument(
                    "--plot needs 2D data; pass --plot-dims I,J to choose two "
                    "coordinates");
            const std::size_t n = dataset.data.rows();
            std::vector<double> coords;
            coords.reserve(n * 2);
            for (std::size_t i = 0; i < n; ++i)
                for (int dim : opt.plot_dims) {
                    if (dim < 0 || static_cast<std::size_t>(dim) >= dataset.data.cols())
                        throw std::invalid_argument("--plot-dims index out of range");
                    coords.push_back(dataset.data.at(i, static_cast<std::size_t>(dim)));
                }
            plot_svg(DataMatrix(n, 2, std::move(coords)),
                     result.final.final_labels.labels, opt.out_plot);
        }
    }
    if (!opt.out_summary.empty()) {
        nlohmann::json summary = {
            {"input", opt.input},
            {"n", dataset.data.rows()},
            {"p", dataset.data.cols()},
            {"seed", opt.seed},
            {"selected_k", result.selected_k},
            {"adjacency_pairs", result.adjacency.size()},
            {"final_clusters", result.final.n_final},
            {"wall_time_s", result.wall_seconds},
        };
        if (std::isfinite(result.ari)) summary["ari"] = result.ari;
        write_text_file(opt.out_summary, summary.dump(2) + "\n");
    }

    std::printf("input=%s\n", opt.input.c_str());
    std::printf("n=%zu\n", dataset.data.rows());
    std::printf("p=%zu\n", dataset.data.cols());
    std::printf("selected_k=%d\n", result.selected_k);
    std::printf("adjacency_pairs=%zu\n", result.adjacency.size());
    std::printf("final_clusters=%d\n", result.final.n_final);
    if (std::isfinite(result.ari)) std::printf("ari=%.6f\n", result.ari);
    std::printf("wall_time_s=%.3f\n", result.wall_seconds);
    return 0;
}

int run_bench(const std::string& suite_path, int trials, std::uint64_t seed,
              const std::string& out_path, int threads) {
    using namespace cavmerge;
    const auto specs = parse_suite(suite_path);
    const auto rows = run_benchmark(specs, trials, seed, threads);
    const std::string csv = benchmark_to_csv(rows);
    if (!out_path.empty()) write_text_file(out_path, csv);
    std::fputs(csv.c_str(), stdout);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Merge over-fitted K-means clusterings into non-convex clusters "
                 "using log-concavity scores"};
    app.require_subcommand(1);

    // fit
    FitOptions fit;
    auto* fit_cmd = app.add_subcommand("fit", "Run the full merging pipeline on a CSV");
    fit_cmd->add_option("input", fit.input, "Input CSV (label column defaults to last)")
        ->required();
    fit_cmd->add_option("--label-col", fit.label_col, "Label column name or 0-based index");
    auto* opt_k = fit_cmd->add_option("--k", fit.k, "Force the initial cluster count")
                      ->check(CLI::PositiveNumber);
    fit_cmd->add_option("--k-max", fit.k_max, "Cap for jump-statistic selection")
        ->check(CLI::PositiveNumber)
        ->excludes(opt_k);
    fit_cmd->add_option("--n-starts", fit.n_starts, "Random restarts per K (default 25)")
        ->check(CLI::PositiveNumber);
    auto* opt_clusters =
        fit_cmd->add_option("--clusters", fit.clusters, "Cut the tree at this count")
            ->check(CLI::PositiveNumber);
    fit_cmd->add_option("--threshold", fit.threshold,
                        "Merge all pairs with score above this value")
        ->check(CLI::PositiveNumber)
        ->excludes(opt_clusters);
    fit_cmd->add_option("--seed", fit.seed, "Random seed (default 1)");
    fit_cmd->add_flag("--standardize", fit.standardize, "z-score features first");
    fit_cmd->add_option("--threads", fit.threads, "Worker threads (default: all cores)");
    fit_cmd->add_option("--out-labels", fit.out_labels, "Write final labels, one per line");
    fit_cmd->add_option("--out-scores", fit.out_scores, "Write the score matrix CSV");
    fit_cmd->add_option("--out-dendro", fit.out_dendro, "Write the merge list CSV");
    fit_cmd->add_option("--plot", fit.out_plot, "Write a scatter plot SVG");
    fit_cmd->add_option("--plot-dims", fit.plot_dims,
                        "Two coordinate indices to plot for p > 2 data")
        ->delimiter(',')
        ->expected(2);
    fit_cmd->add_option("--summary", fit.out_summary, "Write a JSON run summary");

    // gen
    auto* gen_cmd = app.add_subcommand("gen", "Generate a labeled synthetic dataset");
    gen_cmd->require_subcommand(1);
    std::uint64_t gen_seed = 1;
    std::string gen_out;

    int blobs_n_per = 100, blobs_count = 7;
    double blobs_sigma = 1.0, blobs_spacing = 0.0;
    auto* blobs_cmd = gen_cmd->add_subcommand("blobs", "Gaussian blobs on a circle");
    blobs_cmd->add_option("--n-per", blobs_n_per, "Points per blob (default 100)");
    blobs_cmd->add_option("--n-blobs", blobs_count, "Number of blobs (default 7)");
    blobs_cmd->add_option("--sigma", blobs_sigma, "Blob standard deviation (default 1)");
    blobs_cmd->add_option("--spacing", blobs_spacing,
                          "Distance between neighboring centers (default 10*sigma)");

    int bull_inner = 1000, bull_ring = 2000;
    double bull_r_inner = 1.0, bull_r_low = 2.5, bull_r_high = 3.5;
    auto* bull_cmd = gen_cmd->add_subcommand("bullseye", "Uniform disk inside an annulus");
    bull_cmd->add_option("--n-inner", bull_inner, "Points in the disk (default 1000)");
    bull_cmd->add_option("--n-ring", bull_ring, "Points in the annulus (default 2000)");
    bull_cmd->add_option("--r-inner", bull_r_inner, "Disk radius (default 1)");
    bull_cmd->add_option("--r-low", bull_r_low, "Annulus inner radius (default 2.5)");
    bull_cmd->add_option("--r-high", bull_r_high, "Annulus outer radius (default 3.5)");

    int moons_n_per = 500;
    double moons_noise = 0.05;
    auto* moons_cmd = gen_cmd->add_subcommand("moons", "Two interleaved half circles");
    moons_cmd->add_option("--n-per", moons_n_per, "Points per moon (default 500)");
    moons_cmd->add_option("--noise", moons_noise, "Gaussian jitter (default 0.05)");

    for (auto* cmd : {blobs_cmd, bull_cmd, moons_cmd}) {
        cmd->add_option("--seed", gen_seed, "Random seed (default 1)");
        cmd->add_option("--out", gen_out, "Output CSV path")->required();
    }

    // bench
    std::string bench_suite, bench_out;
    int bench_trials = 10;
    std::uint64_t bench_seed = 1;
    int bench_threads = 0;
    auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark suite");
    bench_cmd->add_option("suite", bench_suite, "Suite config file")->required();
    bench_cmd->add_option("--trials", bench_trials, "Trials per dataset (default 10)")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--seed", bench_seed, "Base seed (default 1)");
    bench_cmd->add_option("--out", bench_out, "Write the results table CSV here");
    bench_cmd->add_option("--threads", bench_threads,
                          "Worker threads (default: all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*fit_cmd) return run_fit(fit);
        if (*gen_cmd) {
            cavmerge::LabeledDataset dataset = [&] {
                using namespace cavmerge;
                if (*blobs_cmd) {
                    const double spacing =
                        blobs_spacing > 0.0 ? blobs_spacing : 10.0 * blobs_sigma;
                    return gen_gaussian_blobs(
                        blobs_n_per, blob_circle_centers(blobs_count, spacing),
                        blobs_sigma, gen_seed);
                }
                if (*bull_cmd)
                    return gen_bullseye(bull_inner, bull_ring, bull_r_inner, bull_r_low,
                                        bull_r_high, gen_seed);
                return gen_two_moons(moons_n_per, moons_noise, gen_seed);
            }();
            cavmerge::save_csv(dataset, gen_out);
            std::printf("wrote=%s\n", gen_out.c_str());
            std::printf("n=%zu\n", dataset.data.rows());
            std::printf("p=%zu\n", dataset.data.cols());
            std::printf("classes=%d\n", dataset.true_labels.k);
            return 0;
        }
        if (*bench_cmd)
            return run_bench(bench_suite, bench_trials, bench_seed, bench_out,
                             bench_threads);
    } catch (const cavmerge::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}
