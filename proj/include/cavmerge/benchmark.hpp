#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cavmerge/parallel.hpp"
#include "cavmerge/pipeline.hpp"

namespace cavmerge {

// One suite entry: a data source (CSV file or a seeded generator, resampled
// each trial) plus the pipeline settings to run against it.
struct BenchSpec {
    enum class Source { Csv, Blobs, Bullseye, Moons };

    std::string name;
    Source source = Source::Csv;
    std::string csv_path;
    std::optional<std::string> label_col;
    // generator parameters
    int n_per = 100;
    int n_blobs = 7;
    double sigma = 1.0;
    double spacing = 0.0;  // 0 = 10 * sigma
    int n_inner = 1000;
    int n_ring = 2000;
    double r_inner = 1.0;
    double r_low = 2.5;
    double r_high = 3.5;
    double noise = 0.05;
    // pipeline settings
    PipelineConfig pipe;
};

struct BenchRow {
    std::string name;
    int trials = 0;
    int failures = 0;
    double mean_ari = 0.0;
    double se_ari = 0.0;
    double mean_seconds = 0.0;
};

// Centers evenly spaced on a circle whose chord between neighbors equals the
// requested spacing; a single blob sits at the origin.
inline std::vector<std::vector<double>> blob_circle_centers(int n_blobs,
                                                            double spacing) {
    if (n_blobs < 1) throw std::invalid_argument("blob_circle_centers: need >= 1 blob");
    std::vector<std::vector<double>> centers;
    if (n_blobs == 1) {
        centers.push_back({0.0, 0.0});
        return centers;
    }
    const double radius = spacing / (2.0 * std::sin(std::numbers::pi / n_blobs));
    for (int i = 0; i < n_blobs; ++i) {
        const double angle = 2.0 * std::numbers::pi * i / n_blobs;
        centers.push_back({radius * std::cos(angle), radius * std::sin(angle)});
    }
    return centers;
}

inline LabeledDataset materialize(const BenchSpec& spec, std::uint64_t data_seed) {
    switch (spec.source) {
        case BenchSpec::Source::Csv:
            return load_csv(spec.csv_path, spec.label_col);
        case BenchSpec::Source::Blobs: {
            const double spacing = spec.spacing > 0.0 ? spec.spacing : 10.0 * spec.sigma;
            auto ds = gen_gaussian_blobs(spec.n_per,
                                         blob_circle_centers(spec.n_blobs, spacing),
                                         spec.sigma, data_seed);
            ds.name = spec.name;
            return ds;
        }
        case BenchSpec::Source::Bullseye: {
            auto ds = gen_bullseye(spec.n_inner, spec.n_ring, spec.r_inner, spec.r_low,
                                   spec.r_high, data_seed);
            ds.name = spec.name;
            return ds;
        }
        case BenchSpec::Source::Moons: {
            auto ds = gen_two_moons(spec.n_per, spec.noise, data_seed);
            ds.name = spec.name;
            return ds;
        }
    }
    throw std::invalid_argument("materialize: unknown source");
}

namespace detail {

inline double parse_suite_double(const std::string& value, const std::string& key,
                                 std::size_t line_no) {
    double out;
    if (!parse_double(value, out))
        throw DataError("suite line " + std::to_string(line_no) + ": bad number for " +
                        key + ": '" + value + "'");
    return out;
}

inline int parse_suite_int(const std::string& value, const std::string& key,
                           std::size_t line_no) {
    const double d = parse_suite_double(value, key, line_no);
    const int i = static_cast<int>(d);
    if (static_cast<double>(i) != d)
        throw DataError("suite line " + std::to_string(line_no) + ": " + key +
                        " must be an integer");
    return i;
}

}  // namespace detail

// Suite file format: one dataset per line, '#' starts a comment, fields are
// whitespace-separated key=value tokens. Required: name=, input= (either
// csv:PATH or gen:blobs|bullseye|moons) and exactly one of clusters= /
// threshold=. Optional: label_col=, k=, k_max=, n_starts=, standardize=0|1
// and the generator parameters (n_per=, n_blobs=, sigma=, spacing=, n_inner=,
// n_ring=, r_inner=, r_low=, r_high=, noise=).
inline std::vector<BenchSpec> parse_suite(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open suite file: " + path);
    std::vector<BenchSpec> specs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream tokens(line);
        std::string token;
        std::map<std::string, std::string> kv;
        while (tokens >> token) {
            const auto eq = token.find('=');
            if (eq == std::string::npos || eq == 0)
                throw DataError("suite line " + std::to_string(line_no) +
                                ": expected key=value, got '" + token + "'");
            kv[token.substr(0, eq)] = token.substr(eq + 1);
        }
        if (kv.empty()) continue;

        BenchSpec spec;
        bool have_cut = false;
        for (const auto& [key, value] : kv) {
            if (key == "name") {
                spec.name = value;
            } else if (key == "input") {
                if (value.rfind("csv:", 0) == 0) {
                    spec.source = BenchSpec::Source::Csv;
                    spec.csv_path = value.substr(4);
                } else if (value == "gen:blobs") {
                    spec.source = BenchSpec::Source::Blobs;
                } else if (value == "gen:bullseye") {
                    spec.source = BenchSpec::Source::Bullseye;
                } else if (value == "gen:moons") {
                    spec.source = BenchSpec::Source::Moons;
                } else {
                    throw DataError("suite line " + std::to_string(line_no) +
                                    ": unknown input '" + value + "'");
                }
            } else if (key == "label_col") {
                spec.label_col = value;
            } else if (key == "clusters") {
                spec.pipe.target_clusters = detail::parse_suite_int(value, key, line_no);
                have_cut = true;
            } else if (key == "threshold") {
                spec.pipe.score_threshold =
                    detail::parse_suite_double(value, key, line_no);
                have_cut = true;
            } else if (key == "k") {
                spec.pipe.force_k = detail::parse_suite_int(value, key, line_no);
            } else if (key == "k_max") {
                spec.pipe.k_max = detail::parse_suite_int(value, key, line_no);
            } else if (key == "n_starts") {
                spec.pipe.n_starts = detail::parse_suite_int(value, key, line_no);
            } else if (key == "standardize") {
                spec.pipe.standardize = detail::parse_suite_int(value, key, line_no) != 0;
            } else if (key == "n_per") {
                spec.n_per = detail::parse_suite_int(value, key, line_no);
            } else if (key == "n_blobs") {
                spec.n_blobs = detail::parse_suite_int(value, key, line_no);
            } else if (key == "sigma") {
                spec.sigma = detail::parse_suite_double(value, key, line_no);
            } else if (key == "spacing") {
                spec.spacing = detail::parse_suite_double(value, key, line_no);
            } else if (key == "n_inner") {
                spec.n_inner = detail::parse_suite_int(value, key, line_no);
            } else if (key == "n_ring") {
                spec.n_ring = detail::parse_suite_int(value, key, line_no);
            } else if (key == "r_inner") {
                spec.r_inner = detail::parse_suite_double(value, key, line_no);
            } else if (key == "r_low") {
                spec.r_low = detail::parse_suite_double(value, key, line_no);
            } else if (key == "r_high") {
                spec.r_high = detail::parse_suite_double(value, key, line_no);
            } else if (key == "noise") {
                spec.noise = detail::parse_suite_double(value, key, line_no);
            } else {
                throw DataError("suite line " + std::to_string(line_no) +
                                ": unknown key '" + key + "'");
            }
        }
        if (spec.name.empty())
            throw DataError("suite line " + std::to_string(line_no) + ": missing name=");
        if (spec.source == BenchSpec::Source::Csv && spec.csv_path.empty())
            throw DataError("suite line " + std::to_string(line_no) + ": missing input=");
        if (!have_cut)
            throw DataError("suite line " + std::to_string(line_no) +
                            ": need clusters= or threshold=");
        specs.push_back(std::move(spec));
    }
    if (specs.empty()) throw DataError(path + ": no datasets in suite");
    return specs;
}

// Runs each spec n_trials times with seeds derived from (base_seed, spec
// index, trial index); trials that throw are counted as failures and excluded
// from the aggregates. Trials may run in parallel; aggregation is
// order-independent, so the ARI columns reproduce exactly on reruns.
inline std::vector<BenchRow> run_benchmark(const std::vector<BenchSpec>& specs,
                                           int n_trials, std::uint64_t base_seed,
                                           int threads = 1) {
    if (specs.empty()) throw std::invalid_argument("run_benchmark: empty suite");
    if (n_trials < 1) throw std::invalid_argument("run_benchmark: n_trials must be >= 1");

    struct TrialOutcome {
        bool ok = false;
        double ari = 0.0;
        double seconds = 0.0;
    };
    const std::size_t total = specs.size() * static_cast<std::size_t>(n_trials);
    std::vector<TrialOutcome> outcomes(total);
    // CSV sources load once up front; a broken file fails all of its trials.
    // Generator sources resample per trial.
    std::vector<std::optional<LabeledDataset>> cached(specs.size());
    std::vector<char> load_failed(specs.size(), 0);
    for (std::size_t s = 0; s < specs.size(); ++s)
        if (specs[s].source == BenchSpec::Source::Csv) {
            try {
                cached[s] = load_csv(specs[s].csv_path, specs[s].label_col);
            } catch (const std::exception&) {
                load_failed[s] = 1;
            }
        }

    parallel_for(total, threads, [&](std::size_t idx) {
        const std::size_t s = idx / static_cast<std::size_t>(n_trials);
        const std::size_t t = idx % static_cast<std::size_t>(n_trials);
        if (load_failed[s]) return;
        const std::uint64_t trial_seed = sub_seed(sub_seed(base_seed, s), t);
        try {
            PipelineConfig config = specs[s].pipe;
            config.seed = trial_seed;
            config.threads = 1;
            const LabeledDataset dataset =
                cached[s] ? *cached[s] : materialize(specs[s], sub_seed(trial_seed, 0));
            const PipelineResult result = run_pipeline(dataset, config);
            outcomes[idx] = {true, result.ari, result.wall_seconds};
        } catch (const std::exception&) {
            outcomes[idx] = {false, 0.0, 0.0};
        }
    });

    std::vector<BenchRow> rows;
    for (std::size_t s = 0; s < specs.size(); ++s) {
        BenchRow row;
        row.name = specs[s].name;
        row.trials = n_trials;
        std::vector<double> aris, times;
        for (int t = 0; t < n_trials; ++t) {
            const auto& o = outcomes[s * static_cast<std::size_t>(n_trials) +
                                     static_cast<std::size_t>(t)];
            if (o.ok) {
                aris.push_back(o.ari);
                times.push_back(o.seconds);
            } else {
                ++row.failures;
            }
        }
        if (!aris.empty()) {
            const auto stats = mean_and_stderr(aris);
            row.mean_ari = stats.mean;
            row.se_ari = stats.std_error;
            row.mean_seconds = mean_and_stderr(times).mean;
        } else {
            row.mean_ari = std::numeric_limits<double>::quiet_NaN();
            row.se_ari = std::numeric_limits<double>::quiet_NaN();
            row.mean_seconds = std::numeric_limits<double>::quiet_NaN();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::string benchmark_to_csv(const std::vector<BenchRow>& rows) {
    std::string out = "dataset,trials,failures,mean_ari,se_ari,mean_time_s\n";
    char buf[200];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof(buf), "%s,%d,%d,%.6f,%.6f,%.4f\n", row.name.c_str(),
                      row.trials, row.failures, row.mean_ari, row.se_ari,
                      row.mean_seconds);
        out += buf;
    }
    return out;
}

}  // namespace cavmerge
