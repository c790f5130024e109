#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cavmerge/data.hpp"
#include "cavmerge/rng.hpp"

namespace cavmerge {

// A data matrix paired with its ground-truth labels, as used for ARI
// evaluation. Labels are densely numbered from 0 in order of first
// appearance.
struct LabeledDataset {
    DataMatrix data;
    Labeling true_labels;
    std::string name;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline bool parse_double(std::string_view token, double& out) {
    token = trim(token);
    if (token.empty()) return false;
    if (token.front() == '+') token.remove_prefix(1);
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string::size_type start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string::npos) {
            cells.emplace_back(trim(std::string_view(line).substr(start)));
            break;
        }
        cells.emplace_back(trim(std::string_view(line).substr(start, comma - start)));
        start = comma + 1;
    }
    return cells;
}

}  // namespace detail

// Parses a header-optional comma-separated file. The label column (by name,
// by 0-based index, or the last column when unspecified) becomes the ground
// truth via dense first-appearance encoding of its distinct values; all other
// columns must be finite numbers and form the data matrix. A first row whose
// feature cells do not all parse as numbers is treated as a header; a label
// column given by name requires one.
inline LabeledDataset load_csv(const std::string& path,
                               std::optional<std::string> label_column = {}) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);

    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (detail::trim(line).empty()) continue;
        rows.push_back(detail::split_csv_line(line));
    }
    if (rows.empty()) throw DataError(path + ": empty dataset");

    const std::size_t n_cols = rows[0].size();
    for (std::size_t r = 1; r < rows.size(); ++r)
        if (rows[r].size() != n_cols)
            throw DataError(path + ": row " + std::to_string(r + 1) + " has " +
                            std::to_string(rows[r].size()) + " columns, expected " +
                            std::to_string(n_cols));
    if (n_cols < 2)
        throw DataError(path + ": need at least one feature column plus a label column");

    // Resolve the label column; a name forces the first row to be a header.
    std::size_t label_idx = n_cols - 1;
    bool header = false;
    if (label_column) {
        long parsed_idx = -1;
        const std::string& spec = *label_column;
        bool is_index = !spec.empty() &&
                        spec.find_first_not_of("0123456789") == std::string::npos;
        if (is_index) {
            parsed_idx = std::stol(spec);
            if (parsed_idx < 0 || static_cast<std::size_t>(parsed_idx) >= n_cols)
                throw DataError(path + ": label column index " + spec +
                                " out of range (0.." + std::to_string(n_cols - 1) + ")");
            label_idx = static_cast<std::size_t>(parsed_idx);
        } else {
            bool found = false;
            for (std::size_t c = 0; c < n_cols; ++c)
                if (rows[0][c] == spec) {
                    label_idx = c;
                    found = true;
                    break;
                }
            if (!found)
                throw DataError(path + ": label column '" + spec +
                                "' not found in header row");
            header = true;
        }
    }
    if (!header) {
        for (std::size_t c = 0; c < n_cols; ++c) {
            if (c == label_idx) continue;
            double ignored;
            if (!detail::parse_double(rows[0][c], ignored)) {
                header = true;
                break;
            }
        }
    }

    const std::size_t first_data = header ? 1 : 0;
    if (first_data >= rows.size()) throw DataError(path + ": no data rows");
    const std::size_t n = rows.size() - first_data;
    const std::size_t p = n_cols - 1;

    std::vector<double> values;
    values.reserve(n * p);
    std::vector<int> labels;
    labels.reserve(n);
    std::vector<std::string> seen_labels;
    for (std::size_t r = first_data; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < n_cols; ++c) {
            if (c == label_idx) continue;
            double v;
            if (!detail::parse_double(rows[r][c], v))
                throw DataError(path + ": row " + std::to_string(r + 1) + ", column " +
                                std::to_string(c + 1) + ": not numeric: '" + rows[r][c] +
                                "'");
            if (!std::isfinite(v))
                throw DataError(path + ": row " + std::to_string(r + 1) + ", column " +
                                std::to_string(c + 1) + ": non-finite value");
            values.push_back(v);
        }
        const std::string& tok = rows[r][label_idx];
        int id = -1;
        for (std::size_t s = 0; s < seen_labels.size(); ++s)
            if (seen_labels[s] == tok) {
                id = static_cast<int>(s);
                break;
            }
        if (id < 0) {
            id = static_cast<int>(seen_labels.size());
            seen_labels.push_back(tok);
        }
        labels.push_back(id);
    }

    return LabeledDataset{
        DataMatrix(n, p, std::move(values)),
        Labeling(std::move(labels), static_cast<int>(seen_labels.size())),
        std::filesystem::path(path).stem().string()};
}

// Features at 17 significant digits (lossless double round trip), label ids
// in the last column, no header. Labels round-trip exactly when they are
// already in first-appearance order, which everything in this library emits.
inline void save_csv(const LabeledDataset& dataset, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path);
    char buf[40];
    const std::size_t n = dataset.data.rows(), p = dataset.data.cols();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", dataset.data.at(i, j));
            out << buf << ',';
        }
        out << dataset.true_labels.labels[i] << '\n';
    }
    if (!out) throw DataError("write failed: " + path);
}

// n_per isotropic Gaussian draws around each center; label = center index.
inline LabeledDataset gen_gaussian_blobs(int n_per,
                                         const std::vector<std::vector<double>>& centers,
                                         double sigma, std::uint64_t seed) {
    if (centers.empty())
        throw std::invalid_argument("gen_gaussian_blobs: need at least one center");
    if (n_per < 1) throw std::invalid_argument("gen_gaussian_blobs: n_per must be >= 1");
    if (!(sigma > 0.0)) throw std::invalid_argument("gen_gaussian_blobs: sigma must be > 0");
    const std::size_t p = centers[0].size();
    if (p < 1) throw std::invalid_argument("gen_gaussian_blobs: empty center");
    for (const auto& c : centers)
        if (c.size() != p)
            throw std::invalid_argument("gen_gaussian_blobs: center dimension mismatch");

    Rng rng(seed);
    const std::size_t n = static_cast<std::size_t>(n_per) * centers.size();
    std::vector<double> values;
    values.reserve(n * p);
    std::vector<int> labels;
    labels.reserve(n);
    for (std::size_t c = 0; c < centers.size(); ++c)
        for (int i = 0; i < n_per; ++i) {
            for (std::size_t j = 0; j < p; ++j)
                values.push_back(centers[c][j] + sigma * rng.normal());
            labels.push_back(static_cast<int>(c));
        }
    return LabeledDataset{DataMatrix(n, p, std::move(values)),
                          Labeling(std::move(labels), static_cast<int>(centers.size())),
                          "blobs"};
}

// Uniform disk (label 0) inside a uniform annulus (label 1), both sampled
// area-correctly by radial inversion.
inline LabeledDataset gen_bullseye(int n_inner, int n_ring, double r_inner,
                                   double r_low, double r_high, std::uint64_t seed) {
    if (n_inner < 1 || n_ring < 1)
        throw std::invalid_argument("gen_bullseye: counts must be >= 1");
    if (!(0.0 < r_inner && r_inner < r_low && r_low < r_high))
        throw std::invalid_argument("gen_bullseye: need 0 < r_inner < r_low < r_high");

    Rng rng(seed);
    const std::size_t n = static_cast<std::size_t>(n_inner) + static_cast<std::size_t>(n_ring);
    std::vector<double> values;
    values.reserve(n * 2);
    std::vector<int> labels;
    labels.reserve(n);
    for (int i = 0; i < n_inner; ++i) {
        const double r = r_inner * std::sqrt(rng.uniform());
        const double theta = 2.0 * std::numbers::pi * rng.uniform();
        values.push_back(r * std::cos(theta));
        values.push_back(r * std::sin(theta));
        labels.push_back(0);
    }
    const double low_sq = r_low * r_low, high_sq = r_high * r_high;
    for (int i = 0; i < n_ring; ++i) {
        const double r = std::sqrt(low_sq + rng.uniform() * (high_sq - low_sq));
        const double theta = 2.0 * std::numbers::pi * rng.uniform();
        values.push_back(r * std::cos(theta));
        values.push_back(r * std::sin(theta));
        labels.push_back(1);
    }
    return LabeledDataset{DataMatrix(n, 2, std::move(values)), Labeling(std::move(labels), 2),
                          "bullseye"};
}

// Two interleaved half-circle arcs with isotropic Gaussian jitter. With zero
// noise, label 0 lies exactly on the upper unit half-circle and label 1 on a
// lower half-circle shifted to (1, 0.5).
inline LabeledDataset gen_two_moons(int n_per, double noise_sigma, std::uint64_t seed) {
    if (n_per < 1) throw std::invalid_argument("gen_two_moons: n_per must be >= 1");
    if (noise_sigma < 0.0)
        throw std::invalid_argument("gen_two_moons: noise must be >= 0");

    Rng rng(seed);
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(n_per) * 4);
    std::vector<int> labels;
    labels.reserve(static_cast<std::size_t>(n_per) * 2);
    for (int i = 0; i < n_per; ++i) {
        const double t = std::numbers::pi * rng.uniform();
        values.push_back(std::cos(t) + noise_sigma * rng.normal());
        values.push_back(std::sin(t) + noise_sigma * rng.normal());
        labels.push_back(0);
    }
    for (int i = 0; i < n_per; ++i) {
        const double t = std::numbers::pi * rng.uniform();
        values.push_back(1.0 - std::cos(t) + noise_sigma * rng.normal());
        values.push_back(0.5 - std::sin(t) + noise_sigma * rng.normal());
        labels.push_back(1);
    }
    return LabeledDataset{DataMatrix(static_cast<std::size_t>(n_per) * 2, 2,
                                     std::move(values)),
                          Labeling(std::move(labels), 2), "moons"};
}

}  // namespace cavmerge
