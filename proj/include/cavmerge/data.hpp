#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cavmerge {

// Errors caused by bad input files or malformed external data, as opposed to
// programming/contract errors which use std::invalid_argument. The CLI maps
// the two classes to different exit codes.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Immutable n x p row-major matrix of observations. All entries finite.
class DataMatrix {
public:
    DataMatrix(std::size_t n, std::size_t p, std::vector<double> values)
        : n_(n), p_(p), values_(std::move(values)) {
        if (n_ < 1 || p_ < 1)
            throw std::invalid_argument("DataMatrix: need n >= 1 and p >= 1");
        if (values_.size() != n_ * p_)
            throw std::invalid_argument("DataMatrix: values size does not match n*p");
        for (double v : values_)
            if (!std::isfinite(v))
                throw std::invalid_argument("DataMatrix: non-finite entry");
    }

    std::size_t rows() const { return n_; }
    std::size_t cols() const { return p_; }

    std::span<const double> row(std::size_t i) const {
        return {values_.data() + i * p_, p_};
    }

    double at(std::size_t i, std::size_t j) const { return values_[i * p_ + j]; }

    const std::vector<double>& values() const { return values_; }

private:
    std::size_t n_;
    std::size_t p_;
    std::vector<double> values_;
};

// Exhaustive, exclusive assignment of n observations to clusters 0..k-1.
// Every id in that range occurs at least once.
struct Labeling {
    std::vector<int> labels;
    int k = 0;

    Labeling() = default;

    Labeling(std::vector<int> l, int k_count) : labels(std::move(l)), k(k_count) {
        validate();
    }

    std::size_t size() const { return labels.size(); }

    void validate() const {
        if (k < 1) throw std::invalid_argument("Labeling: k must be >= 1");
        std::vector<char> seen(static_cast<std::size_t>(k), 0);
        for (int id : labels) {
            if (id < 0 || id >= k)
                throw std::invalid_argument("Labeling: id out of range");
            seen[static_cast<std::size_t>(id)] = 1;
        }
        for (char s : seen)
            if (!s) throw std::invalid_argument("Labeling: empty cluster id");
    }
};

// Renumber ids by order of first appearance, so equal partitions compare
// equal regardless of the arbitrary numbering a fit produced. Returns the
// number of distinct ids.
inline int canonicalize_labels(std::vector<int>& labels) {
    std::vector<int> remap;
    int next_id = 0;
    for (int& id : labels) {
        const std::size_t idx = static_cast<std::size_t>(id);
        if (idx >= remap.size()) remap.resize(idx + 1, -1);
        if (remap[idx] < 0) remap[idx] = next_id++;
        id = remap[idx];
    }
    return next_id;
}

// z-score each feature; constant features are left centered but unscaled.
inline DataMatrix standardize_features(const DataMatrix& data) {
    const std::size_t n = data.rows(), p = data.cols();
    std::vector<double> mean(p, 0.0), sd(p, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j) mean[j] += data.at(i, j);
    for (std::size_t j = 0; j < p; ++j) mean[j] /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            const double d = data.at(i, j) - mean[j];
            sd[j] += d * d;
        }
    for (std::size_t j = 0; j < p; ++j) {
        sd[j] = n > 1 ? std::sqrt(sd[j] / static_cast<double>(n - 1)) : 0.0;
        if (sd[j] == 0.0) sd[j] = 1.0;
    }
    std::vector<double> out(n * p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j)
            out[i * p + j] = (data.at(i, j) - mean[j]) / sd[j];
    return DataMatrix(n, p, std::move(out));
}

}  // namespace cavmerge
