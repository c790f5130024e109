#pragma once

#include <array>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cavmerge/data.hpp"

namespace cavmerge {

// Deterministic scatter plot of a 2D dataset: fixed 800x800 canvas, 5%
// margins, one circle per observation, fill color cycling through a fixed
// 20-color palette by cluster id. Identical inputs produce identical bytes.
inline std::string render_svg(const DataMatrix& data, const std::vector<int>& labels) {
    if (data.cols() != 2)
        throw std::invalid_argument(
            "render_svg: plotting requires 2D data; select two coordinates "
            "(e.g. --plot-dims 0,1) for higher-dimensional input");
    if (labels.size() != data.rows())
        throw std::invalid_argument("render_svg: label count does not match rows");
    for (int id : labels)
        if (id < 0) throw std::invalid_argument("render_svg: negative label");

    static constexpr std::array<const char*, 20> palette = {
        "#1f77b4", "#aec7e8", "#ff7f0e", "#ffbb78", "#2ca02c",
        "#98df8a", "#d62728", "#ff9896", "#9467bd", "#c5b0d5",
        "#8c564b", "#c49c94", "#e377c2", "#f7b6d2", "#7f7f7f",
        "#c7c7c7", "#bcbd22", "#dbdb8d", "#17becf", "#9edae5"};

    constexpr double canvas = 800.0;
    constexpr double margin = canvas * 0.05;
    constexpr double inner = canvas - 2.0 * margin;

    double min_x = data.at(0, 0), max_x = min_x;
    double min_y = data.at(0, 1), max_y = min_y;
    for (std::size_t i = 1; i < data.rows(); ++i) {
        min_x = std::min(min_x, data.at(i, 0));
        max_x = std::max(max_x, data.at(i, 0));
        min_y = std::min(min_y, data.at(i, 1));
        max_y = std::max(max_y, data.at(i, 1));
    }
    const double span_x = max_x > min_x ? max_x - min_x : 1.0;
    const double span_y = max_y > min_y ? max_y - min_y : 1.0;

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
           "viewBox=\"0 0 800 800\">\n";
    out += "<rect width=\"800\" height=\"800\" fill=\"#ffffff\"/>\n";
    char buf[160];
    for (std::size_t i = 0; i < data.rows(); ++i) {
        const double cx = margin + (data.at(i, 0) - min_x) / span_x * inner;
        const double cy = canvas - margin - (data.at(i, 1) - min_y) / span_y * inner;
        std::snprintf(buf, sizeof(buf),
                      "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\" fill=\"%s\"/>\n", cx, cy,
                      palette[static_cast<std::size_t>(labels[i]) % palette.size()]);
        out += buf;
    }
    out += "</svg>\n";
    return out;
}

inline void plot_svg(const DataMatrix& data, const std::vector<int>& labels,
                     const std::string& path) {
    const std::string content = render_svg(data, labels);  // render before touching disk
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path);
    out << content;
    if (!out) throw DataError("write failed: " + path);
}

}  // namespace cavmerge
