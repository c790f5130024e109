#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace cavmerge {

// Euclidean primitives behind the merging score: projection lengths,
// point-to-line distances, and the hyper-cylinder membership test built from
// them. All of them are pure and thread-safe.

struct Point {
    std::vector<double> coords;
};

namespace detail {

inline void check_same_dim(std::span<const double> a, std::span<const double> b,
                           const char* what) {
    if (a.size() != b.size()) throw std::invalid_argument(what);
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) s += a[d] * b[d];
    return s;
}

inline double squared_norm(std::span<const double> a) { return dot(a, a); }

}  // namespace detail

// Line through two distinct points.
struct Segment {
    Point a;
    Point b;

    Segment(Point first, Point second) : a(std::move(first)), b(std::move(second)) {
        detail::check_same_dim(a.coords, b.coords, "Segment: dimension mismatch");
        if (a.coords == b.coords)
            throw std::invalid_argument("Segment: endpoints must be distinct");
    }
};

// |x.y| / ||y||, the length of the projection of x onto the direction of y.
inline double projection_length(std::span<const double> x,
                                std::span<const double> y) {
    detail::check_same_dim(x, y, "projection_length: dimension mismatch");
    const double norm_y = std::sqrt(detail::squared_norm(y));
    if (norm_y == 0.0)
        throw std::invalid_argument("projection_length: zero direction vector");
    return std::fabs(detail::dot(x, y)) / norm_y;
}

inline double projection_length(const Point& x, const Point& y) {
    return projection_length(std::span<const double>(x.coords),
                             std::span<const double>(y.coords));
}

// Same quantity for x - offset, without materializing the difference.
inline double projection_length_from(std::span<const double> x,
                                     std::span<const double> offset,
                                     std::span<const double> y) {
    detail::check_same_dim(x, offset, "projection_length_from: dimension mismatch");
    detail::check_same_dim(x, y, "projection_length_from: dimension mismatch");
    const double norm_y = std::sqrt(detail::squared_norm(y));
    if (norm_y == 0.0)
        throw std::invalid_argument("projection_length_from: zero direction vector");
    double s = 0.0;
    for (std::size_t d = 0; d < x.size(); ++d) s += (x[d] - offset[d]) * y[d];
    return std::fabs(s) / norm_y;
}

// Perpendicular distance from x to the infinite line through a and b.
// The radicand is clamped at zero: when x sits numerically on the line,
// cancellation can drive it a few ulps negative.
inline double line_distance(std::span<const double> x, std::span<const double> a,
                            std::span<const double> b) {
    detail::check_same_dim(x, a, "line_distance: dimension mismatch");
    detail::check_same_dim(x, b, "line_distance: dimension mismatch");
    double diff_sq = 0.0;
    double along = 0.0;
    double dir_sq = 0.0;
    for (std::size_t d = 0; d < x.size(); ++d) {
        const double dx = x[d] - a[d];
        const double dv = b[d] - a[d];
        diff_sq += dx * dx;
        along += dx * dv;
        dir_sq += dv * dv;
    }
    if (dir_sq == 0.0)
        throw std::invalid_argument("line_distance: degenerate segment");
    const double radicand = diff_sq - (along * along) / dir_sq;
    return std::sqrt(radicand > 0.0 ? radicand : 0.0);
}

inline double line_distance(const Point& x, const Segment& seg) {
    return line_distance(std::span<const double>(x.coords),
                         std::span<const double>(seg.a.coords),
                         std::span<const double>(seg.b.coords));
}

// Membership in the open hyper-cylinder with the given axis point, direction
// and extents: strictly inside the lateral surface and strictly within the
// axial half-length. Boundary points are excluded.
inline bool cylinder_membership(std::span<const double> x,
                                std::span<const double> axis_center,
                                std::span<const double> axis_dir,
                                double half_length, double radius,
                                std::span<const double> seg_a,
                                std::span<const double> seg_b) {
    return line_distance(x, seg_a, seg_b) < radius &&
           projection_length_from(x, axis_center, axis_dir) < half_length;
}

inline bool cylinder_membership(const Point& x, const Point& axis_center,
                                const Point& axis_dir, double half_length,
                                double radius, const Segment& seg) {
    return cylinder_membership(std::span<const double>(x.coords),
                               std::span<const double>(axis_center.coords),
                               std::span<const double>(axis_dir.coords),
                               half_length, radius,
                               std::span<const double>(seg.a.coords),
                               std::span<const double>(seg.b.coords));
}

}  // namespace cavmerge
