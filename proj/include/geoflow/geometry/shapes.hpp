#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <numbers>
#include <vector>

#include "geoflow/geometry/curve.hpp"
#include "geoflow/geometry/resample.hpp"

namespace geoflow::shapes {

/// Counter-clockwise circle, uniformly sampled.
inline SampledCurve circle(double radius, std::size_t n, const Point& center = Point::Zero(), int dimension = 2) {
    std::vector<Point> p(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        p[k] = center + radius * Point(std::cos(t), std::sin(t), 0.0);
    }
    return SampledCurve(dimension, true, std::move(p), "circle");
}

/// Counter-clockwise ellipse with semi-axes a (x) and b (y), equal arclength samples.
inline SampledCurve ellipse(double a, double b, std::size_t n, int dimension = 2) {
    const std::size_t m = std::max<std::size_t>(16 * n, 4096);
    std::vector<Point> p(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
        p[k] = Point(a * std::cos(t), b * std::sin(t), 0.0);
    }
    SampledCurve fine(dimension, true, std::move(p), "ellipse");
    // Sample the exact ellipse at the parameters where the fine polyline puts the samples.
    SampledCurve coarse = resample_arclength(fine, n);
    std::vector<Point> q(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = std::atan2(coarse[k].y() / b, coarse[k].x() / a);
        q[k] = Point(a * std::cos(t), b * std::sin(t), 0.0);
    }
    return SampledCurve(dimension, true, std::move(q), "ellipse");
}

/// Helix (a cos u, a sin u, b u) sampled at equal arclength for u in [u0, u1].
/// Curvature a/(a²+b²), torsion b/(a²+b²).
inline SampledCurve helix(double a, double b, double u0, double u1, std::size_t n) {
    std::vector<Point> p(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double u = u0 + (u1 - u0) * static_cast<double>(k) / static_cast<double>(n - 1);
        p[k] = Point(a * std::cos(u), a * std::sin(u), b * u);
    }
    return SampledCurve(3, false, std::move(p), "helix");
}

/// Straight segment from p to q with n equally spaced samples.
inline SampledCurve segment(const Point& p, const Point& q, std::size_t n, int dimension = 2) {
    std::vector<Point> pts(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double w = static_cast<double>(k) / static_cast<double>(n - 1);
        pts[k] = (1.0 - w) * p + w * q;
    }
    return SampledCurve(dimension, false, std::move(pts), "segment");
}

/// Graph y = f(x) sampled at the given abscissae.
template <class F>
SampledCurve graph(F&& f, const std::vector<double>& xs, std::string label = "graph") {
    std::vector<Point> pts;
    pts.reserve(xs.size());
    for (double x : xs) pts.emplace_back(x, f(x), 0.0);
    return SampledCurve(2, false, std::move(pts), std::move(label));
}

inline std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1);
    return v;
}

}  // namespace geoflow::shapes
