#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "geoflow/geometry/curve.hpp"
#include "geoflow/geometry/frenet.hpp"

namespace geoflow {

namespace detail {
inline void require_closed_planar(const SampledCurve& c, const char* what) {
    if (!c.closed() || !c.planar()) throw Error("invalid-argument", std::string(what) + " needs a closed planar curve");
}

inline double cross2(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }

inline bool segments_cross(const Point& p1, const Point& p2, const Point& q1, const Point& q2) {
    const double d1 = cross2(q2 - q1, p1 - q1), d2 = cross2(q2 - q1, p2 - q1);
    const double d3 = cross2(p2 - p1, q1 - p1), d4 = cross2(p2 - p1, q2 - p1);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0;
}

inline double point_segment_distance(const Point& p, const Point& a, const Point& b) {
    const Point ab = b - a;
    const double len2 = ab.squaredNorm();
    const double w = len2 > 0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
    return (p - (a + w * ab)).norm();
}

inline double directed_hausdorff(const SampledCurve& from, const SampledCurve& to) {
    double worst = 0.0;
    const std::size_t segs = to.segment_count();
    for (const Point& p : from.points()) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < segs; ++j)
            best = std::min(best, point_segment_distance(p, to[j], to[to.wrap(static_cast<std::ptrdiff_t>(j) + 1)]));
        worst = std::max(worst, best);
    }
    return worst;
}
}  // namespace detail

/// Signed shoelace area: positive for counter-clockwise orientation.
inline double signed_area(const SampledCurve& c) {
    detail::require_closed_planar(c, "area");
    double a = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) a += detail::cross2(c[i], c[c.wrap(static_cast<std::ptrdiff_t>(i) + 1)]);
    return 0.5 * a;
}

inline double enclosed_area(const SampledCurve& c) { return std::abs(signed_area(c)); }

/// L²/(4πA); 1 for a circle.
inline double isoperimetric_ratio(const SampledCurve& c) {
    const double L = total_length(c);
    return L * L / (4.0 * std::numbers::pi * enclosed_area(c));
}

/// True when two non-adjacent polyline segments cross. Quadratic scan.
inline bool possibly_self_intersecting(const SampledCurve& c) {
    const std::size_t segs = c.segment_count();
    for (std::size_t i = 0; i < segs; ++i) {
        const Point& a = c[i];
        const Point& b = c[c.wrap(static_cast<std::ptrdiff_t>(i) + 1)];
        for (std::size_t j = i + 2; j < segs; ++j) {
            if (c.closed() && i == 0 && j == segs - 1) continue;
            if (detail::segments_cross(a, b, c[j], c[c.wrap(static_cast<std::ptrdiff_t>(j) + 1)])) return true;
        }
    }
    return false;
}

struct AreaReport {
    double area = 0.0;
    double ratio = 0.0;
    bool possibly_self_intersecting = false;
};

inline AreaReport area_report(const SampledCurve& c) {
    return {enclosed_area(c), isoperimetric_ratio(c), possibly_self_intersecting(c)};
}

/// Length-weighted centroid of the polyline.
inline Point centroid(const SampledCurve& c) {
    Point acc = Point::Zero();
    double L = 0.0;
    for (std::size_t i = 0; i < c.segment_count(); ++i) {
        const Point& a = c[i];
        const Point& b = c[c.wrap(static_cast<std::ptrdiff_t>(i) + 1)];
        const double h = (b - a).norm();
        acc += 0.5 * h * (a + b);
        L += h;
    }
    return acc / L;
}

/// Symmetric Hausdorff distance between the two polylines (vertex to polyline).
inline double hausdorff_distance(const SampledCurve& a, const SampledCurve& b) {
    return std::max(detail::directed_hausdorff(a, b), detail::directed_hausdorff(b, a));
}

/// Largest distance between two sample points.
inline double diameter(const SampledCurve& c) {
    double d = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j) d = std::max(d, (c[i] - c[j]).norm());
    return d;
}

/// Trapezoid quadrature of per-sample values against polyline arclength.
inline double integrate_along(const SampledCurve& c, const ScalarField& f) {
    const std::vector<double> h = segment_lengths(c);
    double acc = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) acc += 0.5 * h[i] * (f[i] + f[c.wrap(static_cast<std::ptrdiff_t>(i) + 1)]);
    return acc;
}

/// ∫κ² ds.
inline double bending_energy(const SampledCurve& c) {
    const FrenetData f = frenet(c);
    ScalarField k2(f.curvature.size());
    for (std::size_t i = 0; i < k2.size(); ++i) k2[i] = f.curvature[i] * f.curvature[i];
    return integrate_along(c, k2);
}

inline double max_abs(const ScalarField& f) {
    double m = 0.0;
    for (double v : f)
        if (std::isfinite(v)) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace geoflow
