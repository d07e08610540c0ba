#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "geoflow/geometry/frenet.hpp"
#include "geoflow/geometry/measures.hpp"

namespace geoflow::csf {

/// Backwards heat kernel (4π(t0−t))^{-1/2} exp(−|x−x0|²/4(t0−t)).
inline double backwards_heat_kernel(const Point& x, double t, const Point& x0, double t0) {
    if (!(t < t0)) throw Error("future-kernel", "kernel needs t < t0");
    const double tau = t0 - t;
    return std::exp(-(x - x0).squaredNorm() / (4.0 * tau)) / std::sqrt(4.0 * std::numbers::pi * tau);
}

/// Normalized heat-equation similarity profile (4πkt)^{-1/2} exp(−x²/4kt).
inline double heat_self_similar(double x, double t, double k) {
    if (!(t > 0.0)) throw Error("invalid-argument", "heat profile needs t > 0");
    if (!(k > 0.0)) throw Error("invalid-argument", "heat profile needs k > 0");
    return std::exp(-x * x / (4.0 * k * t)) / std::sqrt(4.0 * std::numbers::pi * k * t);
}

/// ∫ρ ds over the curve, composite trapezoid rule.
inline double huisken_functional(const SampledCurve& c, double t, const Point& x0, double t0) {
    if (!(t < t0)) throw Error("future-kernel", "kernel needs t < t0");
    ScalarField rho(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) rho[i] = backwards_heat_kernel(c[i], t, x0, t0);
    return integrate_along(c, rho);
}

namespace detail {
// Circumscribed-circle curvature through three points.
inline double three_point_curvature(const Point& a, const Point& b, const Point& c) {
    const double ab = (b - a).norm(), bc = (c - b).norm(), ca = (a - c).norm();
    const double twice_area = ((b - a).cross(c - a)).norm();
    const double denom = ab * bc * ca;
    return denom > 0 ? 2.0 * twice_area / denom : 0.0;
}

// Arc of a circle of curvature k subtending chord h.
inline double arc_from_chord(double h, double k) {
    const double x = 0.5 * h * k;
    if (k <= 0.0 || x < 1e-8) return h;
    return x >= 1.0 ? h * std::numbers::pi / 2.0 : 2.0 * std::asin(x) / k;
}
}  // namespace detail

/// Per-segment intrinsic length with a circular-arc correction from local
/// three-point curvature. Exact on samples of a circle.
inline std::vector<double> corrected_segment_arcs(const SampledCurve& c) {
    const std::size_t segs = c.segment_count();
    const auto n = static_cast<std::ptrdiff_t>(c.size());
    std::vector<double> k(c.size(), 0.0);
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        if (!c.closed() && (i == 0 || i == n - 1)) continue;
        k[static_cast<std::size_t>(i)] = detail::three_point_curvature(c[c.wrap(i - 1)], c[c.wrap(i)], c[c.wrap(i + 1)]);
    }
    if (!c.closed()) {
        k.front() = k[1];
        k.back() = k[c.size() - 2];
    }
    std::vector<double> arcs(segs);
    for (std::size_t i = 0; i < segs; ++i) {
        const std::size_t j = c.wrap(static_cast<std::ptrdiff_t>(i) + 1);
        arcs[i] = detail::arc_from_chord((c[j] - c[i]).norm(), 0.5 * (k[i] + k[j]));
    }
    return arcs;
}

/// sup over sample pairs of L/(πd)·sin(πl/L), l the shorter intrinsic arc.
/// Quadratic pair scan.
inline double distance_ratio(const SampledCurve& c) {
    if (!c.closed()) throw Error("invalid-argument", "distance ratio needs a closed curve");
    const std::vector<double> arcs = corrected_segment_arcs(c);
    std::vector<double> S(c.size(), 0.0);
    for (std::size_t i = 1; i < c.size(); ++i) S[i] = S[i - 1] + arcs[i - 1];
    const double L = S.back() + arcs.back();
    double best = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            const double along = S[j] - S[i];
            const double l = std::min(along, L - along);
            const double d = (c[i] - c[j]).norm();
            best = std::max(best, L / (std::numbers::pi * d) * std::sin(std::numbers::pi * l / L));
        }
    }
    return best;
}

}  // namespace geoflow::csf
