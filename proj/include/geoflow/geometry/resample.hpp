#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "geoflow/geometry/curve.hpp"

namespace geoflow {

enum class Interpolation {
    linear,  // on the input polyline; exact for polygons
    cubic,   // local four-point Lagrange in chord length; keeps discrete curvature smooth
};

namespace detail {

// Point at polyline arclength `s` (wrapping for closed curves). `cum` holds
// cumulative lengths of the polyline vertices with the closing vertex appended.
inline Point polyline_at(const std::vector<Point>& pts, const std::vector<double>& cum, bool closed, double s) {
    const double L = cum.back();
    if (closed) {
        s = std::fmod(s, L);
        if (s < 0) s += L;
    } else {
        s = std::clamp(s, 0.0, L);
    }
    auto it = std::upper_bound(cum.begin(), cum.end(), s);
    std::size_t j = it == cum.begin() ? 0 : static_cast<std::size_t>(it - cum.begin()) - 1;
    j = std::min(j, cum.size() - 2);
    const double h = cum[j + 1] - cum[j];
    const double w = h > 0 ? (s - cum[j]) / h : 0.0;
    const Point& a = pts[j];
    const Point& b = pts[(j + 1) % pts.size()];
    return (1.0 - w) * a + w * b;
}

// Same lookup, interpolating with the cubic through four neighbouring samples.
inline Point cubic_at(const std::vector<Point>& pts, const std::vector<double>& cum, bool closed, double s) {
    const double L = cum.back();
    const auto n = static_cast<std::ptrdiff_t>(pts.size());
    if (closed) {
        s = std::fmod(s, L);
        if (s < 0) s += L;
    } else {
        s = std::clamp(s, 0.0, L);
    }
    auto it = std::upper_bound(cum.begin(), cum.end(), s);
    std::ptrdiff_t j = it == cum.begin() ? 0 : (it - cum.begin()) - 1;
    j = std::min<std::ptrdiff_t>(j, static_cast<std::ptrdiff_t>(cum.size()) - 2);
    std::ptrdiff_t first = j - 1;
    if (!closed) first = std::clamp<std::ptrdiff_t>(first, 0, n - 4);
    double x[4];
    Point y[4];
    for (int k = 0; k < 4; ++k) {
        std::ptrdiff_t idx = first + k;
        double shift = 0.0;
        if (closed) {
            while (idx < 0) { idx += n; shift -= L; }
            while (idx >= n) { idx -= n; shift += L; }
        }
        x[k] = cum[static_cast<std::size_t>(idx)] + shift;
        y[k] = pts[static_cast<std::size_t>(idx)];
    }
    Point out = Point::Zero();
    for (int a = 0; a < 4; ++a) {
        double w = 1.0;
        for (int b = 0; b < 4; ++b)
            if (b != a) w *= (s - x[b]) / (x[a] - x[b]);
        out += w * y[a];
    }
    return out;
}

inline std::vector<double> polyline_cumulative(const std::vector<Point>& pts, bool closed) {
    const std::size_t segs = closed ? pts.size() : pts.size() - 1;
    std::vector<double> cum(segs + 1, 0.0);
    for (std::size_t i = 0; i < segs; ++i) cum[i + 1] = cum[i] + (pts[(i + 1) % pts.size()] - pts[i]).norm();
    return cum;
}

}  // namespace detail

/// Resample to `n` points equally spaced along the input.
///
/// Points are first placed at equal polyline arclength, then slid along the
/// interpolant until consecutive chords are equal. The second pass makes
/// the operation idempotent: an already equalized curve maps to itself.
inline SampledCurve resample_arclength(const SampledCurve& c, std::size_t n,
                                       Interpolation mode = Interpolation::linear) {
    if (n < SampledCurve::min_points) throw Error("invalid-argument", "resample needs n >= 4");
    const std::vector<Point>& pts = c.points();
    const bool closed = c.closed();
    const std::vector<double> cum = detail::polyline_cumulative(pts, closed);
    const double L = cum.back();
    if (!(L > 0.0)) throw Error("degenerate-curve", "zero total length");

    const std::size_t segs = closed ? n : n - 1;
    std::vector<double> s(n);
    for (std::size_t k = 0; k < n; ++k) s[k] = L * static_cast<double>(k) / static_cast<double>(segs);
    if (!closed) s[n - 1] = L;

    std::vector<Point> out(n);
    auto place = [&] {
        for (std::size_t k = 0; k < n; ++k)
            out[k] = mode == Interpolation::cubic && pts.size() >= 4 ? detail::cubic_at(pts, cum, closed, s[k])
                                                                     : detail::polyline_at(pts, cum, closed, s[k]);
    };
    place();

    std::vector<double> chord(segs + 1, 0.0), sext(segs + 1);
    for (int iter = 0; iter < 50; ++iter) {
        for (std::size_t k = 0; k < segs; ++k) chord[k + 1] = chord[k] + (out[(k + 1) % n] - out[k]).norm();
        const double C = chord[segs] / static_cast<double>(segs);
        double worst = 0.0;
        for (std::size_t k = 0; k < segs; ++k)
            worst = std::max(worst, std::abs(chord[k + 1] - chord[k] - C));
        if (worst <= 1e-14 * L) break;
        for (std::size_t k = 0; k < n; ++k) sext[k] = s[k];
        if (closed) sext[segs] = s[0] + L;
        std::vector<double> next(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double target = C * static_cast<double>(k);
            auto it = std::upper_bound(chord.begin(), chord.end(), target);
            std::size_t j = it == chord.begin() ? 0 : static_cast<std::size_t>(it - chord.begin()) - 1;
            j = std::min(j, segs - 1);
            const double h = chord[j + 1] - chord[j];
            const double w = h > 0 ? (target - chord[j]) / h : 0.0;
            next[k] = sext[j] + w * (sext[j + 1] - sext[j]);
        }
        if (!closed) next[n - 1] = L;
        s = std::move(next);
        place();
    }
    return c.with_points(std::move(out));
}

}  // namespace geoflow
