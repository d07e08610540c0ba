#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "geoflow/geometry/curve.hpp"
#include "geoflow/numerics/finite_difference.hpp"

namespace geoflow {

/// Parameter values used for differentiating a curve: cumulative chord length.
/// For near-uniform samples this is arclength to second order.
struct CurveParameter {
    std::vector<double> nodes;
    double period = 0.0;  // total length for closed curves, 0 otherwise
    bool periodic = false;
};

inline CurveParameter chord_parameter(const SampledCurve& c) {
    CurveParameter p{cumulative_arclength(c), 0.0, c.closed()};
    if (c.closed()) p.period = total_length(c);
    return p;
}

/// Derivative of every sample sequence `f` aligned with `c`.
template <class T>
std::vector<T> differentiate(const CurveParameter& p, const std::vector<T>& f, int order) {
    return fd::DerivativeOperator(p.nodes, order, p.periodic, p.period).apply(f);
}

/// First three parameter derivatives of the sample positions.
struct CurveDerivatives {
    VectorField d1, d2, d3;
};

inline CurveDerivatives curve_derivatives(const SampledCurve& c, bool third = true) {
    const CurveParameter p = chord_parameter(c);
    CurveDerivatives d;
    d.d1 = differentiate(p, c.points(), 1);
    d.d2 = differentiate(p, c.points(), 2);
    if (third) d.d3 = differentiate(p, c.points(), 3);
    return d;
}

/// Per-sample Frenet apparatus.
///
/// Planar curves carry a signed curvature with N = iT (T rotated by +90°);
/// `binormal` and `torsion` are left empty. Space curves carry κ ≥ 0; where
/// κ falls below `curvature_floor` the normal is continued from the nearest
/// defined neighbour and the torsion sample is NaN (see `torsion_defined`).
struct FrenetData {
    int dimension = 2;
    VectorField tangent;
    VectorField normal;
    VectorField binormal;
    ScalarField curvature;
    ScalarField torsion;
    ScalarField arclength;
    double curvature_floor = 0.0;

    std::size_t size() const noexcept { return tangent.size(); }
    bool torsion_defined(std::size_t i) const { return i < torsion.size() && std::isfinite(torsion[i]); }
    bool all_torsion_defined() const {
        for (std::size_t i = 0; i < torsion.size(); ++i)
            if (!torsion_defined(i)) return false;
        return dimension == 3;
    }
};

namespace detail {
inline Point any_perpendicular(const Point& t) {
    const Point trial = std::abs(t.x()) < 0.9 ? Point::UnitX() : Point::UnitY();
    return (trial - trial.dot(t) * t).normalized();
}
}  // namespace detail

inline FrenetData frenet(const SampledCurve& c) {
    const std::size_t n = c.size();
    const bool space = c.dimension() == 3;
    const CurveDerivatives d = curve_derivatives(c, space);

    FrenetData f;
    f.dimension = c.dimension();
    f.arclength = cumulative_arclength(c);
    f.curvature_floor = 1e-8 / mean_spacing(c);
    f.tangent.resize(n);
    f.normal.resize(n);
    f.curvature.resize(n);

    if (!space) {
        for (std::size_t i = 0; i < n; ++i) {
            const double speed = d.d1[i].norm();
            const Point t = d.d1[i] / speed;
            f.tangent[i] = t;
            f.normal[i] = Point(-t.y(), t.x(), 0.0);
            f.curvature[i] = (d.d1[i].x() * d.d2[i].y() - d.d1[i].y() * d.d2[i].x()) / (speed * speed * speed);
        }
        return f;
    }

    f.binormal.resize(n);
    f.torsion.assign(n, std::numeric_limits<double>::quiet_NaN());
    std::vector<bool> defined(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        const double speed = d.d1[i].norm();
        const Point t = d.d1[i] / speed;
        const Point cross = d.d1[i].cross(d.d2[i]);
        const double cn = cross.norm();
        f.tangent[i] = t;
        f.curvature[i] = cn / (speed * speed * speed);
        if (f.curvature[i] >= f.curvature_floor) {
            const Point b = cross / cn;
            f.binormal[i] = b;
            f.normal[i] = b.cross(t);
            f.torsion[i] = cross.dot(d.d3[i]) / (cn * cn);
            defined[i] = true;
        }
    }
    // Continue the normal through flat stretches so the frame stays orthonormal.
    std::ptrdiff_t last = -1;
    for (std::size_t i = 0; i < n; ++i) {
        if (defined[i]) { last = static_cast<std::ptrdiff_t>(i); continue; }
        const Point& t = f.tangent[i];
        Point guess = last >= 0 ? f.normal[static_cast<std::size_t>(last)] : Point::Zero();
        if (last < 0) {
            for (std::size_t j = i + 1; j < n; ++j)
                if (defined[j]) { guess = f.normal[j]; break; }
        }
        Point nrm = guess - guess.dot(t) * t;
        nrm = nrm.norm() > 1e-6 ? nrm.normalized() : detail::any_perpendicular(t);
        f.normal[i] = nrm;
        f.binormal[i] = t.cross(nrm);
        last = static_cast<std::ptrdiff_t>(i);
    }
    return f;
}

}  // namespace geoflow
