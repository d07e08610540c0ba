#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Geometry>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "geoflow/geometry/frenet.hpp"
#include "geoflow/geometry/shapes.hpp"
#include "geoflow/numerics/ode.hpp"

namespace geoflow::vfe {

enum class RotationCase { transverse, x_axis, planar };

inline const char* to_string(RotationCase c) {
    switch (c) {
        case RotationCase::transverse: return "transverse-axis";
        case RotationCase::x_axis: return "x-axis";
        case RotationCase::planar: return "planar";
    }
    return "?";
}

/// Parameters of a rigidly rotating filament Γ(x, t) = e^{tM}Γ₀(x), |ω| = 1.
/// `z0` is the profile value at x_range.first; `sign` picks the initial slope
/// branch for the x-axis and planar cases. `swap_yz` exchanges the y and z
/// components in the transverse case.
struct VfeRotatingSpec {
    RotationCase kind = RotationCase::x_axis;
    double C1 = 0.0;
    double C2 = 0.0;
    double lambda = 0.0;
    int sign = 1;
    double z0 = 0.0;
    std::pair<double, double> x_range{-1.0, 1.0};
    std::size_t n = 1024;
    bool swap_yz = false;

    void validate() const {
        if (!std::isfinite(C1) || !std::isfinite(C2) || !std::isfinite(lambda) || !std::isfinite(z0))
            throw Error("invalid-argument", "rotating spec needs finite constants");
        if (sign != 1 && sign != -1) throw Error("invalid-argument", "sign must be +1 or -1");
        if (!(x_range.second > x_range.first) || !std::isfinite(x_range.first) || !std::isfinite(x_range.second))
            throw Error("invalid-argument", "x_range must be increasing and finite");
        if (n < SampledCurve::min_points) throw Error("invalid-argument", "need at least 4 samples");
        if (kind == RotationCase::planar && lambda != 0.0) throw Error("invalid-argument", "planar case has lambda = 0");
    }
};

/// Profile samples plus the angular velocity that makes Γ₀ rotate rigidly.
struct RotatingProfile {
    RotationCase kind = RotationCase::x_axis;
    SampledCurve curve;
    Point omega = Point::Zero();
    std::vector<double> x, z, dz;
    std::vector<double> turning_points;  // x where the slope changes sign
    std::pair<double, double> band{0.0, 0.0};  // admissible z² interval (x-axis, planar)
    double defect = 0.0;                       // worst first-order relation mismatch
    std::vector<std::string> flags;

    std::size_t size() const noexcept { return x.size(); }
};

/// Open interval of z² for which the x-axis profile has a real slope.
inline std::pair<double, double> z_bounds(double lambda, double C1) {
    const double w = 2.0 / (1.0 + lambda * lambda);
    const double hi = w - 2.0 * C1;
    if (!(hi > 0.0)) throw Error("no-admissible-band", "upper bound of z^2 is not positive");
    return {std::max(0.0, -w - 2.0 * C1), hi};
}

/// Slope at which a profile is treated as vertical and the range is cut.
inline constexpr double rotating_slope_cap = 1e3;

namespace detail {

// z'² from the first-order reduction of the x-axis case.
inline double xaxis_slope_squared(double z, double lambda, double C1) {
    const double l2 = 1.0 + lambda * lambda, w = z * z + 2.0 * C1;
    return (4.0 - l2 * l2 * w * w) / (l2 * l2 * l2 * w * w);
}

inline void finish_curve(RotatingProfile& p, const std::string& label, auto&& point) {
    std::vector<Point> pts(p.x.size());
    for (std::size_t k = 0; k < pts.size(); ++k) pts[k] = point(p.x[k], p.z[k]);
    if (pts.size() < SampledCurve::min_points) throw Error("range-truncated", "fewer than 4 samples survive truncation");
    p.curve = SampledCurve(3, false, std::move(pts), label);
}

// x-axis profile for any λ: Γ = (x, λz, z).
inline RotatingProfile rotating_about_x(const VfeRotatingSpec& spec) {
    const double lambda = spec.lambda, C1 = spec.C1, l2 = 1.0 + lambda * lambda;
    RotatingProfile p;
    p.kind = spec.kind;
    try {
        p.band = z_bounds(lambda, C1);
    } catch (const Error&) {
        throw Error("outside-admissible-band", "no admissible band for these constants");
    }
    const double w0 = spec.z0 * spec.z0 + 2.0 * C1;
    if (!(std::abs(w0) <= 2.0 / l2 * (1.0 + 1e-12)) || w0 == 0.0)
        throw Error("outside-admissible-band", "initial value outside the admissible band");
    // The conserved first integral fixes the rotation sense: z'' = −σ z (1 + (1+λ²)z'²)^{3/2}.
    const double sigma = w0 > 0.0 ? 1.0 : -1.0;
    p.omega = Point(-sigma, 0.0, 0.0);

    auto rhs = [&](const ode::State<2>& u, ode::State<2>& du, double) {
        du[0] = u[1];
        du[1] = -sigma * u[0] * std::pow(1.0 + l2 * u[1] * u[1], 1.5);
    };
    auto vertical = [](const ode::State<2>& u) { return !(std::abs(u[1]) <= rotating_slope_cap); };
    const auto xs = shapes::linspace(spec.x_range.first, spec.x_range.second, spec.n);
    const ode::State<2> y0{spec.z0, spec.sign * std::sqrt(std::max(0.0, xaxis_slope_squared(spec.z0, lambda, C1)))};
    const auto run = ode::integrate_dense<2>(rhs, y0, xs.front(), xs, 1e-13, vertical);
    if (run.stopped) p.flags.push_back("range-truncated");
    for (std::size_t k = 0; k < run.t.size(); ++k) {
        p.x.push_back(run.t[k]);
        p.z.push_back(run.y[k][0]);
        p.dz.push_back(run.y[k][1]);
        if (k > 0 && (p.dz[k - 1] > 0.0) != (p.dz[k] > 0.0)) p.turning_points.push_back(run.t[k]);
        // Defect of (1+λ²)(z² + 2C₁)·√(1 + (1+λ²)z'²) = 2σ.
        const double w = run.y[k][0] * run.y[k][0] + 2.0 * C1;
        p.defect = std::max(p.defect, std::abs(l2 * w * std::sqrt(1.0 + l2 * run.y[k][1] * run.y[k][1]) - 2.0 * sigma));
    }
    return p;
}

}  // namespace detail

/// Transverse case: Γ = (x, C₁x, z(x)) rotating about the z-axis, where
/// −z'/√(1+C₁²+z'²) = q(x) = ½(1+C₁²)(x² + 2C₂). The slope is solved
/// pointwise and integrated by Gauss–Kronrod quadrature. The range is cut
/// where |q| reaches 1 − 1e−6. With `swap_yz` the curve is (x, z, C₁x) and
/// rotates about the y-axis.
inline RotatingProfile transverse_rotation_profile(double C1, double C2, std::pair<double, double> x_range,
                                                   std::size_t n, double z0 = 0.0, bool swap_yz = false) {
    VfeRotatingSpec spec;
    spec.kind = RotationCase::transverse;
    spec.C1 = C1;
    spec.C2 = C2;
    spec.z0 = z0;
    spec.x_range = x_range;
    spec.n = n;
    spec.validate();
    const double a2 = 1.0 + C1 * C1;
    auto q = [&](double x) { return 0.5 * a2 * (x * x + 2.0 * C2); };
    auto slope = [&](double x) {
        const double v = q(x);
        return -v * std::sqrt(a2 / (1.0 - v * v));
    };
    constexpr double q_max = 1.0 - 1e-6;
    if (!(std::abs(q(x_range.first)) < 1.0)) throw Error("unsolvable-slope", "|q| >= 1 at the start of the range");

    RotatingProfile p;
    p.kind = RotationCase::transverse;
    p.omega = swap_yz ? Point(0.0, 1.0, 0.0) : Point(0.0, 0.0, 1.0);
    const auto xs = shapes::linspace(x_range.first, x_range.second, n);
    double z = z0, prev = xs.front();
    for (double x : xs) {
        if (!(std::abs(q(x)) <= q_max)) {
            p.flags.push_back("range-truncated");
            break;
        }
        if (x > prev) z += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(slope, prev, x, 0, 1e-14);
        prev = x;
        p.x.push_back(x);
        p.z.push_back(z);
        p.dz.push_back(slope(x));
        if (p.dz.size() > 1 && (p.dz[p.dz.size() - 2] > 0.0) != (p.dz.back() > 0.0)) p.turning_points.push_back(x);
        const double d = p.dz.back();
        p.defect = std::max(p.defect, std::abs(-d / std::sqrt(a2 + d * d) - q(x)));
    }
    detail::finish_curve(p, "rotating-transverse", [&](double x, double zz) {
        return swap_yz ? Point(x, zz, C1 * x) : Point(x, C1 * x, zz);
    });
    return p;
}

/// x-axis case: Γ = (x, λz, z) with z'² = (4 − (1+λ²)²w²)/((1+λ²)³w²),
/// w = z² + 2C₁. Integrated in its second-order form so the slope changes
/// sign at turning points on its own; ω = (−sign w, 0, 0).
inline RotatingProfile xaxis_rotation_profile(const VfeRotatingSpec& spec) {
    spec.validate();
    VfeRotatingSpec s = spec;
    s.kind = RotationCase::x_axis;
    RotatingProfile p = detail::rotating_about_x(s);
    const double lambda = spec.lambda;
    detail::finish_curve(p, "rotating-x-axis", [&](double x, double z) { return Point(x, lambda * z, z); });
    return p;
}

/// Planar case: Γ(x, t) = (x, cos t·f, −sin t·f) with f + f''/(1+f'²)^{3/2} = 0
/// when f² + 2C₁ > 0 (the opposite sense otherwise). Emits the t = 0 curve.
inline RotatingProfile planar_rotation_profile(double C1, double f0, std::pair<double, double> x_range, std::size_t n,
                                               int sign = 1) {
    VfeRotatingSpec spec;
    spec.kind = RotationCase::planar;
    spec.C1 = C1;
    spec.z0 = f0;
    spec.sign = sign;
    spec.x_range = x_range;
    spec.n = n;
    spec.validate();
    const double w = f0 * f0 + 2.0 * C1;
    if (!(w * w <= 4.0 * (1.0 + 1e-12))) throw Error("outside-admissible-band", "(f0^2 + 2 C1)^2 exceeds 4");
    RotatingProfile p = detail::rotating_about_x(spec);
    detail::finish_curve(p, "rotating-planar", [](double x, double f) { return Point(x, f, 0.0); });
    return p;
}

inline RotatingProfile rotating_profile(const VfeRotatingSpec& spec) {
    spec.validate();
    switch (spec.kind) {
        case RotationCase::transverse:
            return transverse_rotation_profile(spec.C1, spec.C2, spec.x_range, spec.n, spec.z0, spec.swap_yz);
        case RotationCase::x_axis: return xaxis_rotation_profile(spec);
        case RotationCase::planar:
            return planar_rotation_profile(spec.C1, spec.z0, spec.x_range, spec.n, spec.sign);
    }
    throw Error("invalid-argument", "unknown rotation case");
}

/// ‖ω×Γ − Γ_s×Γ_ss‖ per sample, with arclength derivatives.
inline ScalarField rotation_residual(const SampledCurve& c, const Point& omega) {
    if (c.dimension() != 3) throw Error("invalid-argument", "rotation residual needs a space curve");
    const CurveDerivatives d = curve_derivatives(c, false);
    ScalarField r(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) r[k] = (omega.cross(c[k]) - d.d1[k].cross(d.d2[k])).norm();
    return r;
}

/// e^{tM}Γ₀: rotation of every sample by angle t|ω| about ω.
inline SampledCurve rigid_rotation(const SampledCurve& c, const Point& omega, double t) {
    const double w = omega.norm();
    if (w == 0.0) return c;
    const Eigen::Matrix3d R = Eigen::AngleAxisd(t * w, omega / w).toRotationMatrix();
    std::vector<Point> pts(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) pts[k] = R * c[k];
    return SampledCurve(c.dimension(), c.closed(), std::move(pts), c.label());
}

}  // namespace geoflow::vfe
