#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "geoflow/geometry/frenet.hpp"

namespace geoflow::hasimoto {

using Complex = std::complex<double>;

/// Complex field ψ on a uniform grid s_k = grid_start + k·grid_step.
struct FilamentFunction {
    double grid_start = 0.0;
    double grid_step = 1.0;
    std::vector<Complex> values;
    double gauge_A = 0.0;
    double time = 0.0;
    bool periodic = false;              // closed filament: period n·grid_step
    std::vector<std::string> flags;

    std::size_t size() const noexcept { return values.size(); }
    double s(std::size_t k) const noexcept { return grid_start + static_cast<double>(k) * grid_step; }

    void validate() const {
        if (values.size() < 4) throw Error("invalid-argument", "filament needs at least 4 samples");
        if (!(grid_step > 0.0) || !std::isfinite(grid_start)) throw Error("invalid-argument", "bad filament grid");
        for (const Complex& v : values)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw Error("invalid-argument", "non-finite ψ");
    }
};

/// Check that `s` is uniform to `rel` relative to its step. Returns the step.
inline double uniform_step(const std::vector<double>& s, double rel) {
    if (s.size() < 2) throw Error("invalid-argument", "grid needs two samples");
    const double h = (s.back() - s.front()) / static_cast<double>(s.size() - 1);
    for (std::size_t k = 1; k < s.size(); ++k)
        if (std::abs(s[k] - s[k - 1] - h) > rel * h) throw Error("invalid-argument", "grid is not uniform");
    return h;
}

/// ψ = κ·exp(i∫τ ds) with the phase origin at the sample nearest s = 0
/// (the grid midpoint when the grid starts at 0). `s` defaults to the frame's
/// arclength, which must be uniform to 1e-3.
inline FilamentFunction hasimoto_transform(const FrenetData& f, std::vector<double> s = {}, bool periodic = false) {
    const std::size_t n = f.size();
    if (n < 4) throw Error("invalid-argument", "filament needs at least 4 samples");
    if (f.dimension != 3) throw Error("invalid-argument", "Hasimoto transform needs a space curve");
    if (s.empty()) {
        s = f.arclength;
        if (!periodic) {
            const double mid = s[n / 2];
            for (double& v : s) v -= mid;
        }
        const double h = uniform_step(s, 1e-3);
        for (std::size_t k = 0; k < n; ++k) s[k] = s.front() + static_cast<double>(k) * h;
    }
    if (s.size() != n) throw Error("invalid-argument", "grid size differs from frame size");
    FilamentFunction psi;
    psi.grid_step = uniform_step(s, 1e-6);
    psi.grid_start = s.front();
    psi.periodic = periodic;
    for (std::size_t k = 0; k < n; ++k)
        if (!(f.curvature[k] > f.curvature_floor) || !f.torsion_defined(k))
            throw Error("frenet-degenerate", "curvature below floor; use frames instead of ψ");

    std::size_t origin = 0;
    for (std::size_t k = 1; k < n; ++k)
        if (std::abs(s[k]) < std::abs(s[origin])) origin = k;
    std::vector<double> phase(n, 0.0);
    for (std::size_t k = origin + 1; k < n; ++k)
        phase[k] = phase[k - 1] + 0.5 * (f.torsion[k] + f.torsion[k - 1]) * (s[k] - s[k - 1]);
    for (std::size_t k = origin; k-- > 0;)
        phase[k] = phase[k + 1] - 0.5 * (f.torsion[k] + f.torsion[k + 1]) * (s[k + 1] - s[k]);
    psi.values.resize(n);
    for (std::size_t k = 0; k < n; ++k) psi.values[k] = std::polar(f.curvature[k], phase[k]);
    return psi;
}

/// Travelling wave of constant torsion τ₀ and curvature 2ν sech(ν(s − 2τ₀t)).
struct HasimotoSolitonSpec {
    double nu = 1.0;
    double tau0 = 0.0;

    void validate() const {
        if (!(nu > 0.0) || !std::isfinite(nu) || !std::isfinite(tau0))
            throw Error("invalid-argument", "soliton needs nu > 0 and finite tau0");
    }
    double speed() const noexcept { return 2.0 * tau0; }
    double mu() const noexcept { return nu * nu / (nu * nu + tau0 * tau0); }
    double S() const noexcept { return tau0 / nu; }
    double gauge_A() const noexcept { return 2.0 * (tau0 * tau0 - nu * nu); }
};

struct SolitonFrame {
    SampledCurve curve;
    FrenetData frenet;  // exact values; arclength holds the s grid
};

/// Closed-form curve and Frenet frame at time t on the arclength grid `s`.
inline SolitonFrame hasimoto_soliton(const HasimotoSolitonSpec& spec, double t, const std::vector<double>& s) {
    spec.validate();
    if (s.size() < SampledCurve::min_points) throw Error("invalid-argument", "soliton grid needs at least 4 samples");
    const double nu = spec.nu, tau0 = spec.tau0, mu = spec.mu(), S = spec.S();
    const std::size_t n = s.size();
    FrenetData f;
    f.dimension = 3;
    f.arclength = s;
    f.curvature_floor = 0.0;
    f.tangent.resize(n);
    f.normal.resize(n);
    f.binormal.resize(n);
    f.curvature.resize(n);
    f.torsion.assign(n, tau0);
    std::vector<Point> pts(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double eta = nu * (s[k] - 2.0 * tau0 * t);
        const double theta = tau0 * s[k] + (nu * nu - tau0 * tau0) * t;
        const double sech = 1.0 / std::cosh(eta), th = std::tanh(eta);
        const double r = 2.0 * mu / nu * sech;
        const Complex e = std::polar(1.0, theta);
        const Complex yz = r * e;
        const Complex Tyz = -nu * r * Complex(th, -S) * e;
        const Complex Nyz = -(1.0 - 2.0 * mu * Complex(th, -S) * th) * e;
        const Complex Byz = Complex(0.0, mu) * Complex(1.0 - S * S, -2.0 * S * th) * e;
        pts[k] = Point(s[k] - 2.0 * mu / nu * th, yz.real(), yz.imag());
        f.tangent[k] = Point(1.0 - 2.0 * mu * sech * sech, Tyz.real(), Tyz.imag());
        f.normal[k] = Point(2.0 * mu * sech * sech * std::sinh(eta), Nyz.real(), Nyz.imag());
        f.binormal[k] = Point(2.0 * mu * S * sech, Byz.real(), Byz.imag());
        f.curvature[k] = 2.0 * nu * sech;
    }
    return {SampledCurve(3, false, std::move(pts), "hasimoto-soliton"), std::move(f)};
}

/// ψ_a(t, x) = (a/√t)·exp(ix²/4t), gauge −a²/t.
inline FilamentFunction dilating_filament(double a, double t, const std::vector<double>& x) {
    if (!(t > 0.0)) throw Error("at-singularity", "the dilating family is a point mass at t = 0");
    if (!std::isfinite(a)) throw Error("invalid-argument", "a must be finite");
    FilamentFunction psi;
    psi.grid_step = uniform_step(x, 1e-9);
    psi.grid_start = x.front();
    psi.gauge_A = -a * a / t;
    psi.time = t;
    psi.values.resize(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) psi.values[k] = a / std::sqrt(t) * std::polar(1.0, x[k] * x[k] / (4.0 * t));
    return psi;
}

/// c = a/√t and τ = x/2t of the dilating family.
inline std::pair<double, double> dilating_curvature_torsion(double a, double t, double x) {
    if (!(t > 0.0)) throw Error("at-singularity", "the dilating family is a point mass at t = 0");
    return {a / std::sqrt(t), x / (2.0 * t)};
}

}  // namespace geoflow::hasimoto
