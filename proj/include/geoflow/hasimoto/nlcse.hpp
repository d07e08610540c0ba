#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "geoflow/hasimoto/filament.hpp"

namespace geoflow::hasimoto {

namespace detail {

inline void nonlinear_phase(FilamentFunction& psi, double dt) {
    for (Complex& v : psi.values) v *= std::polar(1.0, 0.5 * (std::norm(v) + psi.gauge_A) * dt);
}

// ψ_t = iψ_ss exactly in Fourier space.
inline void linear_spectral(FilamentFunction& psi, double dt) {
    const std::size_t n = psi.size();
    Eigen::FFT<double> fft;
    std::vector<Complex> hat;
    fft.fwd(hat, psi.values);
    const double L = psi.grid_step * static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double m = k <= n / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n);
        const double w = 2.0 * std::numbers::pi * m / L;
        hat[k] *= std::polar(1.0, -w * w * dt);
    }
    fft.inv(psi.values, hat);
}

// Crank–Nicolson for ψ_t = iψ_ss with ψ = 0 at both end samples.
inline void linear_crank_nicolson(FilamentFunction& psi, double dt) {
    const std::size_t n = psi.size();
    const Complex r(0.0, dt / (2.0 * psi.grid_step * psi.grid_step));
    std::vector<Complex>& u = psi.values;
    u.front() = 0.0;
    u.back() = 0.0;
    const std::size_t m = n - 2;
    std::vector<Complex> rhs(m), c(m), d(m);
    for (std::size_t i = 0; i < m; ++i) rhs[i] = u[i + 1] + r * (u[i] - 2.0 * u[i + 1] + u[i + 2]);
    // (1 + 2r)x_i − r(x_{i−1} + x_{i+1}) = rhs_i
    const Complex diag = 1.0 + 2.0 * r, off = -r;
    c[0] = off / diag;
    d[0] = rhs[0] / diag;
    for (std::size_t i = 1; i < m; ++i) {
        const Complex den = diag - off * c[i - 1];
        c[i] = off / den;
        d[i] = (rhs[i] - off * d[i - 1]) / den;
    }
    u[m] = d[m - 1];
    for (std::size_t i = m - 1; i-- > 0;) u[i + 1] = d[i] - c[i] * u[i + 2];
}

}  // namespace detail

/// One Strang step of (1/i)ψ_t = ψ_ss + ½(|ψ|² + A)ψ: half nonlinear phase,
/// full dispersion (spectral when periodic, Crank–Nicolson with zero ends
/// otherwise), half nonlinear phase.
inline FilamentFunction nlcse_step(FilamentFunction psi, double dt) {
    psi.validate();
    if (!(dt > 0.0) || !std::isfinite(dt)) throw Error("invalid-argument", "dt must be positive");
    detail::nonlinear_phase(psi, dt / 2);
    if (psi.periodic) {
        detail::linear_spectral(psi, dt);
    } else {
        if (dt > 10.0 * psi.grid_step * psi.grid_step) {
            bool seen = false;
            for (const auto& f : psi.flags) seen = seen || f == "accuracy-degraded";
            if (!seen) psi.flags.push_back("accuracy-degraded");
        }
        detail::linear_crank_nicolson(psi, dt);
    }
    detail::nonlinear_phase(psi, dt / 2);
    psi.time += dt;
    return psi;
}

/// Advance by `steps` equal steps to time psi.time + steps·dt.
inline FilamentFunction nlcse_evolve(FilamentFunction psi, double dt, std::size_t steps) {
    for (std::size_t k = 0; k < steps; ++k) psi = nlcse_step(std::move(psi), dt);
    return psi;
}

/// ∫|ψ|² ds (rectangle rule; exact for trigonometric data on periodic grids).
inline double mass(const FilamentFunction& psi) {
    double m = 0.0;
    for (const Complex& v : psi.values) m += std::norm(v);
    return m * psi.grid_step;
}

/// |iψ_t + ψ_ss + ½(|ψ|² + A)ψ| at the centre frame of five snapshots spaced
/// `delta` apart in time, using fourth-order differences in s and t. The two
/// outermost samples at each end are left at zero.
inline std::vector<double> nlcse_residual(const std::array<FilamentFunction, 5>& frames, double delta) {
    const FilamentFunction& c = frames[2];
    const std::size_t n = c.size();
    for (const auto& f : frames)
        if (f.size() != n) throw Error("unaligned-trajectory", "snapshots differ in sample count");
    const double h = c.grid_step;
    std::vector<double> r(n, 0.0);
    for (std::size_t k = 2; k + 2 < n; ++k) {
        const Complex pt = (frames[0].values[k] - 8.0 * frames[1].values[k] + 8.0 * frames[3].values[k] -
                            frames[4].values[k]) /
                           (12.0 * delta);
        const auto& u = c.values;
        const Complex pss = (-u[k - 2] + 16.0 * u[k - 1] - 30.0 * u[k] + 16.0 * u[k + 1] - u[k + 2]) / (12.0 * h * h);
        r[k] = std::abs(Complex(0.0, 1.0) * pt + pss + 0.5 * (std::norm(u[k]) + c.gauge_A) * u[k]);
    }
    return r;
}

}  // namespace geoflow::hasimoto
