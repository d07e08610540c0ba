#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "geoflow/csf/kernels.hpp"
#include "geoflow/geometry/frenet.hpp"
#include "geoflow/geometry/measures.hpp"
#include "geoflow/geometry/resample.hpp"
#include "geoflow/trajectory.hpp"

namespace geoflow::csf {

/// Space-time centre of the Huisken kernel.
struct KernelCenter {
    Point x0 = Point::Zero();
    double t0 = 0.0;
};

struct StepOptions {
    double dt = 0.0;                  // fixed step; 0 selects CFL mode
    double cfl = 0.25;                // dt = cfl·Δs_min²/2 in CFL mode
    std::size_t resample_every = 10;  // 0 disables resampling
    std::size_t n_points = 0;         // 0 keeps the input sample count
    double stop_length = 0.0;
    double stop_time = std::numeric_limits<double>::infinity();
    std::size_t record_every = 1;
    std::size_t max_steps = 50'000'000;
    std::optional<KernelCenter> huisken;
    bool distance_ratio = false;

    void validate() const {
        if (dt < 0.0 || !std::isfinite(dt)) throw Error("invalid-argument", "dt must be finite and >= 0");
        if (dt == 0.0 && !(cfl > 0.0 && cfl <= 1.0)) throw Error("invalid-argument", "cfl must lie in (0, 1]");
        if (record_every == 0) throw Error("invalid-argument", "record_every must be positive");
        if (!(stop_time > 0.0)) throw Error("invalid-argument", "stop_time must be positive");
    }
};

/// γ_ss at every sample from the nonuniform three-point stencil.
inline VectorField second_arclength_derivative(const SampledCurve& c) {
    return differentiate(chord_parameter(c), c.points(), 2);
}

/// Largest stable explicit step for the discrete curve Laplacian.
inline double stable_step(const SampledCurve& c) {
    const double h = min_spacing(c);
    return 0.5 * h * h;
}

/// One explicit Euler step p ← p + dt·γ_ss. Open ends stay fixed.
inline SampledCurve csf_step(const SampledCurve& c, double dt) {
    if (!c.planar()) throw Error("invalid-argument", "curve shortening flow needs a planar curve");
    if (dt > stable_step(c) * (1.0 + 1e-12)) throw Error("cfl-violation", "dt exceeds Δs²/2");
    const VectorField lap = second_arclength_derivative(c);
    std::vector<Point> p = c.points();
    const std::size_t first = c.closed() ? 0 : 1;
    const std::size_t last = c.closed() ? p.size() : p.size() - 1;
    for (std::size_t i = first; i < last; ++i) {
        p[i] += dt * lap[i];
        if (!p[i].allFinite()) throw Error("blow-up-detected", "non-finite coordinate");
    }
    try {
        return c.with_points(std::move(p));
    } catch (const Error&) {
        throw Error("blow-up-detected", "samples collapsed");
    }
}

/// Diagnostics of a single frame.
inline DiagnosticRecord csf_record(const SampledCurve& c, double t, const FrenetData& f, const StepOptions& opts) {
    DiagnosticRecord d;
    d.length = total_length(c);
    ScalarField k2(f.curvature.size());
    d.max_curvature = 0.0;
    d.min_curvature = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k2.size(); ++i) {
        k2[i] = f.curvature[i] * f.curvature[i];
        d.max_curvature = std::max(d.max_curvature, std::abs(f.curvature[i]));
        d.min_curvature = std::min(d.min_curvature, f.curvature[i]);
    }
    d.bending = integrate_along(c, k2);
    if (opts.huisken && c.closed() && t < opts.huisken->t0)
        d.huisken = huisken_functional(c, t, opts.huisken->x0, opts.huisken->t0);
    if (opts.distance_ratio && c.closed()) d.distance_ratio = distance_ratio(c);
    return d;
}

/// Run the flow until stop_time, stop_length, or the resolution limit
/// max|κ|·Δs > 1 with Δs the initial mean spacing.
inline FlowTrajectory evolve(const SampledCurve& input, const StepOptions& opts) {
    opts.validate();
    SampledCurve c = opts.n_points ? resample_arclength(input, opts.n_points) : input;
    const std::size_t n = c.size();
    const double ds_ref = mean_spacing(c);

    FlowTrajectory traj;
    double t = 0.0;
    FrenetData f = frenet(c);
    traj.push(t, c, csf_record(c, t, f, opts));

    for (std::size_t step = 1;; ++step) {
        if (step > opts.max_steps) {
            traj.stop_reason = "max-steps";
            break;
        }
        double dt = opts.dt > 0.0 ? opts.dt : opts.cfl * stable_step(c);
        bool at_horizon = false;
        if (t + dt >= opts.stop_time - 1e-6 * dt) {
            dt = opts.stop_time - t;
            at_horizon = true;
        }
        c = csf_step(c, dt);
        t = at_horizon ? opts.stop_time : t + dt;
        traj.steps = step;
        if (opts.resample_every && step % opts.resample_every == 0) c = resample_arclength(c, n, Interpolation::cubic);
        f = frenet(c);

        std::string reason;
        if (at_horizon) reason = "stop-time";
        else if (opts.stop_length > 0.0 && total_length(c) <= opts.stop_length) reason = "stop-length";
        else if (max_abs(f.curvature) * ds_ref > 1.0) reason = "approaching-singularity";

        if (!reason.empty() || step % opts.record_every == 0) traj.push(t, c, csf_record(c, t, f, opts));
        if (!reason.empty()) {
            traj.stop_reason = reason;
            break;
        }
    }
    return traj;
}

}  // namespace geoflow::csf
