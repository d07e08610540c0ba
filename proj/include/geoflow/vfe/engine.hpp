#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "geoflow/geometry/frenet.hpp"
#include "geoflow/geometry/measures.hpp"
#include "geoflow/geometry/resample.hpp"
#include "geoflow/trajectory.hpp"

namespace geoflow::vfe {

struct StepOptions {
    double dt = 0.0;                 // fixed step; 0 selects CFL mode
    double cfl = 0.1;                // dt ≤ cfl·Δs_min²
    std::size_t resample_every = 0;  // the flow preserves arclength, so off by default
    std::size_t n_points = 0;
    double stop_time = std::numeric_limits<double>::infinity();
    std::size_t record_every = 1;
    std::size_t max_steps = 50'000'000;

    void validate() const {
        if (dt < 0.0 || !std::isfinite(dt)) throw Error("invalid-argument", "dt must be finite and >= 0");
        if (!(cfl > 0.0 && cfl <= 1.0)) throw Error("invalid-argument", "cfl must lie in (0, 1]");
        if (record_every == 0) throw Error("invalid-argument", "record_every must be positive");
        if (!(stop_time > 0.0)) throw Error("invalid-argument", "stop_time must be positive");
    }
};

/// γ_s × γ_ss per sample (equals κB on an arclength-sampled curve).
inline VectorField binormal_velocity(const SampledCurve& c) {
    const CurveDerivatives d = curve_derivatives(c, false);
    VectorField v(c.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = d.d1[i].cross(d.d2[i]);
    return v;
}

inline double stable_step(const SampledCurve& c, double cfl) {
    const double h = min_spacing(c);
    return cfl * h * h;
}

namespace detail {

inline SampledCurve shifted(const SampledCurve& c, const VectorField& k, double a) {
    std::vector<Point> p = c.points();
    for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] += a * k[i];
        if (!p[i].allFinite()) throw Error("blow-up-detected", "non-finite coordinate");
    }
    try {
        return c.with_points(std::move(p));
    } catch (const Error&) {
        throw Error("blow-up-detected", "samples collapsed");
    }
}

}  // namespace detail

/// Classical RK4 step on all sample positions. `cfl` bounds dt by cfl·Δs².
inline SampledCurve vfe_step(const SampledCurve& c, double dt, double cfl = 0.1) {
    if (c.dimension() != 3) throw Error("invalid-argument", "binormal flow needs a space curve");
    if (dt > stable_step(c, cfl) * (1.0 + 1e-12)) throw Error("cfl-violation", "dt exceeds cfl·Δs²");
    const VectorField k1 = binormal_velocity(c);
    const VectorField k2 = binormal_velocity(detail::shifted(c, k1, dt / 2));
    const VectorField k3 = binormal_velocity(detail::shifted(c, k2, dt / 2));
    const VectorField k4 = binormal_velocity(detail::shifted(c, k3, dt));
    VectorField k(c.size());
    for (std::size_t i = 0; i < k.size(); ++i) k[i] = (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) / 6.0;
    return detail::shifted(c, k, dt);
}

inline DiagnosticRecord vfe_record(const SampledCurve& c, const FrenetData& f) {
    DiagnosticRecord d;
    d.length = total_length(c);
    d.max_curvature = max_abs(f.curvature);
    d.min_curvature = *std::min_element(f.curvature.begin(), f.curvature.end());
    d.max_torsion = max_abs(f.torsion);
    return d;
}

/// Integrate to stop_time. Stops early with "max-steps".
inline FlowTrajectory evolve(const SampledCurve& input, const StepOptions& opts) {
    opts.validate();
    if (input.dimension() != 3) throw Error("invalid-argument", "binormal flow needs a space curve");
    if (!std::isfinite(opts.stop_time)) throw Error("invalid-argument", "binormal flow needs a finite stop_time");
    SampledCurve c = opts.n_points ? resample_arclength(input, opts.n_points, Interpolation::cubic) : input;
    const std::size_t n = c.size();

    FlowTrajectory traj;
    double t = 0.0;
    traj.push(t, c, vfe_record(c, frenet(c)));
    for (std::size_t step = 1;; ++step) {
        if (step > opts.max_steps) {
            traj.stop_reason = "max-steps";
            break;
        }
        double dt = opts.dt > 0.0 ? opts.dt : stable_step(c, opts.cfl);
        bool at_horizon = false;
        if (t + dt >= opts.stop_time - 1e-6 * dt) {
            dt = opts.stop_time - t;
            at_horizon = true;
        }
        c = vfe_step(c, dt, opts.cfl);
        t = at_horizon ? opts.stop_time : t + dt;
        traj.steps = step;
        if (opts.resample_every && step % opts.resample_every == 0) c = resample_arclength(c, n, Interpolation::cubic);
        if (at_horizon || step % opts.record_every == 0) traj.push(t, c, vfe_record(c, frenet(c)));
        if (at_horizon) {
            traj.stop_reason = "stop-time";
            break;
        }
    }
    return traj;
}

}  // namespace geoflow::vfe
