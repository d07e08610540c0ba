#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "geoflow/csf/kernels.hpp"
#include "geoflow/geometry/frenet.hpp"
#include "geoflow/geometry/measures.hpp"
#include "geoflow/trajectory.hpp"

namespace geoflow::csf {

using ScalarSeries = std::vector<double>;

/// |dL/dt + ∫κ²ds| at each interior frame (three-point time derivative).
inline ScalarSeries arclength_rate_residual(const FlowTrajectory& traj) {
    const std::size_t m = traj.size();
    if (m < 3) throw Error("invalid-argument", "need at least three frames");
    std::vector<double> L(m);
    for (std::size_t i = 0; i < m; ++i) L[i] = traj.diagnostics[i].length;
    ScalarSeries out;
    out.reserve(m - 2);
    for (std::size_t i = 1; i + 1 < m; ++i) {
        const auto& d = traj.diagnostics[i];
        const double bend = d.bending ? *d.bending : bending_energy(traj.curves[i]);
        out.push_back(std::abs(central_rate(traj.times, L, i) + bend));
    }
    return out;
}

namespace detail {

// Where the line p + u·dir meets the polyline: the crossing with smallest |u|,
// with curvature interpolated there. Returns false if the line misses.
inline bool normal_line_hit(const SampledCurve& c, const ScalarField& kappa, const Point& p, const Point& dir,
                            double& k_out) {
    double best = std::numeric_limits<double>::infinity();
    const Point nrm(-dir.y(), dir.x(), 0.0);
    for (std::size_t j = 0; j < c.segment_count(); ++j) {
        const std::size_t j1 = c.wrap(static_cast<std::ptrdiff_t>(j) + 1);
        const double a = (c[j] - p).dot(nrm), b = (c[j1] - p).dot(nrm);
        if ((a > 0 && b > 0) || (a < 0 && b < 0) || a == b) continue;
        const double w = a / (a - b);
        const Point q = c[j] + w * (c[j1] - c[j]);
        const double u = (q - p).dot(dir);
        if (std::abs(u) < best) {
            best = std::abs(u);
            k_out = (1.0 - w) * kappa[j] + w * kappa[j1];
        }
    }
    return std::isfinite(best);
}

}  // namespace detail

/// Per-frame max over samples of |κ_t − κ_ss − κ³|.
///
/// Samples are followed along their normal lines into the neighbouring
/// frames, which is how points travel under the flow. `trim` drops that
/// fraction of samples at each end of open curves.
inline ScalarSeries curvature_evolution_residual(const FlowTrajectory& traj, double trim = 0.0) {
    const std::size_t m = traj.size();
    if (m < 3) throw Error("invalid-argument", "need at least three frames");
    for (const auto& c : traj.curves)
        if (c.size() != traj.curves.front().size()) throw Error("unaligned-trajectory", "point counts differ");

    std::vector<FrenetData> fr;
    fr.reserve(m);
    for (const auto& c : traj.curves) fr.push_back(frenet(c));

    ScalarSeries out;
    for (std::size_t i = 1; i + 1 < m; ++i) {
        const SampledCurve& c = traj.curves[i];
        const FrenetData& f = fr[i];
        const ScalarField kss = differentiate(chord_parameter(c), f.curvature, 2);
        const std::size_t n = c.size();
        const std::size_t skip = c.closed() ? 0 : std::max<std::size_t>(1, static_cast<std::size_t>(trim * n));
        double worst = 0.0;
        for (std::size_t j = skip; j + skip < n; ++j) {
            double kb = 0.0, ka = 0.0;
            if (!detail::normal_line_hit(traj.curves[i - 1], fr[i - 1].curvature, c[j], f.normal[j], kb)) continue;
            if (!detail::normal_line_hit(traj.curves[i + 1], fr[i + 1].curvature, c[j], f.normal[j], ka)) continue;
            const std::vector<double> ts{traj.times[i - 1], traj.times[i], traj.times[i + 1]};
            const std::vector<double> ks{kb, f.curvature[j], ka};
            const double kt = central_rate(ts, ks, 1);
            const double k = f.curvature[j];
            worst = std::max(worst, std::abs(kt - kss[j] - k * k * k));
        }
        out.push_back(worst);
    }
    return out;
}

/// Singular-time estimate from the last frame: t + A/2π.
inline double estimate_singular_time(const FlowTrajectory& traj) {
    return traj.final_time() + enclosed_area(traj.final_curve()) / (2.0 * std::numbers::pi);
}

/// Shrink-point estimate: centroid of the last frame.
inline Point estimate_shrink_point(const FlowTrajectory& traj) { return centroid(traj.final_curve()); }

struct RescaledTrajectory {
    double lambda = 1.0;
    FlowTrajectory frames;             // times are rescaled times λ²(t − T)
    std::optional<double> ratio_at_half;   // isoperimetric ratio at rescaled time nearest −1/2
    std::optional<double> time_at_half;
    double centroid_drift = 0.0;       // max |centroid| of rescaled frames
    bool off_center = false;
};

struct RescaleReport {
    std::vector<RescaledTrajectory> runs;
    std::vector<std::string> notices;
};

/// Blow-up view λ·(Γ_{T+λ⁻²τ} − x0) on the rescaled window available in the data.
inline RescaleReport parabolic_rescale(const FlowTrajectory& traj, const Point& x0, double T,
                                       const std::vector<double>& lambdas, double window = 1.0) {
    RescaleReport rep;
    for (double lam : lambdas) {
        RescaledTrajectory r;
        r.lambda = lam;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < traj.size(); ++i) {
            const double tau = lam * lam * (traj.times[i] - T);
            if (tau < -window || tau >= 0.0) continue;
            std::vector<Point> p = traj.curves[i].points();
            for (auto& q : p) q = lam * (q - x0);
            SampledCurve sc = traj.curves[i].with_points(std::move(p));
            if (sc.closed() && sc.planar()) {
                const double drift = centroid(sc).norm();
                r.centroid_drift = std::max(r.centroid_drift, drift);
                if (std::abs(tau + 0.5) < best) {
                    best = std::abs(tau + 0.5);
                    r.ratio_at_half = isoperimetric_ratio(sc);
                    r.time_at_half = tau;
                }
            }
            DiagnosticRecord d;
            d.length = total_length(sc);
            r.frames.push(tau, std::move(sc), d);
        }
        if (r.frames.size() == 0) {
            rep.notices.push_back("lambda " + std::to_string(lam) + " skipped: empty rescaled window");
            continue;
        }
        r.off_center = r.centroid_drift > 0.1;
        rep.runs.push_back(std::move(r));
    }
    return rep;
}

}  // namespace geoflow::csf
