#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "geoflow/geometry/frenet.hpp"
#include "geoflow/trajectory.hpp"

namespace geoflow::vfe {

/// Worst pointwise mismatch of the four Frenet evolution laws at one frame.
struct FrenetResidual {
    double time = 0.0;
    double res_kappa = 0.0, res_tau = 0.0, res_N = 0.0, res_B = 0.0;
    double max_kappa_rate = 0.0, max_tau_rate = 0.0;  // size of the left-hand sides
    bool skipped = false;
    std::string flag;  // "frenet-degenerate" when skipped
};

struct ResidualOptions {
    std::size_t trim = 4;  // samples dropped at each end of open curves
    // Sample window [first, last); overrides trim when set.
    std::optional<std::pair<std::size_t, std::size_t>> samples;
};

namespace detail {

inline std::pair<std::size_t, std::size_t> residual_window(const SampledCurve& c, const ResidualOptions& o) {
    if (o.samples) {
        if (o.samples->first >= o.samples->second || o.samples->second > c.size())
            throw Error("invalid-argument", "sample window out of range");
        return *o.samples;
    }
    if (c.closed()) return {0, c.size()};
    if (2 * o.trim >= c.size()) throw Error("invalid-argument", "trim removes every sample");
    return {o.trim, c.size() - o.trim};
}

inline void require_aligned(const FlowTrajectory& traj) {
    for (const auto& c : traj.curves)
        if (c.size() != traj.curves.front().size()) throw Error("unaligned-trajectory", "frames differ in sample count");
}

// Three-point weights for d/dt at frame k.
inline std::array<double, 3> rate_weights(const std::vector<double>& t, std::size_t k) {
    const double h0 = t[k] - t[k - 1], h1 = t[k + 1] - t[k];
    return {-h1 / (h0 * (h0 + h1)), (h1 - h0) / (h0 * h1), h0 / (h1 * (h0 + h1))};
}

}  // namespace detail

/// Residuals of
///   κ_t = −(2κ_sτ + κτ_s),  τ_t = κκ_s − F_s,
///   N_t = τκT − FB,         B_t = −κ_sT + FN,   F = τ² − κ_ss/κ,
/// at every interior frame. Samples keep their index across frames.
inline std::vector<FrenetResidual> frenet_evolution_residuals(const FlowTrajectory& traj,
                                                              const ResidualOptions& opts = {}) {
    detail::require_aligned(traj);
    std::vector<FrenetResidual> out;
    if (traj.size() < 3) return out;
    std::vector<FrenetData> fr;
    fr.reserve(traj.size());
    for (const auto& c : traj.curves) {
        if (c.dimension() != 3) throw Error("invalid-argument", "Frenet evolution laws need space curves");
        fr.push_back(frenet(c));
    }
    for (std::size_t k = 1; k + 1 < traj.size(); ++k) {
        FrenetResidual r;
        r.time = traj.times[k];
        const auto [lo, hi] = detail::residual_window(traj.curves[k], opts);
        for (std::size_t j = k - 1; j <= k + 1 && !r.skipped; ++j)
            for (std::size_t i = lo; i < hi; ++i)
                if (!(std::abs(fr[j].curvature[i]) > fr[j].curvature_floor) || !fr[j].torsion_defined(i)) {
                    r.skipped = true;
                    r.flag = "frenet-degenerate";
                    break;
                }
        if (r.skipped) {
            out.push_back(r);
            continue;
        }
        const auto w = detail::rate_weights(traj.times, k);
        const FrenetData &a = fr[k - 1], &f = fr[k], &b = fr[k + 1];
        const CurveParameter p = chord_parameter(traj.curves[k]);
        const ScalarField ks = differentiate(p, f.curvature, 1);
        const ScalarField kss = differentiate(p, f.curvature, 2);
        const ScalarField ksss = differentiate(p, f.curvature, 3);
        const ScalarField ts = differentiate(p, f.torsion, 1);
        for (std::size_t i = lo; i < hi; ++i) {
            const double kap = f.curvature[i], tau = f.torsion[i];
            const double kt = w[0] * a.curvature[i] + w[1] * kap + w[2] * b.curvature[i];
            const double tt = w[0] * a.torsion[i] + w[1] * tau + w[2] * b.torsion[i];
            const Point Nt = w[0] * a.normal[i] + w[1] * f.normal[i] + w[2] * b.normal[i];
            const Point Bt = w[0] * a.binormal[i] + w[1] * f.binormal[i] + w[2] * b.binormal[i];
            const double F = tau * tau - kss[i] / kap;
            const double Fs = 2.0 * tau * ts[i] - ksss[i] / kap + kss[i] * ks[i] / (kap * kap);
            r.res_kappa = std::max(r.res_kappa, std::abs(kt + 2.0 * ks[i] * tau + ts[i] * kap));
            r.res_tau = std::max(r.res_tau, std::abs(tt - (kap * ks[i] - Fs)));
            r.res_N = std::max(r.res_N, (Nt - (tau * kap * f.tangent[i] - F * f.binormal[i])).norm());
            r.res_B = std::max(r.res_B, (Bt - (-ks[i] * f.tangent[i] + F * f.normal[i])).norm());
            r.max_kappa_rate = std::max(r.max_kappa_rate, std::abs(kt));
            r.max_tau_rate = std::max(r.max_tau_rate, std::abs(tt));
        }
        out.push_back(r);
    }
    return out;
}

/// max |∂t(γ_s) − ∂s(γ_t)| over interior frames and windowed samples.
inline double commutator_residual(const FlowTrajectory& traj, const ResidualOptions& opts = {}) {
    detail::require_aligned(traj);
    double worst = 0.0;
    if (traj.size() < 3) return worst;
    std::vector<VectorField> gs;
    for (const auto& c : traj.curves) gs.push_back(differentiate(chord_parameter(c), c.points(), 1));
    for (std::size_t k = 1; k + 1 < traj.size(); ++k) {
        const auto w = detail::rate_weights(traj.times, k);
        const auto& c0 = traj.curves[k - 1].points();
        const auto& c1 = traj.curves[k].points();
        const auto& c2 = traj.curves[k + 1].points();
        VectorField vel(c1.size());
        for (std::size_t i = 0; i < vel.size(); ++i) vel[i] = w[0] * c0[i] + w[1] * c1[i] + w[2] * c2[i];
        const VectorField vs = differentiate(chord_parameter(traj.curves[k]), vel, 1);
        const auto [lo, hi] = detail::residual_window(traj.curves[k], opts);
        for (std::size_t i = lo; i < hi; ++i) {
            const Point gst = w[0] * gs[k - 1][i] + w[1] * gs[k][i] + w[2] * gs[k + 1][i];
            worst = std::max(worst, (gst - vs[i]).norm());
        }
    }
    return worst;
}

/// Best rigid velocity field p ↦ ω×p + v for the displacement (c1 − c0)/dt.
struct RigidMotionFit {
    Point omega = Point::Zero();
    Point v = Point::Zero();
    double rms_residual = 0.0;
    double rms_field = 0.0;  // rms of the displacement field itself
};

/// Fitted at the midpoints (c0 + c1)/2, which makes pure rotations exact to O(dt²).
inline RigidMotionFit rigid_motion_fit(const SampledCurve& c0, const SampledCurve& c1, double dt) {
    if (c0.size() != c1.size()) throw Error("unaligned-trajectory", "curves differ in sample count");
    if (!(dt > 0.0)) throw Error("invalid-argument", "dt must be positive");
    const std::size_t n = c0.size();
    std::vector<Point> p(n), u(n);
    Point pbar = Point::Zero(), ubar = Point::Zero();
    for (std::size_t i = 0; i < n; ++i) {
        p[i] = 0.5 * (c0[i] + c1[i]);
        u[i] = (c1[i] - c0[i]) / dt;
        pbar += p[i];
        ubar += u[i];
    }
    pbar /= static_cast<double>(n);
    ubar /= static_cast<double>(n);
    Eigen::Matrix3d M = Eigen::Matrix3d::Zero();
    Point rhs = Point::Zero();
    for (std::size_t i = 0; i < n; ++i) {
        const Point q = p[i] - pbar;
        M += q.squaredNorm() * Eigen::Matrix3d::Identity() - q * q.transpose();
        rhs += q.cross(u[i] - ubar);
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(M);
    if (!(eig.eigenvalues()(0) > 1e-12 * M.trace())) throw Error("rank-deficient", "points are collinear");
    RigidMotionFit fit;
    fit.omega = M.ldlt().solve(rhs);
    fit.v = ubar - fit.omega.cross(pbar);
    double res = 0.0, field = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        res += (u[i] - fit.omega.cross(p[i]) - fit.v).squaredNorm();
        field += u[i].squaredNorm();
    }
    fit.rms_residual = std::sqrt(res / static_cast<double>(n));
    fit.rms_field = std::sqrt(field / static_cast<double>(n));
    return fit;
}

}  // namespace geoflow::vfe
