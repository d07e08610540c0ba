#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "geoflow/geometry/frenet.hpp"
#include "geoflow/geometry/shapes.hpp"
#include "geoflow/numerics/ode.hpp"

namespace geoflow::csf {

/// One member of the rotating/dilating soliton family A⟨X,T⟩ + B⟨X,N⟩ = κ.
struct SolitonSpec {
    double A = 0.0;
    double B = -1.0;
    double x0 = 1.0;       // initial curvature
    double y0 = 0.0;
    double theta0 = 0.0;   // initial tangent angle
    double s_min = -5.0;
    double s_max = 5.0;
    std::size_t n = 512;

    void validate() const {
        if (!std::isfinite(A) || !std::isfinite(B) || !std::isfinite(x0) || !std::isfinite(y0) || !std::isfinite(theta0))
            throw Error("invalid-argument", "soliton parameters must be finite");
        if (!(s_min < s_max) || !std::isfinite(s_min) || !std::isfinite(s_max))
            throw Error("invalid-argument", "s range must be finite and nonempty");
        if (n < 16) throw Error("invalid-argument", "soliton needs at least 16 samples");
    }
};

enum class SolitonClass { rotating, rotating_expanding, rotating_shrinking, shrinking, expanding, stationary_line };

inline const char* to_string(SolitonClass c) {
    switch (c) {
        case SolitonClass::rotating: return "rotating";
        case SolitonClass::rotating_expanding: return "rotating-expanding";
        case SolitonClass::rotating_shrinking: return "rotating-shrinking";
        case SolitonClass::shrinking: return "shrinking";
        case SolitonClass::expanding: return "expanding";
        case SolitonClass::stationary_line: return "stationary-line";
    }
    return "?";
}

inline SolitonClass classify(double A, double B) {
    if (A != 0.0) {
        if (B == 0.0) return SolitonClass::rotating;
        return B > 0.0 ? SolitonClass::rotating_expanding : SolitonClass::rotating_shrinking;
    }
    if (B == 0.0) return SolitonClass::stationary_line;
    return B > 0.0 ? SolitonClass::expanding : SolitonClass::shrinking;
}

/// (x', y') = (xy + A, −x² − B).
inline std::array<double, 2> soliton_ode_rhs(double x, double y, double A, double B) {
    return {x * y + A, -x * x - B};
}

/// x (= κ), y and tangent angle θ at n equally spaced arclength samples.
struct SolitonProfile {
    std::vector<double> s, x, y, theta;
    bool escaped = false;          // |x| exceeded the escape bound; range truncated
    std::optional<double> escape_low, escape_high;
    std::vector<std::string> flags;

    std::size_t size() const noexcept { return s.size(); }
};

inline constexpr double profile_escape_bound = 1e8;

inline SolitonProfile integrate_profile(const SolitonSpec& spec, double tol = 1e-10) {
    spec.validate();
    const double A = spec.A, B = spec.B;
    auto rhs = [A, B](const ode::State<3>& u, ode::State<3>& du, double) {
        du[0] = u[0] * u[1] + A;
        du[1] = -u[0] * u[0] - B;
        du[2] = u[0];
    };
    auto escape = [](const ode::State<3>& u) { return !(std::abs(u[0]) <= profile_escape_bound) || !std::isfinite(u[1]); };
    const std::vector<double> grid = shapes::linspace(spec.s_min, spec.s_max, spec.n);
    std::vector<double> fwd, bwd;
    for (double s : grid) (s >= 0.0 ? fwd : bwd).push_back(s);
    std::reverse(bwd.begin(), bwd.end());
    const ode::State<3> y0{spec.x0, spec.y0, spec.theta0};

    SolitonProfile p;
    auto back = ode::integrate_dense<3>(rhs, y0, 0.0, bwd, tol, escape);
    auto ahead = ode::integrate_dense<3>(rhs, y0, 0.0, fwd, tol, escape);
    if (back.stopped) { p.escaped = true; p.escape_low = back.stop_at; }
    if (ahead.stopped) { p.escaped = true; p.escape_high = ahead.stop_at; }
    if (p.escaped) p.flags.push_back("profile-escape");
    for (std::size_t k = back.t.size(); k-- > 0;) {
        p.s.push_back(back.t[k]);
        p.x.push_back(back.y[k][0]);
        p.y.push_back(back.y[k][1]);
        p.theta.push_back(back.y[k][2]);
    }
    for (std::size_t k = 0; k < ahead.t.size(); ++k) {
        p.s.push_back(ahead.t[k]);
        p.x.push_back(ahead.y[k][0]);
        p.y.push_back(ahead.y[k][1]);
        p.theta.push_back(ahead.y[k][2]);
    }
    return p;
}

/// X = e^{iθ}(x+iy)/(A−iB), with an optional extra rotation of the whole curve.
inline SampledCurve reconstruct_curve(const SolitonProfile& p, double A, double B, double extra_rotation = 0.0) {
    if (A == 0.0 && B == 0.0) throw Error("degenerate-family", "(A, B) = (0, 0) has no reconstruction");
    const std::complex<double> denom(A, -B);
    std::vector<Point> pts;
    pts.reserve(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
        const std::complex<double> X =
            std::polar(1.0, p.theta[k] + extra_rotation) * std::complex<double>(p.x[k], p.y[k]) / denom;
        pts.emplace_back(X.real(), X.imag(), 0.0);
    }
    return SampledCurve(2, false, std::move(pts), "soliton");
}

/// |A⟨X,T⟩ + B⟨X,N⟩ − κ| per sample.
inline ScalarField soliton_residual(const SampledCurve& c, double A, double B) {
    const FrenetData f = frenet(c);
    ScalarField r(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        r[i] = std::abs(A * c[i].dot(f.tangent[i]) + B * c[i].dot(f.normal[i]) - f.curvature[i]);
    return r;
}

/// Rotation angle f(t) and scale g(t) of the similarity motion.
inline std::pair<double, double> scaling_functions(double A, double B, double t) {
    const double q = 2.0 * B * t + 1.0;
    if (!(q > 0.0)) throw Error("past-singular-time", "2Bt + 1 <= 0");
    const double f = B != 0.0 ? A / (2.0 * B) * std::log(q) : A * t;
    return {f, std::sqrt(q)};
}

/// g(t)·e^{i f(t)}·X: where the soliton sits after time t.
inline SampledCurve similarity_motion(const SampledCurve& c, double A, double B, double t) {
    const auto [f, g] = scaling_functions(A, B, t);
    const std::complex<double> m = g * std::polar(1.0, f);
    std::vector<Point> pts;
    pts.reserve(c.size());
    for (const Point& p : c.points()) {
        const std::complex<double> z = m * std::complex<double>(p.x(), p.y());
        pts.emplace_back(z.real(), z.imag(), 0.0);
    }
    return c.with_points(std::move(pts));
}

/// Translating graph y = t − log cos x.
inline SampledCurve grim_reaper(double t, const std::vector<double>& xs) {
    for (double x : xs)
        if (!(std::abs(x) < std::numbers::pi / 2)) throw Error("outside-domain", "grim reaper needs |x| < π/2");
    return shapes::graph([t](double x) { return t - std::log(std::cos(x)); }, xs, "grim-reaper");
}

/// Outer radius r_max ≥ 1/√−B with r·e^{Br²/2} equal to its value at r_min.
inline double abresch_langer_partner(double B, double r_min) {
    if (!(B < 0.0)) throw Error("outside-annulus-branch", "partner radii need B < 0");
    const double r_star = 1.0 / std::sqrt(-B);
    if (!(r_min > 0.0) || r_min > r_star) throw Error("outside-annulus-branch", "r_min must lie in (0, 1/sqrt(-B)]");
    auto g = [B](double r) { return r * std::exp(B * r * r / 2.0); };
    const double target = g(r_min);
    if (r_min == r_star) return r_star;
    auto h = [&](double r) { return g(r) - target; };
    double hi = 2.0 * r_star;
    while (h(hi) > 0.0) hi *= 2.0;
    std::uintmax_t iters = 400;
    const auto br = boost::math::tools::bisect(h, r_star, hi, boost::math::tools::eps_tolerance<double>(), iters);
    const double a = br.first, b = br.second;
    return std::abs(h(a)) <= std::abs(h(b)) ? a : b;
}

/// Closure data for a shrinker excursion: angle advance between consecutive
/// minima of |X| and the nearest rational p/q (q ≤ max_q) within tolerance.
struct ClosureReport {
    double angle_advance = 0.0;      // radians
    double r_min = 0.0, r_max = 0.0;
    std::optional<std::pair<int, int>> pq;
    bool found_excursion = false;
};

inline ClosureReport detect_closure(double B, double x0, int max_q = 40, double tol = 1e-6, double s_span = 200.0) {
    if (!(B < 0.0) || !(x0 > 0.0)) throw Error("invalid-argument", "closure search needs B < 0 and x0 > 0");
    ClosureReport rep;
    const double Bc = B;
    auto rhs = [Bc](const ode::State<3>& u, ode::State<3>& du, double) {
        du[0] = u[0] * u[1];
        du[1] = -u[0] * u[0] - Bc;
        du[2] = u[0];
    };
    // Start at a y = 0 crossing; minima of |X| are upward crossings of y (B < 0).
    namespace oi = boost::numeric::odeint;
    using S = ode::State<3>;
    auto stepper = oi::make_dense_output(1e-12, 1e-12, oi::runge_kutta_dopri5<S>());
    auto sys = [&](const S& y, S& dy, double t) { rhs(y, dy, t); };
    stepper.initialize(S{x0, 0.0, 0.0}, 0.0, 1e-3);
    std::vector<double> up_theta;
    std::vector<double> radii;
    while (stepper.current_time() < s_span && up_theta.size() < 2) {
        const S prev = stepper.current_state();
        const double t_prev = stepper.current_time();
        stepper.do_step(sys);
        const S& cur = stepper.current_state();
        if ((prev[1] < 0.0 && cur[1] >= 0.0) || (prev[1] > 0.0 && cur[1] <= 0.0)) {
            auto yval = [&](double s) { S st; stepper.calc_state(s, st); return st[1]; };
            std::uintmax_t it = 200;
            const auto br = boost::math::tools::bisect(yval, t_prev, stepper.current_time(),
                                                       boost::math::tools::eps_tolerance<double>(50), it);
            S st;
            stepper.calc_state(0.5 * (br.first + br.second), st);
            radii.push_back(std::abs(st[0]) / std::abs(B));
            if (prev[1] < 0.0) up_theta.push_back(st[2]);
        }
    }
    radii.push_back(x0 / std::abs(B));
    rep.r_min = *std::min_element(radii.begin(), radii.end());
    rep.r_max = *std::max_element(radii.begin(), radii.end());
    if (up_theta.size() < 2) return rep;
    rep.found_excursion = true;
    rep.angle_advance = up_theta[1] - up_theta[0];
    const double ratio = rep.angle_advance / (2.0 * std::numbers::pi);
    for (int q = 1; q <= max_q; ++q) {
        const double p = std::round(ratio * q);
        if (p != 0.0 && std::abs(ratio - p / q) < tol) {
            rep.pq = std::make_pair(static_cast<int>(p), q);
            break;
        }
    }
    return rep;
}

}  // namespace geoflow::csf
