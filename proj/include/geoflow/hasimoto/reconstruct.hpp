#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "geoflow/hasimoto/filament.hpp"

namespace geoflow::hasimoto {

using ComplexVector = Eigen::Vector3cd;

/// Tangent, complex normal 𝔑 = (N + iB)·e^{i∫τ}, and position.
struct FrameState {
    Point T = Point::UnitX();
    ComplexVector N = ComplexVector(Complex(0, 0), Complex(1, 0), Complex(0, 1));
    Point position = Point::Zero();

    /// Largest violation of |T| = 1, 𝔑·𝔑 = 0, 𝔑·𝔑̄ = 2, 𝔑·T = 0.
    double defect() const {
        double d = std::abs(T.norm() - 1.0);
        d = std::max(d, std::abs(Complex((N.transpose() * N)(0, 0))));
        d = std::max(d, std::abs(N.squaredNorm() - 2.0));
        d = std::max(d, std::abs(Complex((N.transpose() * T.cast<Complex>())(0, 0))));
        return d;
    }
};

/// Frame at sample i of a Frenet field, with phase ∫τ equal to `phase`.
inline FrameState seed_from_frenet(const FrenetData& f, const SampledCurve& c, std::size_t i, double phase = 0.0) {
    FrameState s;
    s.T = f.tangent[i];
    s.N = (f.normal[i].cast<Complex>() + Complex(0, 1) * f.binormal[i].cast<Complex>()) * std::polar(1.0, phase);
    s.position = c[i];
    return s;
}

struct Reconstruction {
    SampledCurve curve;
    std::vector<FrameState> frames;
};

namespace detail {

inline void orthonormalize(FrameState& f) {
    f.T.normalize();
    Point e1 = f.N.real(), e2 = f.N.imag();
    e1 -= e1.dot(f.T) * f.T;
    e1.normalize();
    e2 -= e2.dot(f.T) * f.T + e2.dot(e1) * e1;
    e2.normalize();
    f.N = e1.cast<Complex>() + Complex(0, 1) * e2.cast<Complex>();
}

// ψ at fractional index u by cubic Lagrange interpolation.
inline Complex psi_at(const FilamentFunction& psi, double u) {
    const auto n = static_cast<std::ptrdiff_t>(psi.size());
    auto first = static_cast<std::ptrdiff_t>(std::floor(u)) - 1;
    if (!psi.periodic) first = std::clamp<std::ptrdiff_t>(first, 0, n - 4);
    Complex out = 0.0;
    for (int a = 0; a < 4; ++a) {
        double w = 1.0;
        for (int b = 0; b < 4; ++b)
            if (b != a) w *= (u - static_cast<double>(first + b)) / static_cast<double>(a - b);
        std::ptrdiff_t idx = first + a;
        if (psi.periodic) idx = ((idx % n) + n) % n;
        out += w * psi.values[static_cast<std::size_t>(idx)];
    }
    return out;
}

}  // namespace detail

/// Integrate T_s = Re(ψ̄𝔑), 𝔑_s = −ψT from the seed at sample 0 with RK4,
/// re-orthonormalizing every 16 steps (every step once the drift exceeds
/// 1e-10). Positions by the trapezoid rule on T.
inline Reconstruction reconstruct_frame(const FilamentFunction& psi, const FrameState& seed) {
    psi.validate();
    if (!(seed.defect() <= 1e-6)) throw Error("bad-seed-frame", "seed violates the frame relations");
    const std::size_t n = psi.size();
    const double h = psi.grid_step;
    auto rhs = [](const Complex& p, const Point& T, const ComplexVector& N, Point& dT, ComplexVector& dN) {
        dT = (std::conj(p) * N).real();
        dN = -p * T.cast<Complex>();
    };

    Reconstruction out;
    out.frames.reserve(n);
    FrameState cur = seed;
    out.frames.push_back(cur);
    std::size_t every = 16;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const Complex p0 = psi.values[k], pm = detail::psi_at(psi, static_cast<double>(k) + 0.5),
                      p1 = psi.values[k + 1];
        Point t1, t2, t3, t4;
        ComplexVector n1, n2, n3, n4;
        rhs(p0, cur.T, cur.N, t1, n1);
        rhs(pm, cur.T + 0.5 * h * t1, cur.N + 0.5 * h * n1, t2, n2);
        rhs(pm, cur.T + 0.5 * h * t2, cur.N + 0.5 * h * n2, t3, n3);
        rhs(p1, cur.T + h * t3, cur.N + h * n3, t4, n4);
        FrameState next;
        next.T = cur.T + h / 6.0 * (t1 + 2.0 * t2 + 2.0 * t3 + t4);
        next.N = cur.N + h / 6.0 * (n1 + 2.0 * n2 + 2.0 * n3 + n4);
        next.position = cur.position + 0.5 * h * (cur.T + next.T);
        if (next.defect() > 1e-10) every = 1;
        if ((k + 1) % every == 0) {
            detail::orthonormalize(next);
            next.position = cur.position + 0.5 * h * (cur.T + next.T);
        }
        cur = next;
        out.frames.push_back(cur);
    }
    std::vector<Point> pts(n);
    for (std::size_t k = 0; k < n; ++k) pts[k] = out.frames[k].position;
    out.curve = SampledCurve(3, false, std::move(pts), "reconstruction");
    return out;
}

}  // namespace geoflow::hasimoto
