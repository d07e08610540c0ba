#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "geoflow/geometry/curve.hpp"

namespace geoflow::vfe {

struct BiotSavartOptions {
    double epsilon = 1e-2;         // inner arc-distance cutoff
    double outer = 1.0;            // outer arc-distance cutoff
    std::size_t quadrature_n = 32; // 20-point Gauss panels per side, uniform in log distance

    void validate() const {
        if (!(epsilon > 0.0 && epsilon < outer) || !std::isfinite(outer))
            throw Error("invalid-argument", "need 0 < epsilon < outer");
        if (quadrature_n == 0) throw Error("invalid-argument", "quadrature_n must be positive");
    }
};

namespace detail {

// Smooth interpolant through the samples, parametrized by σ ∈ [0, L) with
// sample k at σ = k·L/m. Trigonometric for closed curves, six-point Lagrange
// for open ones.
class CurveInterpolant {
public:
    explicit CurveInterpolant(const SampledCurve& c) : c_(c), n_(c.size()), closed_(c.closed()) {
        L_ = total_length(c);
        h_ = L_ / static_cast<double>(c.segment_count());
        if (closed_) {
            coef_.assign(n_, {});
            for (std::size_t k = 0; k < n_; ++k) {
                const int m = freq(k);
                Eigen::Vector3cd a = Eigen::Vector3cd::Zero();
                for (std::size_t j = 0; j < n_; ++j) {
                    const double ph = -2.0 * std::numbers::pi * m * static_cast<double>(j) / static_cast<double>(n_);
                    a += std::polar(1.0, ph) * c[j].cast<std::complex<double>>();
                }
                coef_[k] = a / static_cast<double>(n_);
            }
        }
    }

    double length() const noexcept { return L_; }
    double spacing() const noexcept { return h_; }

    /// Position and derivative d/dσ.
    std::pair<Point, Point> eval(double sigma) const {
        if (closed_) {
            Eigen::Vector3cd p = Eigen::Vector3cd::Zero(), d = Eigen::Vector3cd::Zero();
            const double w = 2.0 * std::numbers::pi / L_;
            for (std::size_t k = 0; k < n_; ++k) {
                const int m = freq(k);
                // Split the Nyquist mode symmetrically so the interpolant is real.
                const double scale = (n_ % 2 == 0 && static_cast<std::size_t>(std::abs(m)) == n_ / 2) ? 0.5 : 1.0;
                const std::complex<double> e = scale * std::polar(1.0, w * m * sigma);
                p += e * coef_[k];
                d += std::complex<double>(0.0, w * m) * e * coef_[k];
                if (scale == 0.5) {
                    const std::complex<double> e2 = 0.5 * std::polar(1.0, -w * m * sigma);
                    p += e2 * coef_[k];
                    d += std::complex<double>(0.0, -w * m) * e2 * coef_[k];
                }
            }
            return {p.real(), d.real()};
        }
        const double u = sigma / h_;
        auto first = static_cast<std::ptrdiff_t>(std::floor(u)) - 2;
        first = std::clamp<std::ptrdiff_t>(first, 0, static_cast<std::ptrdiff_t>(n_) - 6);
        Point p = Point::Zero(), d = Point::Zero();
        for (int a = 0; a < 6; ++a) {
            double w = 1.0, dw = 0.0;
            for (int b = 0; b < 6; ++b) {
                if (b == a) continue;
                const double den = static_cast<double>(a - b);
                const double num = u - static_cast<double>(first + b);
                dw = dw * num / den + w / den;
                w *= num / den;
            }
            p += w * c_[static_cast<std::size_t>(first + a)];
            d += (dw / h_) * c_[static_cast<std::size_t>(first + a)];
        }
        return {p, d};
    }

private:
    int freq(std::size_t k) const {
        return k <= n_ / 2 ? static_cast<int>(k) : static_cast<int>(k) - static_cast<int>(n_);
    }

    const SampledCurve& c_;
    std::size_t n_;
    bool closed_;
    double L_ = 0.0, h_ = 0.0;
    std::vector<Eigen::Vector3cd> coef_;
};

}  // namespace detail

/// Induced velocity at sample i from the arc ε ≤ |ζ| ≤ outer on either side,
/// ∫ γ'×(x − γ)/|x − γ|³ dζ (strength normalized to 4π).
inline Point biot_savart_velocity(const SampledCurve& c, std::size_t i, const BiotSavartOptions& opts = {}) {
    opts.validate();
    if (c.dimension() != 3) throw Error("invalid-argument", "Biot-Savart needs a space curve");
    if (i >= c.size()) throw Error("invalid-argument", "sample index out of range");
    const detail::CurveInterpolant f(c);
    if (!c.closed() && c.size() < 6) throw Error("invalid-argument", "open curves need at least 6 samples");
    const Point x = c[i];
    const double s0 = static_cast<double>(i) * f.spacing();
    using Rule = boost::math::quadrature::gauss<double, 20>;
    const auto& xs = Rule::abscissa();
    const auto& ws = Rule::weights();

    Point u = Point::Zero();
    for (int side : {-1, 1}) {
        double reach = opts.outer;
        if (c.closed()) reach = std::min(reach, 0.5 * f.length());
        else reach = std::min(reach, side > 0 ? f.length() - s0 : s0);
        if (!(reach > opts.epsilon)) continue;
        const double a = std::log(opts.epsilon), b = std::log(reach);
        const double panel = (b - a) / static_cast<double>(opts.quadrature_n);
        for (std::size_t q = 0; q < opts.quadrature_n; ++q) {
            const double mid = a + (static_cast<double>(q) + 0.5) * panel;
            for (std::size_t k = 0; k < xs.size(); ++k) {
                for (double sgn : {-1.0, 1.0}) {
                    if (xs[k] == 0.0 && sgn < 0) continue;
                    const double lg = mid + sgn * xs[k] * panel / 2;
                    const double r = std::exp(lg);
                    const auto [g, dg] = f.eval(s0 + side * r);
                    const Point d = x - g;
                    const double dist = d.norm();
                    // dζ = r d(log r)
                    u += (ws[k] * panel / 2 * r / (dist * dist * dist)) * dg.cross(d);
                }
            }
        }
    }
    return u;
}

}  // namespace geoflow::vfe
