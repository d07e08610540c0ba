#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include <boost/numeric/odeint.hpp>

namespace geoflow::ode {

template <std::size_t N>
using State = std::array<double, N>;

/// Result of a dense integration: states at the requested abscissae, up to
/// the point where the integration stopped.
template <std::size_t N>
struct DenseResult {
    std::vector<double> t;
    std::vector<State<N>> y;
    bool stopped = false;  // the stop predicate fired before the last abscissa
    double stop_at = 0.0;
};

/// Adaptive Dormand–Prince 5(4) with dense output from `t0` through the
/// monotone abscissae `ts` (all on one side of t0). `stop(y)` ends the run
/// early; abscissae past the stopping point are dropped.
template <std::size_t N, class Rhs, class Stop>
DenseResult<N> integrate_dense(Rhs&& rhs, State<N> y0, double t0, const std::vector<double>& ts, double tol,
                               Stop&& stop) {
    namespace oi = boost::numeric::odeint;
    using S = State<N>;
    DenseResult<N> out;
    if (ts.empty()) return out;
    const double dir = ts.back() >= t0 ? 1.0 : -1.0;
    auto stepper = oi::make_dense_output(tol, tol, oi::runge_kutta_dopri5<S>());
    auto sys = [&](const S& y, S& dy, double t) { rhs(y, dy, t); };
    std::size_t next = 0;
    while (next < ts.size() && dir * (ts[next] - t0) <= 0.0) {
        out.t.push_back(ts[next]);
        out.y.push_back(y0);
        ++next;
    }
    if (next == ts.size()) return out;
    const double span = std::abs(ts.back() - t0);
    stepper.initialize(y0, t0, dir * std::min(1e-3, span / 16.0));
    while (next < ts.size()) {
        stepper.do_step(sys);
        const double tc = stepper.current_time();
        while (next < ts.size() && dir * (ts[next] - tc) <= 0.0) {
            S y;
            stepper.calc_state(ts[next], y);
            if (stop(y)) {
                out.stopped = true;
                out.stop_at = ts[next];
                return out;
            }
            out.t.push_back(ts[next]);
            out.y.push_back(y);
            ++next;
        }
        if (stop(stepper.current_state())) {
            out.stopped = true;
            out.stop_at = tc;
            return out;
        }
    }
    return out;
}

template <std::size_t N, class Rhs>
DenseResult<N> integrate_dense(Rhs&& rhs, State<N> y0, double t0, const std::vector<double>& ts, double tol) {
    return integrate_dense<N>(std::forward<Rhs>(rhs), y0, t0, ts, tol, [](const State<N>&) { return false; });
}

}  // namespace geoflow::ode
