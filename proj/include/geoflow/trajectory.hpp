#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "geoflow/geometry/curve.hpp"

namespace geoflow {

/// Per-frame scalar diagnostics. Optional entries are only filled when the
/// owning flow was asked to compute them.
struct DiagnosticRecord {
    double length = 0.0;
    std::optional<double> bending;          // ∫κ² ds
    std::optional<double> huisken;
    std::optional<double> distance_ratio;
    double max_curvature = 0.0;
    double min_curvature = 0.0;             // signed, planar curves only
    std::optional<double> max_torsion;
};

/// Time-stamped frames of a flow plus diagnostics aligned with them.
struct FlowTrajectory {
    std::vector<double> times;
    std::vector<SampledCurve> curves;
    std::vector<DiagnosticRecord> diagnostics;
    std::string stop_reason;   // "stop-time", "stop-length", "approaching-singularity", "max-steps"
    std::size_t steps = 0;

    std::size_t size() const noexcept { return times.size(); }
    double final_time() const { return times.empty() ? 0.0 : times.back(); }
    const SampledCurve& final_curve() const { return curves.back(); }

    void push(double t, SampledCurve c, DiagnosticRecord d) {
        times.push_back(t);
        curves.push_back(std::move(c));
        diagnostics.push_back(std::move(d));
    }
};

/// Time derivative at frame i from a three-point nonuniform stencil.
inline double central_rate(const std::vector<double>& t, const std::vector<double>& v, std::size_t i) {
    const double h0 = t[i] - t[i - 1], h1 = t[i + 1] - t[i];
    return (-h1 / (h0 * (h0 + h1))) * v[i - 1] + ((h1 - h0) / (h0 * h1)) * v[i] + (h0 / (h1 * (h0 + h1))) * v[i + 1];
}

}  // namespace geoflow
