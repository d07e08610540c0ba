#pragma once

#include <cmath>
#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "geoflow/error.hpp"

namespace geoflow {

using Point = Eigen::Vector3d;
using ScalarField = std::vector<double>;
using VectorField = std::vector<Point>;

/// Ordered samples of a planar (dimension 2) or space (dimension 3) curve.
///
/// Planar curves are stored with z = 0. A closed curve wraps implicitly from
/// the last sample back to the first; the first point is never repeated.
class SampledCurve {
public:
    static constexpr std::size_t min_points = 4;

    SampledCurve() = default;

    SampledCurve(int dimension, bool closed, std::vector<Point> points, std::string label = {})
        : dimension_(dimension), closed_(closed), points_(std::move(points)), label_(std::move(label)) {
        validate();
    }

    int dimension() const noexcept { return dimension_; }
    bool closed() const noexcept { return closed_; }
    bool planar() const noexcept { return dimension_ == 2; }
    const std::string& label() const noexcept { return label_; }
    void set_label(std::string label) { label_ = std::move(label); }

    std::size_t size() const noexcept { return points_.size(); }
    const Point& operator[](std::size_t i) const { return points_[i]; }
    const std::vector<Point>& points() const noexcept { return points_; }

    /// Number of polyline segments (including the closing one for closed curves).
    std::size_t segment_count() const noexcept {
        return closed_ ? points_.size() : points_.size() - 1;
    }

    /// Index arithmetic that wraps for closed curves.
    std::size_t wrap(std::ptrdiff_t i) const noexcept {
        const auto n = static_cast<std::ptrdiff_t>(points_.size());
        return static_cast<std::size_t>(((i % n) + n) % n);
    }

    /// Same dimension/closedness/label with new samples.
    SampledCurve with_points(std::vector<Point> points) const {
        return SampledCurve(dimension_, closed_, std::move(points), label_);
    }

private:
    void validate() {
        if (dimension_ != 2 && dimension_ != 3)
            throw Error("invalid-curve", "dimension must be 2 or 3");
        if (points_.size() < min_points)
            throw Error("invalid-curve", "at least 4 points required");
        for (auto& p : points_) {
            if (!p.allFinite()) throw Error("invalid-curve", "non-finite coordinate");
            if (dimension_ == 2) p.z() = 0.0;
        }
        for (std::size_t i = 0; i + 1 < points_.size(); ++i)
            if ((points_[i + 1] - points_[i]).norm() <= 0.0)
                throw Error("invalid-curve", "consecutive points coincide at index " + std::to_string(i));
        if (closed_ && (points_.front() - points_.back()).norm() <= 0.0)
            throw Error("invalid-curve", "closed curve repeats its first point");
    }

    int dimension_ = 2;
    bool closed_ = false;
    std::vector<Point> points_;
    std::string label_;
};

/// Polyline segment lengths; closed curves include the wrap segment.
inline std::vector<double> segment_lengths(const SampledCurve& c) {
    std::vector<double> h(c.segment_count());
    for (std::size_t i = 0; i < h.size(); ++i) h[i] = (c[c.wrap(static_cast<std::ptrdiff_t>(i) + 1)] - c[i]).norm();
    return h;
}

/// Cumulative chord length at each sample, starting from 0.
inline std::vector<double> cumulative_arclength(const SampledCurve& c) {
    std::vector<double> s(c.size(), 0.0);
    for (std::size_t i = 1; i < c.size(); ++i) s[i] = s[i - 1] + (c[i] - c[i - 1]).norm();
    return s;
}

inline double total_length(const SampledCurve& c) {
    double L = 0.0;
    for (double h : segment_lengths(c)) L += h;
    return L;
}

inline double mean_spacing(const SampledCurve& c) {
    return total_length(c) / static_cast<double>(c.segment_count());
}

inline double min_spacing(const SampledCurve& c) {
    double m = std::numeric_limits<double>::infinity();
    for (double h : segment_lengths(c)) m = std::min(m, h);
    return m;
}

}  // namespace geoflow
