#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "geoflow/geometry/frenet.hpp"
#include "geoflow/geometry/measures.hpp"
#include "geoflow/geometry/resample.hpp"
#include "geoflow/geometry/shapes.hpp"

using namespace geoflow;
using std::numbers::pi;

namespace {

template <class F>
double quad(F f, double a, double b) {
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14);
}

}  // namespace

TEST(Curve, RejectsInvalidInput) {
    EXPECT_THROW(SampledCurve(2, false, {Point(0, 0, 0), Point(1, 0, 0), Point(2, 0, 0)}), Error);
    EXPECT_THROW(SampledCurve(4, false, {Point(0, 0, 0), Point(1, 0, 0), Point(2, 0, 0), Point(3, 0, 0)}), Error);
    EXPECT_THROW(SampledCurve(2, false, {Point(0, 0, 0), Point(0, 0, 0), Point(2, 0, 0), Point(3, 0, 0)}), Error);
    EXPECT_THROW(SampledCurve(2, true, {Point(0, 0, 0), Point(1, 0, 0), Point(1, 1, 0), Point(0, 0, 0)}), Error);
    EXPECT_THROW(SampledCurve(2, false, {Point(0, 0, 0), Point(NAN, 0, 0), Point(2, 0, 0), Point(3, 0, 0)}), Error);
    try {
        SampledCurve(2, false, {Point(0, 0, 0), Point(1, 0, 0)});
    } catch (const Error& e) {
        EXPECT_EQ(e.token(), "invalid-curve");
    }
}

TEST(Resample, UnevenCircleBecomesUniform) {
    const double angles[] = {0.0, 0.8, 1.7, 2.5, 3.5, 4.4, 5.4};
    std::vector<Point> p;
    for (double a : angles) p.emplace_back(std::cos(a), std::sin(a), 0.0);
    const SampledCurve r = resample_arclength(SampledCurve(2, true, p), 256);
    ASSERT_EQ(r.size(), 256u);
    for (double h : segment_lengths(r)) EXPECT_LT(std::abs(h - 2 * pi / 256), 1e-3);
}

TEST(Resample, SegmentIsLinear) {
    const SampledCurve r = resample_arclength(shapes::segment(Point(0, 0, 0), Point(1, 0, 0), 9), 4);
    EXPECT_NEAR(r[0].x(), 0.0, 1e-15);
    EXPECT_NEAR(r[1].x(), 1.0 / 3, 1e-14);
    EXPECT_NEAR(r[2].x(), 2.0 / 3, 1e-14);
    EXPECT_NEAR(r[3].x(), 1.0, 1e-15);
}

TEST(Resample, GrimReaperLengthMatchesQuadrature) {
    const auto xs = shapes::linspace(-1.5, 1.5, 20001);
    const SampledCurve g = shapes::graph([](double x) { return -std::log(std::cos(x)); }, xs);
    const SampledCurve r = resample_arclength(g, 512);
    const double exact = quad([](double x) { return 1.0 / std::cos(x); }, -1.5, 1.5);
    EXPECT_NEAR(total_length(r), exact, 1e-4);
    EXPECT_EQ(r[0], g[0]);
    EXPECT_EQ(r[511], g[g.size() - 1]);
}

TEST(Resample, PreservesLengthOfSmoothCurves) {
    const SampledCurve c = shapes::circle(1.0, 2000);
    const SampledCurve r = resample_arclength(c, 128);
    // The polyline of the coarse resample is shorter; compare against the input polyline.
    const SampledCurve back = resample_arclength(c, 2000);
    EXPECT_LT(std::abs(total_length(back) - total_length(c)) / total_length(c), 1e-6);
    EXPECT_GT(total_length(r), 0.0);
}

TEST(Resample, Idempotent) {
    const SampledCurve e = shapes::ellipse(2.0, 1.0, 300);
    const SampledCurve r1 = resample_arclength(e, 257);
    const SampledCurve r2 = resample_arclength(r1, 257);
    double drift = 0.0;
    for (std::size_t i = 0; i < r1.size(); ++i) drift = std::max(drift, (r1[i] - r2[i]).norm());
    EXPECT_LT(drift, 1e-9);
}

TEST(Frenet, CircleCurvature) {
    const FrenetData f = frenet(shapes::circle(2.0, 256));
    for (std::size_t i = 0; i < f.size(); ++i) {
        EXPECT_NEAR(f.curvature[i], 0.5, 1e-3);
        EXPECT_LT(std::abs(f.tangent[i].dot(f.normal[i])), 1e-8);
    }
    EXPECT_TRUE(f.binormal.empty());
    EXPECT_TRUE(f.torsion.empty());
}

TEST(Frenet, ClockwiseCircleHasNegativeCurvature) {
    std::vector<Point> p;
    for (int k = 0; k < 128; ++k) p.emplace_back(std::cos(-2 * pi * k / 128), std::sin(-2 * pi * k / 128), 0.0);
    const FrenetData f = frenet(SampledCurve(2, true, p));
    EXPECT_NEAR(f.curvature[5], -1.0, 1e-3);
}

TEST(Frenet, HelixCurvatureAndTorsion) {
    const FrenetData f = frenet(shapes::helix(1.0, 1.0, 0.0, 6 * pi, 1024));
    for (std::size_t i = 0; i < f.size(); ++i) {
        EXPECT_NEAR(f.curvature[i], 0.5, 1e-3);
        EXPECT_NEAR(f.torsion[i], 0.5, 1e-3);
        EXPECT_LT((f.binormal[i] - f.tangent[i].cross(f.normal[i])).norm(), 1e-8);
    }
}

TEST(Frenet, LineHasUndefinedTorsion) {
    const FrenetData f = frenet(shapes::segment(Point(0, 0, 0), Point(1, 2, 3), 50, 3));
    for (std::size_t i = 0; i < f.size(); ++i) {
        EXPECT_NEAR(f.curvature[i], 0.0, 1e-10);
        EXPECT_FALSE(f.torsion_defined(i));
        EXPECT_NEAR(f.normal[i].norm(), 1.0, 1e-12);
        EXPECT_LT(std::abs(f.normal[i].dot(f.tangent[i])), 1e-12);
    }
}

TEST(Frenet, FrameOrthonormalOnClosedSpaceCurve) {
    std::vector<Point> p;
    for (int k = 0; k < 400; ++k) {
        const double t = 2 * pi * k / 400;
        p.emplace_back(std::cos(t) + 2 * std::cos(2 * t), std::sin(t) - 2 * std::sin(2 * t), std::sin(3 * t));
    }
    const FrenetData f = frenet(resample_arclength(SampledCurve(3, true, p), 400));
    for (std::size_t i = 0; i < f.size(); ++i) {
        EXPECT_LT(std::abs(f.tangent[i].dot(f.normal[i])), 1e-8);
        EXPECT_LT((f.binormal[i] - f.tangent[i].cross(f.normal[i])).norm(), 1e-8);
    }
}

TEST(Frenet, SerretConsistencyIsSecondOrder) {
    auto err = [](std::size_t n) {
        const SampledCurve h = shapes::helix(1.0, 1.0, 0.0, 4 * pi, n);
        const FrenetData f = frenet(h);
        const auto dT = differentiate(chord_parameter(h), f.tangent, 1);
        double e = 0.0;
        // Chained one-sided stencils lose an order at the two outermost samples.
        for (std::size_t i = 2; i + 2 < n; ++i) e = std::max(e, (dT[i] - f.curvature[i] * f.normal[i]).norm());
        return e;
    };
    const double ratio = err(256) / err(512);
    EXPECT_GT(ratio, 3.5);
}

TEST(Measures, UnitCircle) {
    const SampledCurve c = shapes::circle(1.0, 512);
    EXPECT_NEAR(total_length(c), 2 * pi, 1e-4);
    EXPECT_NEAR(enclosed_area(c), pi, 1e-3);
    EXPECT_NEAR(isoperimetric_ratio(c), 1.0, 1e-3);
    EXPECT_GE(isoperimetric_ratio(c), 1.0 - 1e-6);
}

TEST(Measures, EllipseAgainstEllipticIntegral) {
    const SampledCurve e = shapes::ellipse(2.0, 1.0, 512);
    EXPECT_NEAR(enclosed_area(e), 2 * pi, 1e-3);
    const double exact = quad([](double t) { return std::hypot(2 * std::sin(t), std::cos(t)); }, 0.0, 2 * pi);
    EXPECT_NEAR(total_length(e), exact, 1e-4);
}

TEST(Measures, Square) {
    const SampledCurve sq(2, true, {Point(0, 0, 0), Point(1, 0, 0), Point(1, 1, 0), Point(0, 1, 0)});
    const SampledCurve r = resample_arclength(sq, 64);
    EXPECT_NEAR(total_length(r), 4.0, 1e-12);
    EXPECT_NEAR(enclosed_area(r), 1.0, 1e-12);
    EXPECT_NEAR(isoperimetric_ratio(r), 4.0 / pi, 1e-12);
    EXPECT_FALSE(possibly_self_intersecting(r));
}

TEST(Measures, FigureEightFlagsIntersection) {
    std::vector<Point> p;
    for (int k = 0; k < 64; ++k) {
        const double t = 2 * pi * k / 64;
        p.emplace_back(std::sin(t), std::sin(t) * std::cos(t), 0.0);
    }
    const AreaReport rep = area_report(SampledCurve(2, true, p));
    EXPECT_TRUE(rep.possibly_self_intersecting);
}

TEST(Measures, HausdorffOfShiftedCircle) {
    const SampledCurve a = shapes::circle(1.0, 256);
    const SampledCurve b = shapes::circle(1.0, 256, Point(0.1, 0, 0));
    EXPECT_NEAR(hausdorff_distance(a, b), 0.1, 1e-3);
    EXPECT_NEAR(hausdorff_distance(a, a), 0.0, 1e-15);
}
