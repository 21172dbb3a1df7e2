/**
 * @file test_digigeom.cpp
 * @brief Straightness, digital circles, chord angles, sagitta and circumcircle.
 */
#include "arcscan/digigeom.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <set>

using namespace arcscan;

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t upper_half_count(const std::vector<Pixel>& ring, Pixel c) {
    std::size_t n = 0;
    for (const auto p : ring) n += p.y <= c.y;
    return n;
}

/// Full ring from the oracle octant by the eight symmetries, as a set.
std::set<Pixel> oracle_ring(int r) {
    std::set<Pixel> s;
    for (const auto p : oracle::midpoint_octant(r)) {
        for (int sx : {-1, 1})
            for (int sy : {-1, 1}) {
                s.insert({sx * p.x, sy * p.y});
                s.insert({sx * p.y, sy * p.x});
            }
    }
    return s;
}

}  // namespace

TEST(TriangleArea2, Examples) {
    EXPECT_EQ(triangle_area2({0, 0}, {1, 0}, {2, 0}), 0);
    EXPECT_EQ(triangle_area2({0, 0}, {5, 5}, {10, 0}), -50);
    EXPECT_EQ(triangle_area2({0, 0}, {0, 1}, {1, 0}), -1);
    EXPECT_EQ(triangle_area2({0, 0}, {1, 0}, {0, 1}), 1);
}

TEST(TriangleArea2, LargeCoordinatesExact) {
    const Pixel a{-2000000000, 0}, c{0, 2000000000}, b{2000000000, 0};
    EXPECT_EQ(triangle_area2(a, c, b), -8000000000000000000LL);
}

TEST(IsotheticDistance, Examples) {
    EXPECT_EQ(isothetic_distance({0, 0}, {0, 0}), 0);
    EXPECT_EQ(isothetic_distance({0, 0}, {3, 7}), 7);
    EXPECT_EQ(isothetic_distance({-2, 4}, {1, 4}), 3);
}

TEST(Straightness, Examples) {
    std::vector<Pixel> run;
    for (int x = 0; x < 10; ++x) run.push_back({x, 0});
    EXPECT_TRUE(is_digitally_straight(run, 2));

    const std::vector<Pixel> bulge{{0, 0}, {5, 5}, {10, 0}};
    EXPECT_FALSE(is_digitally_straight(bulge, 2));

    std::vector<Pixel> diag;
    for (int i = 0; i < 10; ++i) diag.push_back({i, i});
    EXPECT_TRUE(is_digitally_straight(diag, 2));
}

TEST(Straightness, BoundaryIsInclusive) {
    // area2 of the middle pixel is exactly 2 * 10 = 20.
    const std::vector<Pixel> px{{0, 0}, {5, 2}, {10, 0}};
    EXPECT_EQ(std::abs(triangle_area2(px[0], px[1], px[2])), 20);
    EXPECT_TRUE(is_digitally_straight(px, 2));
    EXPECT_FALSE(is_digitally_straight(px, 1));
}

TEST(Straightness, BresenhamLinesAreStraight) {
    for (const auto& [a, b] : std::vector<std::pair<Pixel, Pixel>>{
             {{0, 0}, {97, 31}}, {{5, 80}, {60, 2}}, {{0, 0}, {3, 200}}, {{-40, 7}, {40, -9}}}) {
        const auto line = bresenham_line(a, b);
        EXPECT_TRUE(is_digitally_straight(line, 2));
        EXPECT_LE(oracle::max_chord_offset(line), 1.0);
    }
}

TEST(Straightness, RequiresTwoPixels) {
    const std::vector<Pixel> one{{1, 1}};
    EXPECT_THROW(is_digitally_straight(one, 2), std::invalid_argument);
}

TEST(Bresenham, EndpointsAndConnectivity) {
    const auto line = bresenham_line({3, 9}, {-4, 1});
    EXPECT_EQ(line.front(), (Pixel{3, 9}));
    EXPECT_EQ(line.back(), (Pixel{-4, 1}));
    EXPECT_EQ(line.size(), 9u);
    for (std::size_t i = 1; i < line.size(); ++i) EXPECT_TRUE(are_8_neighbors(line[i - 1], line[i]));
}

TEST(MidpointCircle, SemicircleCounts) {
    EXPECT_EQ(upper_half_count(midpoint_circle({0, 0}, 1), {0, 0}), 3u);
    EXPECT_EQ(upper_half_count(midpoint_circle({0, 0}, 2), {0, 0}), 7u);
}

TEST(MidpointCircle, RadiusFiveContainsExpected) {
    const auto ring = midpoint_circle({0, 0}, 5);
    const std::set<Pixel> s(ring.begin(), ring.end());
    for (const Pixel p : {Pixel{3, 4}, Pixel{4, 3}, Pixel{5, 0}, Pixel{0, 5}}) {
        EXPECT_TRUE(s.count(p)) << p.x << "," << p.y;
        EXPECT_TRUE(s.count({p.x, -p.y})) << p.x << "," << -p.y;
    }
}

TEST(MidpointCircle, RejectsNonPositiveRadius) {
    EXPECT_THROW(midpoint_circle({0, 0}, 0), std::invalid_argument);
}

TEST(MidpointCircle, MatchesDecisionVariableOracle) {
    for (int r = 1; r <= 300; ++r) {
        const auto ring = midpoint_circle({0, 0}, r);
        const std::set<Pixel> mine(ring.begin(), ring.end());
        ASSERT_EQ(mine.size(), ring.size()) << "duplicate pixel at r=" << r;
        const auto ref = oracle_ring(r);
        // Off the diagonal both constructions must agree pixel for pixel.
        for (const auto& p : ref)
            if (std::abs(p.x) != std::abs(p.y)) {
                EXPECT_TRUE(mine.count(p)) << r << ": " << p.x << "," << p.y;
            }
        for (const auto& p : mine)
            if (std::abs(p.x) != std::abs(p.y)) {
                EXPECT_TRUE(ref.count(p)) << r << ": " << p.x << "," << p.y;
            }
    }
}

TEST(MidpointCircle, HalfPixelPropertyAndSimpleCurve) {
    for (int r = 1; r <= 300; ++r) {
        const auto ring = midpoint_circle({0, 0}, r);
        const std::set<Pixel> s(ring.begin(), ring.end());
        for (const auto p : ring) {
            const int ax = std::abs(p.x), ay = std::abs(p.y);
            if (ax < ay) {
                EXPECT_LT(std::abs(ay - std::sqrt(double(r) * r - double(ax) * ax)), 0.5) << r;
            }
            int nbrs = 0;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx)
                    if ((dx || dy) && s.count({p.x + dx, p.y + dy})) ++nbrs;
            EXPECT_EQ(nbrs, 2) << "r=" << r << " at " << p.x << "," << p.y;
        }
        for (std::size_t i = 0; i < ring.size(); ++i)
            EXPECT_TRUE(are_8_neighbors(ring[i], ring[(i + 1) % ring.size()])) << r;
    }
}

TEST(DigitalArc, FullSpanIsClosedCircle) {
    const auto arc = digital_arc({10, 10}, 7, 0.0, 2 * kPi);
    EXPECT_TRUE(arc.closed);
    EXPECT_EQ(arc.pixels, midpoint_circle({10, 10}, 7));
}

TEST(DigitalArc, SemicircleCountsMatchEnumeration) {
    for (int r : {5, 20, 50}) {
        const auto arc = digital_arc({0, 0}, r, 0.0, kPi);
        EXPECT_FALSE(arc.closed);
        const auto ref = oracle_ring(r);
        std::size_t expected = 0;
        for (const auto& p : ref) expected += p.y >= 0;
        EXPECT_EQ(arc.size(), expected) << r;
        EXPECT_EQ(arc.front(), (Pixel{r, 0}));
        EXPECT_EQ(arc.back(), (Pixel{-r, 0}));
    }
    EXPECT_EQ(digital_arc({0, 0}, 5, 0.0, kPi).size(), 15u);
}

TEST(DigitalArc, OrderedAndConnectedAcrossZero) {
    const auto arc = digital_arc({50, 50}, 30, 5.5, 5.5 + 2.0);
    for (std::size_t i = 1; i < arc.size(); ++i) EXPECT_TRUE(are_8_neighbors(arc.pixels[i - 1], arc.pixels[i]));
    EXPECT_THROW(digital_arc({0, 0}, 5, 1.0, 1.0), std::invalid_argument);
}

TEST(SubtendedAngle, Examples) {
    EXPECT_NEAR(subtended_angle(Pixel{-5, 0}, Pixel{0, 5}, Pixel{5, 0}), kPi / 2, 1e-12);
    EXPECT_NEAR(subtended_angle(Pixel{-4, 3}, Pixel{0, 5}, Pixel{4, 3}), std::acos(-3.0 / 5.0), 1e-12);
    EXPECT_NEAR(subtended_angle(Pixel{0, 0}, Pixel{1, 1}, Pixel{2, 0}), kPi / 2, 1e-12);
    EXPECT_NEAR(subtended_angle(Pixel{0, 0}, Pixel{1, 0}, Pixel{2, 0}), kPi, 1e-12);
    EXPECT_THROW(subtended_angle(Pixel{0, 0}, Pixel{0, 0}, Pixel{2, 0}), DegenerateGeometry);
}

TEST(SubtendedAngle, AgreesWithLawOfCosines) {
    const auto ring = midpoint_circle({0, 0}, 37);
    for (std::size_t i = 1; i + 1 < 60; ++i) {
        const Pixel a = ring[0], c = ring[i], b = ring[60];
        EXPECT_NEAR(subtended_angle(a, c, b), oracle::angle_at(a.x, a.y, c.x, c.y, b.x, b.y), 1e-9);
    }
}

TEST(ChordDeviationBound, Examples) {
    EXPECT_NEAR(chord_deviation_bound({0, 0}, {10, 0}, {20, 0}), 2 * std::asin(0.1), 1e-12);
    EXPECT_NEAR(2 * std::asin(0.1), 0.20027, 1e-4);
    EXPECT_THROW(chord_deviation_bound({0, 0}, {1, 0}, {20, 0}), std::domain_error);
}

TEST(ChordDeviationBound, MidpointCorollary) {
    // c midway on a chord of length 40 with d(a,c), d(c,b) >= 20.
    const double bound = chord_deviation_bound({0, 0}, {20, 3}, {40, 0});
    EXPECT_LT(bound, 2 * std::asin(2.0 / 40.0));
    EXPECT_NEAR(2 * std::asin(2.0 / 40.0), 0.10009, 1e-4);
}

TEST(Care, ExactPointIsZero) {
    // (3,4), (5,0), (4,-3) all lie exactly on the r = 5 circle.
    const CurveSegment seg{{{4, -3}, {5, 0}, {4, 3}, {3, 4}}, false};
    const CircleParams truth{{0, 0}, 5};
    EXPECT_NEAR(care(seg, 1, truth), 0.0, 1e-12);
}

TEST(Care, SmallAtMiddleLargeNearEnds) {
    const auto full = digital_arc({0, 0}, 50, 0.0, kPi);
    const CurveSegment seg{{full.pixels.begin() + 20, full.pixels.begin() + 60}, false};
    const CircleParams truth{{0, 0}, 50};
    const double mid = care(seg, seg.size() / 2, truth);
    EXPECT_LT(mid, 0.05);
    double central_max = 0;
    for (std::size_t i = seg.size() / 3; i <= 2 * seg.size() / 3; ++i)
        central_max = std::max(central_max, care(seg, i, truth));
    EXPECT_GT(care(seg, 1, truth), central_max);
    EXPECT_THROW(care(seg, 0, truth), std::invalid_argument);
}

TEST(SagittaEstimate, ThreeFourFive) {
    const auto e = sagitta_estimate({-4, 3}, {4, 3}, {0, 5});
    EXPECT_DOUBLE_EQ(e.chord_len, 8.0);
    EXPECT_DOUBLE_EQ(e.sagitta_len, 2.0);
    EXPECT_DOUBLE_EQ(e.radius, 5.0);
    EXPECT_NEAR(e.center.x, 0.0, 1e-12);
    EXPECT_NEAR(e.center.y, 0.0, 1e-12);
}

TEST(SagittaEstimate, SemicircleBound) {
    const auto e = sagitta_estimate({-5, 0}, {5, 0}, {0, 5});
    EXPECT_DOUBLE_EQ(e.sagitta_len, 5.0);
    EXPECT_DOUBLE_EQ(e.radius, 5.0);
    EXPECT_DOUBLE_EQ(e.err_bound, 0.5);
}

TEST(SagittaEstimate, ShallowArc) {
    const auto e = sagitta_estimate({-3, 0}, {3, 0}, {0, 1});
    EXPECT_DOUBLE_EQ(e.radius, 5.0);
    EXPECT_NEAR(e.center.x, 0.0, 1e-12);
    EXPECT_NEAR(e.center.y, -4.0, 1e-12);
    for (const RealPoint p : {RealPoint{-3, 0}, RealPoint{3, 0}, RealPoint{0, 1}})
        EXPECT_NEAR(distance(e.center, p), 5.0, 1e-12);
}

TEST(SagittaEstimate, Degenerate) {
    EXPECT_THROW(sagitta_estimate({0, 0}, {0, 0}, {1, 1}), DegenerateGeometry);
    EXPECT_THROW(sagitta_estimate({0, 0}, {4, 0}, {2, 0}), DegenerateGeometry);
}

TEST(Circumcircle, Examples) {
    const auto c1 = circumcircle({0, 0}, {2, 0}, {1, 1});
    EXPECT_NEAR(c1.center.x, 1.0, 1e-12);
    EXPECT_NEAR(c1.center.y, 0.0, 1e-12);
    EXPECT_NEAR(c1.radius, 1.0, 1e-12);
    const auto c2 = circumcircle({-4, 3}, {4, 3}, {0, 5});
    EXPECT_NEAR(c2.center.x, 0.0, 1e-12);
    EXPECT_NEAR(c2.center.y, 0.0, 1e-12);
    EXPECT_NEAR(c2.radius, 5.0, 1e-12);
    EXPECT_THROW(circumcircle({0, 0}, {1, 0}, {2, 0}), DegenerateGeometry);
}

TEST(Circumcircle, RecoversKnownCirclesAgainstOracle) {
    for (int i = 0; i < 200; ++i) {
        const double cx = 100 + 3.7 * i, cy = -50 + 1.3 * i, r = 5 + 0.9 * i;
        const double t1 = 0.1 * i, t2 = t1 + 1.0 + 0.01 * i, t3 = t2 + 2.0;
        const RealPoint p1{cx + r * std::cos(t1), cy + r * std::sin(t1)};
        const RealPoint p2{cx + r * std::cos(t2), cy + r * std::sin(t2)};
        const RealPoint p3{cx + r * std::cos(t3), cy + r * std::sin(t3)};
        const auto c = circumcircle(p1, p2, p3);
        const auto o = oracle::circle_through(p1.x, p1.y, p2.x, p2.y, p3.x, p3.y);
        ASSERT_TRUE(o.ok);
        EXPECT_NEAR(c.center.x, o.x, 1e-9 * r);
        EXPECT_NEAR(c.center.y, o.y, 1e-9 * r);
        EXPECT_NEAR(c.radius, r, 1e-9 * r);
        for (const auto p : {p1, p2, p3}) EXPECT_LT(std::abs(distance(c.center, p) - c.radius), 1e-9 * r);
    }
}

TEST(CorrespondingPoint, KeepsMinorCoordinate) {
    const CircleParams circle{{0, 0}, 10};
    const auto p = corresponding_point({3, 9}, circle);
    EXPECT_DOUBLE_EQ(p.x, 3.0);
    EXPECT_NEAR(p.y, std::sqrt(91.0), 1e-12);
    const auto q = corresponding_point({-10, 1}, circle);
    EXPECT_DOUBLE_EQ(q.y, 1.0);
    EXPECT_NEAR(q.x, -std::sqrt(99.0), 1e-12);
}
