#include "doctest.h"

#include "discplan/geom.hpp"
#include "discplan/rng.hpp"

#include <algorithm>
#include <cmath>

using namespace discplan;
using namespace discplan::geom;

namespace {

// Sampling oracle: min distance from p to n points spread along s.
double sampledDistPointSegment(Point p, const Segment& s, int n) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= n; ++i) best = std::min(best, dist(p, s.at(double(i) / n)));
    return best;
}

double sampledDistPointArc(Point p, const Arc& a, int n) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= n; ++i) best = std::min(best, dist(p, a.at(double(i) / n)));
    return best;
}

}  // namespace

TEST_CASE("distPointSegment basics") {
    Segment s{{-1, 0}, {1, 0}};
    CHECK(distPointSegment({0, 1}, s) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(distPointSegment({2, 0}, s) == doctest::Approx(1.0).epsilon(1e-12));

    // near-degenerate segment against a dense sampling oracle
    Segment tiny{{0, 0}, {0, 0.001}};
    double oracle = sampledDistPointSegment({3, 4}, tiny, 1000000);
    CHECK(distPointSegment({3, 4}, tiny) == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("distPointSegment sampling oracle on random inputs") {
    Rng rng(101);
    for (int it = 0; it < 50; ++it) {
        Point p{rng.uniform(-10, 10), rng.uniform(-10, 10)};
        Segment s{{rng.uniform(-10, 10), rng.uniform(-10, 10)},
                  {rng.uniform(-10, 10), rng.uniform(-10, 10)}};
        double exact = distPointSegment(p, s);
        double approx = sampledDistPointSegment(p, s, 100000);
        CHECK(std::abs(exact - approx) <= 1e-4);
        CHECK(exact >= 0.0);
    }
}

TEST_CASE("distPointArc basics") {
    Arc full{{0, 0}, 2.0, 0.0, 0.0, true};
    CHECK(distPointArc({0, 0}, full) == doctest::Approx(2.0));

    // point outside the angular span clamps to the nearer endpoint
    Arc quarter{{0, 0}, 1.0, 0.0, kPi / 2, true};
    Point p{0, -3};  // nearest endpoint is (1, 0)
    CHECK(distPointArc(p, quarter) == doctest::Approx(dist(p, Point{1, 0})));
}

TEST_CASE("distPointArc matches dense angular sampling") {
    Rng rng(202);
    Arc quarter{{1, -2}, 1.5, 0.3, 0.3 + kPi / 2, true};
    for (int it = 0; it < 20; ++it) {
        Point p{rng.uniform(-5, 5), rng.uniform(-5, 5)};
        double exact = distPointArc(p, quarter);
        double approx = sampledDistPointArc(p, quarter, 1000000);
        CHECK(std::abs(exact - approx) <= 1e-6);
    }
}

TEST_CASE("discSegmentIntersects uses open-disc semantics") {
    Segment s{{-1, 0}, {1, 0}};
    CHECK_FALSE(discSegmentIntersects({0, 2}, 2.0, s));  // tangency is not intersection
    CHECK(discSegmentIntersects({0, 1}, 2.0, s));
    CHECK_FALSE(discSegmentIntersects({5, 5}, 1.0, Segment{{0, 0}, {1, 0}}));
}

TEST_CASE("discSegmentIntersects monotone in radius") {
    Rng rng(303);
    for (int it = 0; it < 200; ++it) {
        Point c{rng.uniform(-4, 4), rng.uniform(-4, 4)};
        Segment s{{rng.uniform(-4, 4), rng.uniform(-4, 4)},
                  {rng.uniform(-4, 4), rng.uniform(-4, 4)}};
        double r1 = rng.uniform(0.1, 3.0);
        double r2 = r1 + rng.uniform(0.0, 2.0);
        if (discSegmentIntersects(c, r1, s)) CHECK(discSegmentIntersects(c, r2, s));
        double d = distPointSegment(c, s);
        CHECK(discSegmentIntersects(c, r1, s) == (d < r1 - 1e-9));
    }
}

TEST_CASE("tangentPoints of two unit circles 4 apart") {
    auto tangents = tangentPoints({0, 0}, 1.0, {4, 0}, 1.0);
    REQUIRE(tangents.size() == 4);
    // outer pair lies on y = +-1
    CHECK(tangents[0].a.y == doctest::Approx(-1.0));
    CHECK(tangents[0].b.y == doctest::Approx(-1.0));
    CHECK(tangents[1].a.y == doctest::Approx(1.0));
    CHECK(tangents[1].b.y == doctest::Approx(1.0));
    // inner pair crosses at (2, 0) with length sqrt(d^2-(r1+r2)^2)
    for (int i = 2; i < 4; ++i)
        CHECK(tangents[i].length() == doctest::Approx(std::sqrt(12.0)));
}

TEST_CASE("tangentPoints from a point to a circle") {
    auto tangents = tangentPoints({0, 0}, 0.0, {2, 0}, 1.0);
    REQUIRE(tangents.size() == 2);
    for (const auto& t : tangents) {
        CHECK(t.a.x == doctest::Approx(0.0));
        CHECK(t.a.y == doctest::Approx(0.0));
        CHECK(t.length() == doctest::Approx(std::sqrt(3.0)));
    }
}

TEST_CASE("tangentPoints touch each circle exactly once and avoid interiors") {
    Rng rng(404);
    int checked = 0;
    for (int it = 0; it < 100; ++it) {
        Point c1{rng.uniform(-10, 10), rng.uniform(-10, 10)};
        Point c2{rng.uniform(-10, 10), rng.uniform(-10, 10)};
        double r1 = rng.uniform(0.2, 3.0);
        double r2 = rng.uniform(0.2, 3.0);
        double d = dist(c1, c2);
        if (d < r1 + r2 + 0.05) continue;  // keep disjoint so all 4 tangents exist
        auto tangents = tangentPoints(c1, r1, c2, r2);
        REQUIRE(tangents.size() == 4);
        for (const auto& t : tangents) {
            CHECK(std::abs(distPointSegment(c1, t) - r1) <= 1e-9);
            CHECK(std::abs(distPointSegment(c2, t) - r2) <= 1e-9);
            CHECK(std::abs(dist(t.a, c1) - r1) <= 1e-9);  // endpoint on circle 1
            CHECK(std::abs(dist(t.b, c2) - r2) <= 1e-9);  // endpoint on circle 2
        }
        ++checked;
    }
    CHECK(checked > 20);
}

TEST_CASE("tangentPoints endpoints agree with a numeric root-find oracle") {
    // r1=1 at origin, r2=2 at (10,0): tangency means the segment between
    // boundary points at angles (a, b) is perpendicular to both radii.
    Point c1{0, 0}, c2{10, 0};
    double r1 = 1.0, r2 = 2.0;
    auto tangents = tangentPoints(c1, r1, c2, r2);
    REQUIRE(tangents.size() == 4);
    // residual of the tangency conditions: the chord must be perpendicular
    // to both radii
    auto residual = [&](double a, double b, double& fa, double& fb) {
        Point p1 = c1 + Vec{std::cos(a), std::sin(a)} * r1;
        Point p2 = c2 + Vec{std::cos(b), std::sin(b)} * r2;
        Vec dd = (p2 - p1).normalized();
        fa = dd.dot(Vec{std::cos(a), std::sin(a)});
        fb = dd.dot(Vec{std::cos(b), std::sin(b)});
    };
    for (const auto& t : tangents) {
        // Newton's method with a numeric Jacobian, seeded away from the
        // implementation output so the oracle finds the root on its own.
        double a = (t.a - c1).angle() + 0.03;
        double b = (t.b - c2).angle() - 0.02;
        const double h = 1e-7;
        for (int k = 0; k < 80; ++k) {
            double fa, fb, fa1, fb1, fa2, fb2;
            residual(a, b, fa, fb);
            residual(a + h, b, fa1, fb1);
            residual(a, b + h, fa2, fb2);
            double j11 = (fa1 - fa) / h, j12 = (fa2 - fa) / h;
            double j21 = (fb1 - fb) / h, j22 = (fb2 - fb) / h;
            double det = j11 * j22 - j12 * j21;
            if (std::abs(det) < 1e-14) break;
            a -= (fa * j22 - fb * j12) / det;
            b -= (j11 * fb - j21 * fa) / det;
        }
        Point p1 = c1 + Vec{std::cos(a), std::sin(a)} * r1;
        Point p2 = c2 + Vec{std::cos(b), std::sin(b)} * r2;
        CHECK(dist(p1, t.a) <= 1e-9);
        CHECK(dist(p2, t.b) <= 1e-9);
    }
}

TEST_CASE("tangentPoints containment yields no tangents") {
    CHECK(tangentPoints({0, 0}, 3.0, {0.5, 0}, 1.0).empty());
    CHECK(tangentPoints({0, 0}, 1.0, {0, 0}, 2.0).empty());  // concentric
}

TEST_CASE("segmentCircleParams secant, miss and tangency") {
    Segment s{{-3, 0}, {3, 0}};
    auto ps = segmentCircleParams(s, {0, 0}, 1.0);
    REQUIRE(ps.size() == 2);
    CHECK(s.at(ps[0]).x == doctest::Approx(-1.0));
    CHECK(s.at(ps[1]).x == doctest::Approx(1.0));

    CHECK(segmentCircleParams(s, {0, 5}, 1.0).empty());

    auto tang = segmentCircleParams(s, {0, 1}, 1.0);
    REQUIRE(tang.size() == 1);
    CHECK(s.at(tang[0]).x == doctest::Approx(0.0));
}

TEST_CASE("circleCircleIntersections") {
    auto pts = circleCircleIntersections({0, 0}, 2.0, {2, 0}, 2.0);
    REQUIRE(pts.size() == 2);
    for (auto p : pts) {
        CHECK(dist(p, {0, 0}) == doctest::Approx(2.0));
        CHECK(dist(p, {2, 0}) == doctest::Approx(2.0));
    }
    // external tangency
    auto touch = circleCircleIntersections({0, 0}, 2.0, {4, 0}, 2.0);
    REQUIRE(touch.size() == 1);
    CHECK(touch[0].x == doctest::Approx(2.0));
    CHECK(touch[0].y == doctest::Approx(0.0));
    CHECK(circleCircleIntersections({0, 0}, 1.0, {9, 0}, 2.0).empty());
}

TEST_CASE("arc sweep and containment") {
    Arc a{{0, 0}, 1.0, 0.0, kPi / 2, true};
    CHECK(a.sweep() == doctest::Approx(kPi / 2));
    CHECK(a.containsAngle(kPi / 4));
    CHECK_FALSE(a.containsAngle(kPi));
    Arc b{{0, 0}, 1.0, kPi / 2, 0.0, false};  // same quarter, walked the other way
    CHECK(b.sweep() == doctest::Approx(-kPi / 2));
    CHECK(b.containsAngle(kPi / 4));
    Arc full{{0, 0}, 1.0, 0.3, 0.3, true};
    CHECK(full.sweep() == doctest::Approx(kTwoPi));
    CHECK(full.containsAngle(5.1));
}

TEST_CASE("polygon area, containment, depth") {
    Polygon sq{{{0, 0}, {10, 0}, {10, 10}, {0, 10}}};
    CHECK(sq.signedArea() == doctest::Approx(100.0));
    CHECK(sq.isCCW());
    CHECK(sq.contains({5, 5}));
    CHECK_FALSE(sq.contains({11, 5}));
    CHECK(sq.signedDepth({5, 5}) == doctest::Approx(5.0));
    CHECK(sq.signedDepth({5, 1}) == doctest::Approx(1.0));
    CHECK(sq.signedDepth({-2, 5}) == doctest::Approx(-2.0));
}

TEST_CASE("distSegmentSegment") {
    CHECK(distSegmentSegment({{0, 0}, {1, 0}}, {{0, 1}, {1, 1}}) == doctest::Approx(1.0));
    CHECK(distSegmentSegment({{0, 0}, {2, 2}}, {{0, 2}, {2, 0}}) == doctest::Approx(0.0));
    Rng rng(505);
    for (int it = 0; it < 100; ++it) {
        Segment s{{rng.uniform(-5, 5), rng.uniform(-5, 5)},
                  {rng.uniform(-5, 5), rng.uniform(-5, 5)}};
        Segment t{{rng.uniform(-5, 5), rng.uniform(-5, 5)},
                  {rng.uniform(-5, 5), rng.uniform(-5, 5)}};
        CHECK(distSegmentSegment(s, t) == doctest::Approx(distSegmentSegment(t, s)));
        // sampled upper bound
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= 60; ++i)
            best = std::min(best, distPointSegment(s.at(i / 60.0), t));
        CHECK(distSegmentSegment(s, t) <= best + 1e-12);
    }
}

TEST_CASE("element helpers split paths consistently") {
    Element seg = Segment{{0, 0}, {3, 4}};
    CHECK(elementLength(seg) == doctest::Approx(5.0));
    Point mid = elementPointAt(seg, 2.5);
    CHECK(mid.x == doctest::Approx(1.5));
    CHECK(mid.y == doctest::Approx(2.0));

    Element arc = Arc{{0, 0}, 2.0, 0.0, kPi, true};
    CHECK(elementLength(arc) == doctest::Approx(2.0 * kPi));
    Point q = elementPointAt(arc, kPi);  // quarter of the way (angle pi/2)
    CHECK(q.x == doctest::Approx(0.0));
    CHECK(q.y == doctest::Approx(2.0));
}
