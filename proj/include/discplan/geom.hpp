#pragma once

// Planar geometric kernel: points, segments, circular arcs, distance and
// intersection predicates. Tolerance-based floating point throughout; all
// types are immutable values and all operations are pure.

#include <cmath>
#include <optional>
#include <variant>
#include <vector>

namespace discplan::geom {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Global comparison tolerance. The separation slack assumed of all inputs
// (>= 4 between endpoints, >= sqrt(5) to obstacles) dwarfs this value.
struct Tolerance {
    double eps = 1e-9;
};

struct Vec {
    double x = 0.0, y = 0.0;

    Vec operator+(Vec o) const { return {x + o.x, y + o.y}; }
    Vec operator-(Vec o) const { return {x - o.x, y - o.y}; }
    Vec operator*(double s) const { return {x * s, y * s}; }
    Vec operator-() const { return {-x, -y}; }
    double dot(Vec o) const { return x * o.x + y * o.y; }
    double cross(Vec o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    double squaredNorm() const { return x * x + y * y; }
    Vec normalized() const {
        double n = norm();
        return n > 0.0 ? Vec{x / n, y / n} : *this;
    }
    // Rotated 90 degrees counterclockwise.
    Vec perp() const { return {-y, x}; }
    double angle() const { return std::atan2(y, x); }
};

struct Point {
    double x = 0.0, y = 0.0;

    Vec operator-(Point o) const { return {x - o.x, y - o.y}; }
    Point operator+(Vec v) const { return {x + v.x, y + v.y}; }
    Point operator-(Vec v) const { return {x - v.x, y - v.y}; }
    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

inline double dist(Point a, Point b) { return (a - b).norm(); }
inline double squaredDist(Point a, Point b) { return (a - b).squaredNorm(); }
inline Point lerp(Point a, Point b, double t) {
    return {a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t};
}

// Normalizes an angle into [0, 2*pi).
double normalizeAngle(double a);

struct Segment {
    Point a, b;

    double length() const { return dist(a, b); }
    Vec dir() const { return (b - a).normalized(); }
    Point at(double t) const { return lerp(a, b, t); }
    Segment reversed() const { return {b, a}; }
};

// Circular arc from startAngle to endAngle around center, traversed
// counterclockwise when ccw is true. Angular extent is in (0, 2*pi];
// equal angles denote a full circle.
struct Arc {
    Point center;
    double radius = 1.0;
    double startAngle = 0.0;
    double endAngle = 0.0;
    bool ccw = true;

    // Signed sweep: positive ccw, negative cw, magnitude in (0, 2*pi].
    double sweep() const;
    double length() const { return radius * std::abs(sweep()); }
    Point pointAtAngle(double ang) const {
        return {center.x + radius * std::cos(ang), center.y + radius * std::sin(ang)};
    }
    Point startPoint() const { return pointAtAngle(startAngle); }
    Point endPoint() const { return pointAtAngle(endAngle); }
    // Angle reached after traversing fraction t in [0,1] of the sweep.
    double angleAt(double t) const { return startAngle + sweep() * t; }
    Point at(double t) const { return pointAtAngle(angleAt(t)); }
    // Angular offset of `ang` from startAngle along the traversal direction,
    // normalized into [0, 2*pi).
    double offsetOf(double ang) const;
    bool containsAngle(double ang, double angTol = 1e-12) const;
    Arc reversed() const { return {center, radius, endAngle, startAngle, !ccw}; }
};

// A boundary or path element.
using Element = std::variant<Segment, Arc>;

double elementLength(const Element& e);
Point elementStart(const Element& e);
Point elementEnd(const Element& e);
// Point at arc-length s from the element start, s clamped to [0, length].
Point elementPointAt(const Element& e, double s);
// Unit tangent in traversal direction at the element's start / end.
Vec elementStartTangent(const Element& e);
Vec elementEndTangent(const Element& e);

// ---- distances ----

Point closestPointOnSegment(Point p, const Segment& s);
double distPointSegment(Point p, const Segment& s);

Point closestPointOnArc(Point p, const Arc& a);
double distPointArc(Point p, const Arc& a);

double distPointElement(Point p, const Element& e);

// Minimum distance between two segments (0 if they intersect).
double distSegmentSegment(const Segment& s, const Segment& t);

// ---- predicates ----

// Open-disc intersection semantics: true iff the open disc of radius r at c
// meets the segment, i.e. dist < r - eps. Tangency does not intersect.
bool discSegmentIntersects(Point c, double r, const Segment& s, Tolerance tol = {});

// Orientation sign of (a,b,c): >0 left turn, <0 right turn.
inline double orient(Point a, Point b, Point c) { return (b - a).cross(c - a); }

bool segmentsIntersect(const Segment& s, const Segment& t);

// ---- tangents ----

// Common tangent segments between two circles (radius 0 degenerates to a
// point). Up to 4 results: the outer pair first, then the inner pair, each
// in a fixed branch order. Returns an empty list when one circle strictly
// contains the other (no tangent exists) or the circles are concentric.
std::vector<Segment> tangentPoints(Point c1, double r1, Point c2, double r2);

// ---- intersections used by boundary splitting ----

// Parameters t in [0,1] where the segment meets the circle. A tangential
// contact (|closest distance - r| <= tangentTol) yields the single touch
// parameter.
std::vector<double> segmentCircleParams(const Segment& s, Point c, double r,
                                        double tangentTol = 1e-9);

// Intersection points of two circles; tangential contact yields one point.
std::vector<Point> circleCircleIntersections(Point c1, double r1, Point c2, double r2,
                                             double tangentTol = 1e-9);

// Intersection parameter pair (t on s, u on t) for proper segment crossings.
std::optional<std::pair<double, double>> segmentSegmentParams(const Segment& s,
                                                              const Segment& t);

// ---- polygons ----

struct Polygon {
    std::vector<Point> v;

    std::size_t size() const { return v.size(); }
    Segment edge(std::size_t i) const { return {v[i], v[(i + 1) % v.size()]}; }
    double signedArea() const;
    bool isCCW() const { return signedArea() > 0.0; }
    Polygon reversed() const;
    bool contains(Point p) const;  // even-odd rule; boundary points unspecified
    double distToBoundary(Point p) const;
    // Positive depth inside, negative distance outside.
    double signedDepth(Point p) const;
};

double distSegmentPolygonBoundary(const Segment& s, const Polygon& poly);

}  // namespace discplan::geom
