#include "discplan/geom.hpp"

#include <algorithm>
#include <limits>

namespace discplan::geom {

double normalizeAngle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    if (a >= kTwoPi) a = 0.0;  // fmod may round to 2*pi from below
    return a;
}

double Arc::sweep() const {
    double d = ccw ? normalizeAngle(endAngle - startAngle) : normalizeAngle(startAngle - endAngle);
    if (d == 0.0) d = kTwoPi;  // equal angles denote a full circle
    return ccw ? d : -d;
}

double Arc::offsetOf(double ang) const {
    return ccw ? normalizeAngle(ang - startAngle) : normalizeAngle(startAngle - ang);
}

bool Arc::containsAngle(double ang, double angTol) const {
    double off = offsetOf(ang);
    double ext = std::abs(sweep());
    if (off <= ext + angTol) return true;
    // wrap-around: an offset just below 2*pi is within angTol of the start
    return off >= kTwoPi - angTol;
}

double elementLength(const Element& e) {
    return std::visit([](const auto& x) { return x.length(); }, e);
}

Point elementStart(const Element& e) {
    if (const auto* s = std::get_if<Segment>(&e)) return s->a;
    return std::get<Arc>(e).startPoint();
}

Point elementEnd(const Element& e) {
    if (const auto* s = std::get_if<Segment>(&e)) return s->b;
    return std::get<Arc>(e).endPoint();
}

Point elementPointAt(const Element& e, double s) {
    double len = elementLength(e);
    double t = len > 0.0 ? std::clamp(s / len, 0.0, 1.0) : 0.0;
    return std::visit([&](const auto& x) { return x.at(t); }, e);
}

namespace {
Vec arcTangentAt(const Arc& a, double ang) {
    Vec radial{std::cos(ang), std::sin(ang)};
    return a.ccw ? radial.perp() : -radial.perp();
}
}  // namespace

Vec elementStartTangent(const Element& e) {
    if (const auto* s = std::get_if<Segment>(&e)) return s->dir();
    const Arc& a = std::get<Arc>(e);
    return arcTangentAt(a, a.startAngle);
}

Vec elementEndTangent(const Element& e) {
    if (const auto* s = std::get_if<Segment>(&e)) return s->dir();
    const Arc& a = std::get<Arc>(e);
    return arcTangentAt(a, a.endAngle);
}

Point closestPointOnSegment(Point p, const Segment& s) {
    Vec d = s.b - s.a;
    double len2 = d.squaredNorm();
    if (len2 == 0.0) return s.a;
    double t = std::clamp((p - s.a).dot(d) / len2, 0.0, 1.0);
    return s.at(t);
}

double distPointSegment(Point p, const Segment& s) {
    return dist(p, closestPointOnSegment(p, s));
}

Point closestPointOnArc(Point p, const Arc& a) {
    Vec d = p - a.center;
    if (d.norm() > 0.0) {
        double ang = normalizeAngle(d.angle());
        if (a.containsAngle(ang)) return a.pointAtAngle(ang);
    }
    Point s = a.startPoint();
    Point e = a.endPoint();
    return squaredDist(p, s) <= squaredDist(p, e) ? s : e;
}

double distPointArc(Point p, const Arc& a) {
    return dist(p, closestPointOnArc(p, a));
}

double distPointElement(Point p, const Element& e) {
    if (const auto* s = std::get_if<Segment>(&e)) return distPointSegment(p, *s);
    return distPointArc(p, std::get<Arc>(e));
}

bool segmentsIntersect(const Segment& s, const Segment& t) {
    double d1 = orient(s.a, s.b, t.a);
    double d2 = orient(s.a, s.b, t.b);
    double d3 = orient(t.a, t.b, s.a);
    double d4 = orient(t.a, t.b, s.b);
    if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != d2 && d3 != d4) return true;
    auto onSeg = [](Point a, Point b, Point q) {
        return orient(a, b, q) == 0.0 && std::min(a.x, b.x) <= q.x && q.x <= std::max(a.x, b.x) &&
               std::min(a.y, b.y) <= q.y && q.y <= std::max(a.y, b.y);
    };
    return onSeg(s.a, s.b, t.a) || onSeg(s.a, s.b, t.b) || onSeg(t.a, t.b, s.a) ||
           onSeg(t.a, t.b, s.b);
}

double distSegmentSegment(const Segment& s, const Segment& t) {
    if (segmentsIntersect(s, t)) return 0.0;
    double d = distPointSegment(s.a, t);
    d = std::min(d, distPointSegment(s.b, t));
    d = std::min(d, distPointSegment(t.a, s));
    d = std::min(d, distPointSegment(t.b, s));
    return d;
}

bool discSegmentIntersects(Point c, double r, const Segment& s, Tolerance tol) {
    return distPointSegment(c, s) < r - tol.eps;
}

std::vector<Segment> tangentPoints(Point c1, double r1, Point c2, double r2) {
    std::vector<Segment> out;
    Vec cd = c2 - c1;
    double d = cd.norm();
    if (d <= 1e-15) return out;  // concentric or identical
    Vec u = cd * (1.0 / d);
    Vec up = u.perp();

    // Tangent lines have unit normal n with n.u = (s2*r2 - r1)/d; the touch
    // points are ci - ri*si*n. Outer family s2=+1, inner family s2=-1.
    auto emit = [&](double s2) {
        double cosv = (s2 * r2 - r1) / d;
        if (std::abs(cosv) > 1.0) return;  // family absent (containment / overlap)
        double sinv = std::sqrt(std::max(0.0, 1.0 - cosv * cosv));
        for (double branch : {+1.0, -1.0}) {
            Vec n = u * cosv + up * (sinv * branch);
            Point p1 = c1 - n * r1;
            Point p2 = c2 - n * (s2 * r2);
            out.push_back({p1, p2});
            if (sinv == 0.0) break;  // both branches coincide
        }
    };
    bool p1degenerate = r1 <= 0.0;
    bool p2degenerate = r2 <= 0.0;
    emit(+1.0);
    // When either circle is a point the inner family duplicates the outer.
    if (!p1degenerate && !p2degenerate) emit(-1.0);
    if (p1degenerate && p2degenerate) out.assign(1, Segment{c1, c2});
    return out;
}

std::vector<double> segmentCircleParams(const Segment& s, Point c, double r,
                                        double tangentTol) {
    std::vector<double> out;
    Vec d = s.b - s.a;
    double len2 = d.squaredNorm();
    if (len2 == 0.0) return out;
    Vec f = s.a - c;
    double A = len2;
    double B = 2.0 * f.dot(d);
    double C = f.squaredNorm() - r * r;
    double disc = B * B - 4.0 * A * C;
    // Perpendicular distance from c to the support line, for the tangency test.
    double tline = -B / (2.0 * A);
    Point foot = {s.a.x + d.x * tline, s.a.y + d.y * tline};
    double dline = dist(foot, c);
    if (std::abs(dline - r) <= tangentTol) {
        if (tline >= -1e-12 && tline <= 1.0 + 1e-12) out.push_back(std::clamp(tline, 0.0, 1.0));
        return out;
    }
    if (disc <= 0.0) return out;
    double sq = std::sqrt(disc);
    for (double t : {(-B - sq) / (2.0 * A), (-B + sq) / (2.0 * A)}) {
        if (t >= -1e-12 && t <= 1.0 + 1e-12) out.push_back(std::clamp(t, 0.0, 1.0));
    }
    return out;
}

std::vector<Point> circleCircleIntersections(Point c1, double r1, Point c2, double r2,
                                             double tangentTol) {
    std::vector<Point> out;
    Vec cd = c2 - c1;
    double d = cd.norm();
    if (d <= 1e-15) return out;
    Vec u = cd * (1.0 / d);
    if (std::abs(d - (r1 + r2)) <= tangentTol || std::abs(d - std::abs(r1 - r2)) <= tangentTol) {
        // External or internal tangency: single touch point on the center line.
        double a = std::abs(d - (r1 + r2)) <= tangentTol ? r1 : (r1 >= r2 ? r1 : -r1);
        out.push_back(c1 + u * a);
        return out;
    }
    if (d > r1 + r2 || d < std::abs(r1 - r2)) return out;
    double a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    double h2 = r1 * r1 - a * a;
    double h = std::sqrt(std::max(0.0, h2));
    Point mid = c1 + u * a;
    Vec up = u.perp();
    out.push_back(mid + up * h);
    out.push_back(mid - up * h);
    return out;
}

std::optional<std::pair<double, double>> segmentSegmentParams(const Segment& s,
                                                              const Segment& t) {
    Vec r = s.b - s.a;
    Vec q = t.b - t.a;
    double denom = r.cross(q);
    if (denom == 0.0) return std::nullopt;  // parallel or collinear: no proper crossing
    Vec w = t.a - s.a;
    double ts = w.cross(q) / denom;
    double tt = w.cross(r) / denom;
    if (ts < -1e-12 || ts > 1.0 + 1e-12 || tt < -1e-12 || tt > 1.0 + 1e-12) return std::nullopt;
    return std::make_pair(std::clamp(ts, 0.0, 1.0), std::clamp(tt, 0.0, 1.0));
}

double Polygon::signedArea() const {
    double a = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        Point p = v[i];
        Point q = v[(i + 1) % v.size()];
        a += p.x * q.y - q.x * p.y;
    }
    return 0.5 * a;
}

Polygon Polygon::reversed() const {
    Polygon out;
    out.v.assign(v.rbegin(), v.rend());
    return out;
}

bool Polygon::contains(Point p) const {
    bool inside = false;
    for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
        const Point& a = v[i];
        const Point& b = v[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            double xCross = (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x;
            if (p.x < xCross) inside = !inside;
        }
    }
    return inside;
}

double Polygon::distToBoundary(Point p) const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i) best = std::min(best, distPointSegment(p, edge(i)));
    return best;
}

double Polygon::signedDepth(Point p) const {
    double d = distToBoundary(p);
    return contains(p) ? d : -d;
}

double distSegmentPolygonBoundary(const Segment& s, const Polygon& poly) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poly.size(); ++i)
        best = std::min(best, distSegmentSegment(s, poly.edge(i)));
    return best;
}

}  // namespace discplan::geom
