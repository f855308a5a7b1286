#include "discplan/arc_polygon.hpp"

#include <algorithm>
#include <limits>

namespace discplan::geom {

double Chain::signedArea() const {
    double a = 0.0;
    for (const Element& e : edges) {
        Point s = elementStart(e);
        Point t = elementEnd(e);
        a += 0.5 * (s.x * t.y - t.x * s.y);
        if (const Arc* arc = std::get_if<Arc>(&e)) {
            double th = arc->sweep();
            a += 0.5 * arc->radius * arc->radius * (th - std::sin(th));
        }
    }
    return a;
}

double Chain::closureGap() const {
    if (edges.empty()) return 0.0;
    double g = 0.0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        Point e = elementEnd(edges[i]);
        Point s = elementStart(edges[(i + 1) % edges.size()]);
        g = std::max(g, dist(e, s));
    }
    return g;
}

double Chain::distToBoundary(Point p) const {
    double best = std::numeric_limits<double>::infinity();
    for (const Element& e : edges) best = std::min(best, distPointElement(p, e));
    return best;
}

namespace {

// y values at which a horizontal ray through the chain would graze an
// endpoint or be tangent to an arc; crossing counts are only reliable away
// from these.
bool rayIsDegenerate(const Chain& c, double y, double tol) {
    for (const Element& e : c.edges) {
        Point s = elementStart(e);
        Point t = elementEnd(e);
        if (std::abs(s.y - y) < tol || std::abs(t.y - y) < tol) return true;
        if (const Arc* arc = std::get_if<Arc>(&e)) {
            if (std::abs(std::abs(y - arc->center.y) - arc->radius) < tol) return true;
        }
    }
    return false;
}

int countCrossings(const Chain& c, Point p) {
    int crossings = 0;
    for (const Element& e : c.edges) {
        if (const Segment* s = std::get_if<Segment>(&e)) {
            if ((s->a.y > p.y) != (s->b.y > p.y)) {
                double xc = s->a.x + (s->b.x - s->a.x) * (p.y - s->a.y) / (s->b.y - s->a.y);
                if (xc > p.x) ++crossings;
            }
        } else {
            const Arc& a = std::get<Arc>(e);
            double dy = p.y - a.center.y;
            if (std::abs(dy) >= a.radius) continue;
            double dx = std::sqrt(a.radius * a.radius - dy * dy);
            for (double sx : {+dx, -dx}) {
                double ang = std::atan2(dy, sx);
                if (!a.containsAngle(normalizeAngle(ang))) continue;
                if (a.center.x + sx > p.x) ++crossings;
            }
        }
    }
    return crossings;
}

}  // namespace

bool Chain::contains(Point p) const {
    if (edges.empty()) return false;
    double y = p.y;
    const double tol = 1e-9;
    for (int attempt = 0; attempt < 16 && rayIsDegenerate(*this, y, tol); ++attempt)
        y += (attempt % 2 == 0 ? 1.0 : -1.0) * (attempt + 1) * 1.3e-7;
    return countCrossings(*this, {p.x, y}) % 2 == 1;
}

double ArcPolygon::area() const {
    double a = outer.signedArea();
    for (const Chain& h : holes) a += h.signedArea();  // holes are CW: negative
    return a;
}

bool ArcPolygon::contains(Point p) const {
    if (!outer.contains(p)) return false;
    for (const Chain& h : holes)
        if (h.contains(p)) return false;
    return true;
}

double ArcPolygon::distToBoundary(Point p) const {
    double best = outer.distToBoundary(p);
    for (const Chain& h : holes) best = std::min(best, h.distToBoundary(p));
    return best;
}

}  // namespace discplan::geom
