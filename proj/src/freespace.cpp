#include "discplan/freespace.hpp"

#include "discplan/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

namespace discplan::freespace {

using geom::Arc;
using geom::ArcPolygon;
using geom::Chain;
using geom::Element;
using geom::kTwoPi;
using geom::normalizeAngle;
using geom::Point;
using geom::Polygon;
using geom::Segment;
using geom::Vec;

namespace {

// Sub-edges shorter than this are dropped; node matching in the stitcher
// bridges the resulting gaps, so the two values must stay ordered.
constexpr double kMinPieceLen = 5e-7;
constexpr double kNodeMatchTol = 1e-6;
// Midpoint classification band for keeping a candidate piece on the boundary.
constexpr double kSlackBand = 1e-6;

// ---- candidate emission -------------------------------------------------

// Emits the unit-offset boundary of a polygon traversed with the free side
// on the left: one offset segment per edge, one clockwise radius-1 arc per
// right turn. Left-turn corners are left to mutual trimming.
void emitOffset(const Polygon& poly, std::vector<Element>& out) {
    std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        Segment e = poly.edge(i);
        Vec nrm = e.dir().perp();
        out.push_back(Segment{e.a + nrm, e.b + nrm});
    }
    for (std::size_t i = 0; i < n; ++i) {
        Point v = poly.v[i];
        Vec dIn = (v - poly.v[(i + n - 1) % n]).normalized();
        Vec dOut = (poly.v[(i + 1) % n] - v).normalized();
        if (dIn.cross(dOut) < -1e-12) {
            double a0 = dIn.perp().angle();
            double a1 = dOut.perp().angle();
            out.push_back(Arc{v, 1.0, normalizeAngle(a0), normalizeAngle(a1), false});
        }
    }
}

std::vector<Element> candidateCurves(const ObstacleSpace& obs,
                                     const std::vector<Point>& discs) {
    std::vector<Element> out;
    Polygon ws = obs.workspace.isCCW() ? obs.workspace : obs.workspace.reversed();
    emitOffset(ws, out);
    for (const Polygon& p : obs.obstacles) {
        Polygon cw = p.isCCW() ? p.reversed() : p;  // free side (outside) on the left
        emitOffset(cw, out);
    }
    for (Point c : discs) out.push_back(Arc{c, 2.0, 0.0, 0.0, false});
    return out;
}

// ---- splitting -----------------------------------------------------------

// Natural parameter span of a curve: 1 for segments, |sweep| for arcs.
double paramSpan(const Element& e) {
    if (std::holds_alternative<Segment>(e)) return 1.0;
    return std::abs(std::get<Arc>(e).sweep());
}

double arcAngleAtOffset(const Arc& a, double off) {
    return a.ccw ? a.startAngle + off : a.startAngle - off;
}

void intersectCurves(const Element& A, const Element& B, std::vector<double>& cutsA,
                     std::vector<double>& cutsB) {
    const auto* sa = std::get_if<Segment>(&A);
    const auto* sb = std::get_if<Segment>(&B);
    if (sa && sb) {
        if (auto hit = geom::segmentSegmentParams(*sa, *sb)) {
            cutsA.push_back(hit->first);
            cutsB.push_back(hit->second);
        }
        return;
    }
    if (sa || sb) {
        const Segment& s = sa ? *sa : *sb;
        const Arc& a = sa ? std::get<Arc>(B) : std::get<Arc>(A);
        auto& segCuts = sa ? cutsA : cutsB;
        auto& arcCuts = sa ? cutsB : cutsA;
        for (double t : geom::segmentCircleParams(s, a.center, a.radius)) {
            Point p = s.at(t);
            double ang = normalizeAngle((p - a.center).angle());
            if (!a.containsAngle(ang, 1e-9)) continue;
            segCuts.push_back(t);
            arcCuts.push_back(std::min(a.offsetOf(ang), std::abs(a.sweep())));
        }
        return;
    }
    const Arc& a = std::get<Arc>(A);
    const Arc& b = std::get<Arc>(B);
    if (geom::dist(a.center, b.center) <= 1e-12 && std::abs(a.radius - b.radius) <= 1e-12)
        return;  // same supporting circle
    for (Point p : geom::circleCircleIntersections(a.center, a.radius, b.center, b.radius)) {
        double angA = normalizeAngle((p - a.center).angle());
        double angB = normalizeAngle((p - b.center).angle());
        if (!a.containsAngle(angA, 1e-9) || !b.containsAngle(angB, 1e-9)) continue;
        cutsA.push_back(std::min(a.offsetOf(angA), std::abs(a.sweep())));
        cutsB.push_back(std::min(b.offsetOf(angB), std::abs(b.sweep())));
    }
}

void subdivide(const Element& e, std::vector<double> cuts, std::vector<Element>& out) {
    double span = paramSpan(e);
    cuts.push_back(0.0);
    cuts.push_back(span);
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double p0 = std::clamp(cuts[i], 0.0, span);
        double p1 = std::clamp(cuts[i + 1], 0.0, span);
        if (p1 <= p0) continue;
        if (const auto* s = std::get_if<Segment>(&e)) {
            Segment piece{s->at(p0), s->at(p1)};
            if (piece.length() >= kMinPieceLen) out.push_back(piece);
        } else {
            const Arc& a = std::get<Arc>(e);
            if ((p1 - p0) * a.radius < kMinPieceLen) continue;
            bool full = p1 - p0 >= kTwoPi - 1e-12;
            double a0 = normalizeAngle(arcAngleAtOffset(a, p0));
            double a1 = full ? a0 : normalizeAngle(arcAngleAtOffset(a, p1));
            out.push_back(Arc{a.center, a.radius, a0, a1, a.ccw});
        }
    }
}

Point midpointOf(const Element& e) {
    if (const auto* s = std::get_if<Segment>(&e)) return s->at(0.5);
    const Arc& a = std::get<Arc>(e);
    return a.pointAtAngle(a.angleAt(0.5));
}

// ---- stitching -----------------------------------------------------------

struct NodeIndex {
    std::unordered_map<long long, std::vector<int>> cells;
    std::vector<Point> pts;

    static long long key(long long cx, long long cy) { return cx * 2000003LL + cy; }

    int findOrCreate(Point p) {
        long long cx = static_cast<long long>(std::floor(p.x / kNodeMatchTol));
        long long cy = static_cast<long long>(std::floor(p.y / kNodeMatchTol));
        for (long long dx = -1; dx <= 1; ++dx)
            for (long long dy = -1; dy <= 1; ++dy) {
                auto it = cells.find(key(cx + dx, cy + dy));
                if (it == cells.end()) continue;
                for (int id : it->second)
                    if (geom::dist(pts[id], p) <= kNodeMatchTol) return id;
            }
        int id = static_cast<int>(pts.size());
        pts.push_back(p);
        cells[key(cx, cy)].push_back(id);
        return id;
    }
};

// Walks retained pieces into closed chains. Junctions normally have exactly
// one incoming and one outgoing piece; tangential contacts produce nodes of
// degree two, resolved by tangent-direction continuity.
std::vector<Chain> stitchChains(const std::vector<Element>& pieces) {
    NodeIndex nodes;
    std::vector<int> startNode(pieces.size()), endNode(pieces.size());
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        startNode[i] = nodes.findOrCreate(geom::elementStart(pieces[i]));
        endNode[i] = nodes.findOrCreate(geom::elementEnd(pieces[i]));
    }
    std::vector<std::vector<int>> outgoing(nodes.pts.size());
    std::vector<int> incomingCount(nodes.pts.size(), 0);
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        outgoing[startNode[i]].push_back(static_cast<int>(i));
        ++incomingCount[endNode[i]];
    }
    for (std::size_t n = 0; n < nodes.pts.size(); ++n) {
        if (outgoing[n].empty() || incomingCount[n] != static_cast<int>(outgoing[n].size()))
            throw InvariantViolation("free-space stitching: open boundary at node");
    }
    std::vector<bool> used(pieces.size(), false);
    auto nextPiece = [&](int cur) {
        geom::Vec t = geom::elementEndTangent(pieces[cur]);
        int best = -1;
        double bestDot = -2.0;
        for (int cand : outgoing[endNode[cur]]) {
            if (used[cand]) continue;
            double d = t.dot(geom::elementStartTangent(pieces[cand]));
            if (d > bestDot) {
                bestDot = d;
                best = cand;
            }
        }
        return best;
    };
    std::vector<Chain> chains;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (used[i]) continue;
        Chain c;
        int cur = static_cast<int>(i);
        while (cur != -1 && !used[cur]) {
            used[cur] = true;
            c.edges.push_back(pieces[cur]);
            if (endNode[cur] == startNode[static_cast<int>(i)]) break;  // closed
            cur = nextPiece(cur);
        }
        if (c.edges.empty() ||
            geom::dist(geom::elementEnd(c.edges.back()),
                       geom::elementStart(c.edges.front())) > kNodeMatchTol)
            throw InvariantViolation("free-space stitching: chain does not close");
        chains.push_back(std::move(c));
    }
    return chains;
}

std::vector<ArcPolygon> groupRegions(std::vector<Chain> chains) {
    struct Outer {
        Chain chain;
        double area;
    };
    std::vector<Outer> outers;
    std::vector<Chain> holes;
    for (auto& c : chains) {
        double a = c.signedArea();
        if (std::abs(a) < 1e-9)
            throw InvariantViolation("free-space grouping: degenerate chain");
        if (a > 0)
            outers.push_back({std::move(c), a});
        else
            holes.push_back(std::move(c));
    }
    std::vector<ArcPolygon> regions;
    regions.reserve(outers.size());
    for (auto& o : outers) regions.push_back(ArcPolygon{std::move(o.chain), {}});
    for (auto& h : holes) {
        Point rep = midpointOf(h.edges.front());
        int best = -1;
        double bestArea = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < regions.size(); ++i) {
            if (outers[i].area < bestArea && regions[i].outer.contains(rep)) {
                bestArea = outers[i].area;
                best = static_cast<int>(i);
            }
        }
        if (best < 0) throw InvariantViolation("free-space grouping: hole outside all outers");
        regions[static_cast<std::size_t>(best)].holes.push_back(std::move(h));
    }
    return regions;
}

}  // namespace

void ObstacleSpace::normalizeOrientation() {
    if (!workspace.isCCW()) workspace = workspace.reversed();
    for (Polygon& p : obstacles)
        if (!p.isCCW()) p = p.reversed();
}

double FreeSpace::clearanceSlack(Point p) const {
    double slack = obs_->workspace.signedDepth(p) - 1.0;
    for (const Polygon& o : obs_->obstacles) slack = std::min(slack, -o.signedDepth(p) - 1.0);
    for (Point c : discs_) slack = std::min(slack, geom::dist(p, c) - 2.0);
    return slack;
}

bool FreeSpace::segmentClear(const Segment& s, double margin) const {
    double sminx = std::min(s.a.x, s.b.x), smaxx = std::max(s.a.x, s.b.x);
    double sminy = std::min(s.a.y, s.b.y), smaxy = std::max(s.a.y, s.b.y);
    auto farFromBox = [&](double fminx, double fmaxx, double fminy, double fmaxy, double off) {
        double gx = std::max({0.0, fminx - smaxx, sminx - fmaxx});
        double gy = std::max({0.0, fminy - smaxy, sminy - fmaxy});
        return gx * gx + gy * gy >= off * off;
    };
    auto checkPolygon = [&](const Polygon& poly) {
        for (std::size_t i = 0; i < poly.size(); ++i) {
            Segment e = poly.edge(i);
            if (farFromBox(std::min(e.a.x, e.b.x), std::max(e.a.x, e.b.x),
                           std::min(e.a.y, e.b.y), std::max(e.a.y, e.b.y), 1.0))
                continue;
            if (geom::distSegmentSegment(s, e) < 1.0 - margin) return false;
        }
        return true;
    };
    if (!checkPolygon(obs_->workspace)) return false;
    for (const Polygon& o : obs_->obstacles)
        if (!checkPolygon(o)) return false;
    for (Point c : discs_) {
        if (farFromBox(c.x, c.x, c.y, c.y, 2.0)) continue;
        if (geom::distPointSegment(c, s) < 2.0 - margin) return false;
    }
    return true;
}

int FreeSpace::locate(Point p) const {
    int best = kOutside;
    double bestArea = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < regions_.size(); ++i) {
        double a = regions_[i].outer.signedArea();
        if (a < bestArea && regions_[i].outer.contains(p)) {
            bestArea = a;
            best = static_cast<int>(i);
        }
    }
    if (best == kOutside) return kOutside;
    for (const Chain& h : regions_[static_cast<std::size_t>(best)].holes)
        if (h.contains(p)) return kOutside;
    return best;
}

void FreeSpace::trace(const std::vector<Element>& curves) {
    std::vector<std::vector<double>> cuts(curves.size());
    for (std::size_t i = 0; i < curves.size(); ++i)
        for (std::size_t j = i + 1; j < curves.size(); ++j)
            intersectCurves(curves[i], curves[j], cuts[i], cuts[j]);

    std::vector<Element> kept;
    for (std::size_t i = 0; i < curves.size(); ++i) {
        std::vector<Element> pieces;
        subdivide(curves[i], std::move(cuts[i]), pieces);
        for (const Element& piece : pieces)
            if (clearanceSlack(midpointOf(piece)) >= -kSlackBand) kept.push_back(piece);
    }
    regions_ = groupRegions(stitchChains(kept));
}

FreeSpace FreeSpace::build(const ObstacleSpace& obs) {
    auto owned = std::make_shared<ObstacleSpace>(obs);
    owned->normalizeOrientation();
    FreeSpace f;
    f.obs_ = owned;
    f.discs_ = owned->parkedRobots;
    f.trace(candidateCurves(*owned, f.discs_));
    return f;
}

FreeSpace FreeSpace::withGoalDisc(Point t) const {
    if (locate(t) == kOutside) throw PointOutsideFreeSpace(t.x, t.y);
    FreeSpace f;
    f.obs_ = obs_;
    f.discs_ = discs_;
    f.discs_.push_back(t);
    std::vector<Element> curves;
    for (const ArcPolygon& r : regions_) {
        for (const Element& e : r.outer.edges) curves.push_back(e);
        for (const Chain& h : r.holes)
            for (const Element& e : h.edges) curves.push_back(e);
    }
    curves.push_back(Arc{t, 2.0, 0.0, 0.0, false});
    f.trace(curves);
    return f;
}

FreeSpace buildFreeSpace(const ObstacleSpace& obs) { return FreeSpace::build(obs); }

FreeSpace removeGoalDisc(const FreeSpace& f, Point t) { return f.withGoalDisc(t); }

int locate(const FreeSpace& f, Point p) { return f.locate(p); }

ComponentCounts countEndpointsPerComponent(const FreeSpace& f,
                                           const std::vector<Point>& starts,
                                           const std::vector<Point>& goals) {
    ComponentCounts out;
    out.perComponent.assign(f.regions().size(), {0, 0});
    for (Point s : starts) {
        int c = f.locate(s);
        if (c == FreeSpace::kOutside) throw PointOutsideFreeSpace(s.x, s.y);
        ++out.perComponent[static_cast<std::size_t>(c)].first;
    }
    for (Point g : goals) {
        int c = f.locate(g);
        if (c == FreeSpace::kOutside) throw PointOutsideFreeSpace(g.x, g.y);
        ++out.perComponent[static_cast<std::size_t>(c)].second;
    }
    for (auto [ns, ng] : out.perComponent)
        if (ns != ng) out.balanced = false;
    return out;
}

}  // namespace discplan::freespace
