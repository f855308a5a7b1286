#include "discplan/paths.hpp"

#include "discplan/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace discplan::paths {

using freespace::FreeSpace;
using geom::Arc;
using geom::Element;
using geom::normalizeAngle;
using geom::Point;
using geom::Segment;
using geom::Vec;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
// Clearance margin for straight graph edges; tangent segments sit exactly at
// the clearance distance, so the margin only absorbs rounding.
constexpr double kEdgeMargin = 1e-7;
constexpr double kContinuityTol = 1e-6;
}  // namespace

PolyArcPath PolyArcPath::atPoint(Point p) {
    PolyArcPath out;
    out.anchor_ = p;
    return out;
}

PolyArcPath PolyArcPath::fromElements(Point anchor, std::vector<Element> elements) {
    PolyArcPath out;
    out.anchor_ = anchor;
    out.elements_ = std::move(elements);
    Point cur = anchor;
    for (const Element& e : out.elements_) {
        if (geom::dist(cur, geom::elementStart(e)) > kContinuityTol)
            throw InvariantViolation("path elements are not contiguous");
        cur = geom::elementEnd(e);
        out.length_ += geom::elementLength(e);
    }
    return out;
}

Point PolyArcPath::start() const { return anchor_; }

Point PolyArcPath::end() const {
    return elements_.empty() ? anchor_ : geom::elementEnd(elements_.back());
}

Point PolyArcPath::pointAt(double s) const {
    if (elements_.empty()) return anchor_;
    if (s <= 0.0) return start();
    for (const Element& e : elements_) {
        double len = geom::elementLength(e);
        if (s <= len) return geom::elementPointAt(e, s);
        s -= len;
    }
    return end();
}

double PolyArcPath::minDistTo(Point p) const {
    if (elements_.empty()) return geom::dist(p, anchor_);
    double best = kInf;
    for (const Element& e : elements_) best = std::min(best, geom::distPointElement(p, e));
    return best;
}

namespace {

// Splits an element at arc-length s, producing the two halves.
std::pair<Element, Element> splitElement(const Element& e, double s) {
    if (const auto* seg = std::get_if<Segment>(&e)) {
        double t = std::clamp(s / seg->length(), 0.0, 1.0);
        Point m = seg->at(t);
        return {Segment{seg->a, m}, Segment{m, seg->b}};
    }
    const Arc& a = std::get<Arc>(e);
    double t = std::clamp(s / a.length(), 0.0, 1.0);
    double mid = a.angleAt(t);
    Arc first{a.center, a.radius, a.startAngle, normalizeAngle(mid), a.ccw};
    Arc second{a.center, a.radius, normalizeAngle(mid), a.endAngle, a.ccw};
    return {first, second};
}

}  // namespace

PolyArcPath pathPrefix(const PolyArcPath& p, double to) {
    if (to < -1e-9 || to > p.length() + 1e-9)
        throw std::out_of_range("pathPrefix: parameter outside [0, length]");
    to = std::clamp(to, 0.0, p.length());
    std::vector<Element> kept;
    double acc = 0.0;
    for (const Element& e : p.elements()) {
        double len = geom::elementLength(e);
        if (acc + len <= to + 1e-12) {
            kept.push_back(e);
            acc += len;
            continue;
        }
        double inside = to - acc;
        if (inside > 1e-12) kept.push_back(splitElement(e, inside).first);
        break;
    }
    return PolyArcPath::fromElements(p.start(), std::move(kept));
}

PolyArcPath pathSuffix(const PolyArcPath& p, double from) {
    if (from < -1e-9 || from > p.length() + 1e-9)
        throw std::out_of_range("pathSuffix: parameter outside [0, length]");
    from = std::clamp(from, 0.0, p.length());
    std::vector<Element> kept;
    double acc = 0.0;
    bool cutting = true;
    for (const Element& e : p.elements()) {
        double len = geom::elementLength(e);
        if (cutting) {
            if (acc + len <= from + 1e-12) {
                acc += len;
                continue;
            }
            double inside = from - acc;
            if (inside > 1e-12)
                kept.push_back(splitElement(e, inside).second);
            else
                kept.push_back(e);
            cutting = false;
            continue;
        }
        kept.push_back(e);
    }
    Point anchor = kept.empty() ? p.end() : geom::elementStart(kept.front());
    return PolyArcPath::fromElements(anchor, std::move(kept));
}

bool pathGoalInterference(const PolyArcPath& path, Point v, double eps) {
    return path.minDistTo(v) < 2.0 - eps;
}

std::optional<Interference> lastInterferencePoint(const PolyArcPath& path,
                                                  const std::vector<Point>& starts) {
    std::optional<Interference> best;
    for (std::size_t i = 0; i < starts.size(); ++i) {
        Point s = starts[i];
        if (!pathGoalInterference(path, s)) continue;
        // The interference interval ends at the last crossing of the radius-2
        // circle around s; the path's endpoints lie outside it.
        double lastParam = -1.0;
        Point lastPoint{};
        double acc = 0.0;
        for (const Element& e : path.elements()) {
            double len = geom::elementLength(e);
            if (const auto* seg = std::get_if<Segment>(&e)) {
                for (double t : geom::segmentCircleParams(*seg, s, 2.0)) {
                    double par = acc + t * len;
                    if (par > lastParam) {
                        lastParam = par;
                        lastPoint = seg->at(t);
                    }
                }
            } else {
                const Arc& a = std::get<Arc>(e);
                for (Point p : geom::circleCircleIntersections(a.center, a.radius, s, 2.0)) {
                    double ang = normalizeAngle((p - a.center).angle());
                    if (!a.containsAngle(ang, 1e-9)) continue;
                    double par = acc + std::min(a.offsetOf(ang), std::abs(a.sweep())) * a.radius;
                    if (par > lastParam) {
                        lastParam = par;
                        lastPoint = p;
                    }
                }
            }
            acc += len;
        }
        if (lastParam < 0.0)
            throw InvariantViolation("interfering start without circle crossing");
        if (!best || lastParam > best->param)
            best = Interference{lastPoint, static_cast<int>(i), lastParam};
    }
    return best;
}

// ---- visibility graph ----------------------------------------------------

void VisibilityGraph::addEdge(int u, int v, const Element& geo) {
    double len = geom::elementLength(geo);
    adj_[static_cast<std::size_t>(u)].push_back({v, len, geo});
    Element back = std::visit([](const auto& g) -> Element { return g.reversed(); }, geo);
    adj_[static_cast<std::size_t>(v)].push_back({u, len, back});
}

VisibilityGraph::VisibilityGraph(const FreeSpace& f, std::vector<Point> terminals) {
    struct ArcFeature {
        Arc arc;
        std::vector<std::pair<double, int>> marks;  // (angular offset, node)
    };
    std::vector<ArcFeature> arcs;
    std::vector<int> pointNodes;  // chain junctions and terminals

    auto addNode = [&](Point p) {
        nodes_.push_back(p);
        return static_cast<int>(nodes_.size()) - 1;
    };

    // Boundary junctions become nodes; every chain edge contributes its start.
    auto walkChain = [&](const geom::Chain& c) {
        std::size_t n = c.edges.size();
        std::vector<int> startIds(n);
        for (std::size_t i = 0; i < n; ++i)
            startIds[i] = addNode(geom::elementStart(c.edges[i]));
        for (std::size_t i = 0; i < n; ++i) {
            pointNodes.push_back(startIds[i]);
            if (const Arc* a = std::get_if<Arc>(&c.edges[i])) {
                ArcFeature feat{*a, {}};
                feat.marks.emplace_back(0.0, startIds[i]);
                feat.marks.emplace_back(std::abs(a->sweep()), startIds[(i + 1) % n]);
                arcs.push_back(std::move(feat));
            }
        }
    };
    for (const auto& r : f.regions()) {
        walkChain(r.outer);
        for (const auto& h : r.holes) walkChain(h);
    }

    terminalNode_.reserve(terminals.size());
    for (Point t : terminals) {
        int id = addNode(t);
        terminalNode_.push_back(id);
        pointNodes.push_back(id);
    }

    // Candidate straight segments: point-point visibility, point-arc tangents
    // and arc-arc bitangents; each must keep all clearance constraints.
    struct Candidate {
        int u, v;
        Segment seg;
    };
    std::vector<Candidate> candidates;
    std::vector<std::pair<int, int>> zeroHops;
    for (std::size_t i = 0; i < pointNodes.size(); ++i) {
        for (std::size_t j = i + 1; j < pointNodes.size(); ++j) {
            int u = pointNodes[i], v = pointNodes[j];
            if (geom::dist(nodes_[u], nodes_[v]) < 1e-9) {
                zeroHops.emplace_back(u, v);  // coincident nodes, e.g. a start on a goal
                continue;
            }
            candidates.push_back({u, v, Segment{nodes_[u], nodes_[v]}});
        }
    }
    auto markArc = [&](ArcFeature& feat, double off, Point p) {
        int id = addNode(p);
        feat.marks.emplace_back(off, id);
        return id;
    };
    for (std::size_t pi = 0; pi < pointNodes.size(); ++pi) {
        int u = pointNodes[pi];
        Point p = nodes_[static_cast<std::size_t>(u)];
        for (auto& feat : arcs) {
            const Arc& a = feat.arc;
            if (geom::dist(p, a.center) <= a.radius + 1e-12) continue;
            for (const Segment& t : geom::tangentPoints(p, 0.0, a.center, a.radius)) {
                double ang = normalizeAngle((t.b - a.center).angle());
                if (!a.containsAngle(ang, 1e-9)) continue;
                if (t.length() < 1e-9) continue;
                int v = markArc(feat, std::min(a.offsetOf(ang), std::abs(a.sweep())), t.b);
                candidates.push_back({u, v, t});
            }
        }
    }
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        for (std::size_t j = i + 1; j < arcs.size(); ++j) {
            const Arc& a = arcs[i].arc;
            const Arc& b = arcs[j].arc;
            if (geom::dist(a.center, b.center) <= 1e-12 &&
                std::abs(a.radius - b.radius) <= 1e-12)
                continue;
            for (const Segment& t :
                 geom::tangentPoints(a.center, a.radius, b.center, b.radius)) {
                double angA = normalizeAngle((t.a - a.center).angle());
                double angB = normalizeAngle((t.b - b.center).angle());
                if (!a.containsAngle(angA, 1e-9) || !b.containsAngle(angB, 1e-9)) continue;
                if (t.length() < 1e-9) continue;
                int u = markArc(arcs[i], std::min(a.offsetOf(angA), std::abs(a.sweep())), t.a);
                int v = markArc(arcs[j], std::min(b.offsetOf(angB), std::abs(b.sweep())), t.b);
                candidates.push_back({u, v, t});
            }
        }
    }

    adj_.assign(nodes_.size(), {});
    for (auto [u, v] : zeroHops)
        addEdge(u, v, Segment{nodes_[static_cast<std::size_t>(u)],
                              nodes_[static_cast<std::size_t>(v)]});
    for (const Candidate& c : candidates)
        if (f.segmentClear(c.seg, kEdgeMargin)) addEdge(c.u, c.v, c.seg);

    // Arc portions between consecutive marks.
    for (auto& feat : arcs) {
        std::sort(feat.marks.begin(), feat.marks.end());
        const Arc& a = feat.arc;
        for (std::size_t k = 0; k + 1 < feat.marks.size(); ++k) {
            auto [o0, u] = feat.marks[k];
            auto [o1, v] = feat.marks[k + 1];
            if (u == v) continue;
            double a0 = a.ccw ? a.startAngle + o0 : a.startAngle - o0;
            double a1 = a.ccw ? a.startAngle + o1 : a.startAngle - o1;
            if (o1 - o0 < 1e-12) {
                // coincident marks: connect with a zero-cost hop
                addEdge(u, v, Segment{nodes_[static_cast<std::size_t>(u)],
                                      nodes_[static_cast<std::size_t>(v)]});
                continue;
            }
            addEdge(u, v, Arc{a.center, a.radius, normalizeAngle(a0), normalizeAngle(a1), a.ccw});
        }
    }
}

std::size_t VisibilityGraph::edgeCount() const {
    std::size_t n = 0;
    for (const auto& a : adj_) n += a.size();
    return n / 2;
}

VisibilityGraph::ShortestTree VisibilityGraph::shortestTreeFromTerminal(
    std::size_t terminal) const {
    ShortestTree tree;
    tree.dist.assign(nodes_.size(), kInf);
    tree.parentNode.assign(nodes_.size(), -1);
    tree.parentSlot.assign(nodes_.size(), -1);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    int src = terminalNode_[terminal];
    tree.dist[static_cast<std::size_t>(src)] = 0.0;
    pq.push({0.0, src});
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > tree.dist[static_cast<std::size_t>(u)]) continue;
        const auto& edges = adj_[static_cast<std::size_t>(u)];
        for (std::size_t slot = 0; slot < edges.size(); ++slot) {
            const HalfEdge& e = edges[slot];
            double nd = d + e.len;
            if (nd < tree.dist[static_cast<std::size_t>(e.to)] - 1e-15) {
                tree.dist[static_cast<std::size_t>(e.to)] = nd;
                tree.parentNode[static_cast<std::size_t>(e.to)] = u;
                tree.parentSlot[static_cast<std::size_t>(e.to)] = static_cast<int>(slot);
                pq.push({nd, e.to});
            }
        }
    }
    return tree;
}

double VisibilityGraph::distanceToTerminal(const ShortestTree& tree,
                                           std::size_t terminal) const {
    return tree.dist[static_cast<std::size_t>(terminalNode_[terminal])];
}

std::optional<PolyArcPath> VisibilityGraph::extractToTerminal(const ShortestTree& tree,
                                                              std::size_t terminal) const {
    int cur = terminalNode_[terminal];
    if (tree.dist[static_cast<std::size_t>(cur)] == kInf) return std::nullopt;
    std::vector<Element> rev;
    while (tree.parentNode[static_cast<std::size_t>(cur)] != -1) {
        int pu = tree.parentNode[static_cast<std::size_t>(cur)];
        int slot = tree.parentSlot[static_cast<std::size_t>(cur)];
        const HalfEdge& e = adj_[static_cast<std::size_t>(pu)][static_cast<std::size_t>(slot)];
        if (e.len > 1e-12) rev.push_back(e.geo);
        cur = pu;
    }
    std::vector<Element> fwd(rev.rbegin(), rev.rend());
    Point anchor = nodes_[static_cast<std::size_t>(cur)];
    return PolyArcPath::fromElements(anchor, std::move(fwd));
}

std::optional<PolyArcPath> shortestPath(const FreeSpace& f, Point s, Point t) {
    int cs = f.locate(s);
    if (cs == FreeSpace::kOutside) throw PointOutsideFreeSpace(s.x, s.y);
    int ct = f.locate(t);
    if (ct == FreeSpace::kOutside) throw PointOutsideFreeSpace(t.x, t.y);
    if (cs != ct) return std::nullopt;
    if (geom::dist(s, t) < 1e-12) return PolyArcPath::atPoint(s);
    VisibilityGraph g(f, {s, t});
    auto tree = g.shortestTreeFromTerminal(0);
    return g.extractToTerminal(tree, 1);
}

}  // namespace discplan::paths
