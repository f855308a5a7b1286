#pragma once

// Single-robot shortest paths in a FreeSpace via a tangent graph over the
// segment-and-arc boundary, plus the path clearance and interference queries
// the planner needs.

#include "discplan/freespace.hpp"

#include <optional>

namespace discplan::paths {

// A path as an alternating sequence of segments and arcs with exact length.
// A zero-length path is an anchor point with no elements.
class PolyArcPath {
public:
    PolyArcPath() = default;

    static PolyArcPath atPoint(geom::Point p);
    // Verifies continuity of consecutive endpoints; throws InvariantViolation.
    static PolyArcPath fromElements(geom::Point anchor, std::vector<geom::Element> elements);

    const std::vector<geom::Element>& elements() const { return elements_; }
    double length() const { return length_; }
    geom::Point start() const;
    geom::Point end() const;
    // Point at arc-length parameter s from the start, clamped to [0, length].
    geom::Point pointAt(double s) const;
    double minDistTo(geom::Point p) const;

private:
    geom::Point anchor_{};
    std::vector<geom::Element> elements_;
    double length_ = 0.0;
};

// Subpath from the start up to arc-length parameter `to`.
PolyArcPath pathPrefix(const PolyArcPath& p, double to);
// Subpath from arc-length parameter `from` to the end.
PolyArcPath pathSuffix(const PolyArcPath& p, double from);

// True iff a unit disc at v overlaps a unit disc anywhere on the path.
bool pathGoalInterference(const PolyArcPath& path, geom::Point v, double eps = 1e-9);

struct Interference {
    geom::Point x;    // farthest point of the path within distance 2 of a start
    int startIndex;   // index into the interfering-start list
    double param;     // arc-length parameter of x along the path
};

// Farthest point along the path whose unit disc overlaps a unit disc at some
// start. `starts` must exclude the path's own start. nullopt when no start
// interferes.
std::optional<Interference> lastInterferencePoint(const PolyArcPath& path,
                                                  const std::vector<geom::Point>& starts);

// Tangent graph over the free-space boundary together with query terminals;
// nodes are boundary junctions, tangency points and terminals, edges are
// clearance-checked straight segments and boundary arc portions.
class VisibilityGraph {
public:
    VisibilityGraph(const freespace::FreeSpace& f, std::vector<geom::Point> terminals);

    struct ShortestTree {
        std::vector<double> dist;
        std::vector<int> parentNode;
        std::vector<int> parentSlot;  // index into adj[parentNode]
    };

    ShortestTree shortestTreeFromTerminal(std::size_t terminal) const;
    double distanceToTerminal(const ShortestTree& tree, std::size_t terminal) const;
    std::optional<PolyArcPath> extractToTerminal(const ShortestTree& tree,
                                                 std::size_t terminal) const;

    std::size_t nodeCount() const { return nodes_.size(); }
    std::size_t edgeCount() const;

private:
    struct HalfEdge {
        int to;
        double len;
        geom::Element geo;  // oriented from the owning node to `to`
    };

    std::vector<geom::Point> nodes_;
    std::vector<std::vector<HalfEdge>> adj_;
    std::vector<int> terminalNode_;

    void addEdge(int u, int v, const geom::Element& geo);
};

// Globally shortest path between s and t; nullopt iff they lie in different
// components. Throws PointOutsideFreeSpace.
std::optional<PolyArcPath> shortestPath(const freespace::FreeSpace& f, geom::Point s,
                                        geom::Point t);

}  // namespace discplan::paths
