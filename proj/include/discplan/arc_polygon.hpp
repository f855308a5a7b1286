#pragma once

// Closed regions bounded by alternating line segments and circular arcs,
// as produced by unit-disc offsets of polygons.

#include "discplan/geom.hpp"

namespace discplan::geom {

// A closed chain of boundary elements; end of element i coincides with the
// start of element i+1 (and the last wraps to the first) within tolerance.
struct Chain {
    std::vector<Element> edges;

    // Shoelace over chords plus circular-segment corrections. Positive for
    // counterclockwise chains.
    double signedArea() const;
    // Even-odd containment via horizontal ray casting; near-degenerate rays
    // are retried with a deterministic nudge.
    bool contains(Point p) const;
    double distToBoundary(Point p) const;
    // Max deviation between consecutive endpoints; 0 for a perfectly closed chain.
    double closureGap() const;
};

// One connected region: outer boundary (CCW) plus holes (CW).
struct ArcPolygon {
    Chain outer;
    std::vector<Chain> holes;

    double area() const;
    bool contains(Point p) const;
    double distToBoundary(Point p) const;
};

}  // namespace discplan::geom
