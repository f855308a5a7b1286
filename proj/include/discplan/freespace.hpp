#pragma once

// Free space of a unit-disc robot: the workspace eroded by a unit disc, minus
// unit-disc obstacles inflated by 1 and radius-2 discs around parked robots.
// The boundary is traced as arc-polygons; membership is evaluated against the
// raw generators, so the two views can be cross-checked.

#include "discplan/arc_polygon.hpp"
#include "discplan/geom.hpp"

#include <memory>
#include <utility>
#include <vector>

namespace discplan::freespace {

struct ObstacleSpace {
    geom::Polygon workspace;                // outer boundary of the workspace, CCW
    std::vector<geom::Polygon> obstacles;   // simple polygons, interior-disjoint
    std::vector<geom::Point> parkedRobots;  // robots already at goals: B1 added to O

    // Enforces orientation conventions (workspace CCW, obstacles CCW).
    void normalizeOrientation();
};

class FreeSpace {
public:
    static constexpr int kOutside = -1;

    static FreeSpace build(const ObstacleSpace& obs);

    // Subtracts B2(t) incrementally, reusing the traced boundary.
    FreeSpace withGoalDisc(geom::Point t) const;

    bool empty() const { return regions_.empty(); }
    const std::vector<geom::ArcPolygon>& regions() const { return regions_; }

    // min over all clearance constraints of (distance - required offset);
    // nonnegative inside the free space, ~0 on its boundary.
    double clearanceSlack(geom::Point p) const;
    bool contains(geom::Point p, double eps = 1e-9) const {
        return clearanceSlack(p) >= -eps;
    }
    // Component index containing p, or kOutside.
    int locate(geom::Point p) const;

    // True iff the whole segment keeps every clearance constraint up to margin.
    bool segmentClear(const geom::Segment& s, double margin) const;

    const ObstacleSpace& obstacleSpace() const { return *obs_; }
    // All radius-2 clearance discs (parked robots plus removed goals).
    const std::vector<geom::Point>& goalDiscs() const { return discs_; }

private:
    std::shared_ptr<const ObstacleSpace> obs_;
    std::vector<geom::Point> discs_;
    std::vector<geom::ArcPolygon> regions_;

    void trace(const std::vector<geom::Element>& curves);
};

FreeSpace buildFreeSpace(const ObstacleSpace& obs);
FreeSpace removeGoalDisc(const FreeSpace& f, geom::Point t);
int locate(const FreeSpace& f, geom::Point p);

struct ComponentCounts {
    // (startCount, goalCount) per component, component order as in regions().
    std::vector<std::pair<int, int>> perComponent;
    bool balanced = true;
};

ComponentCounts countEndpointsPerComponent(const FreeSpace& f,
                                           const std::vector<geom::Point>& starts,
                                           const std::vector<geom::Point>& goals);

}  // namespace discplan::freespace
