#pragma once

// Optimal start-goal assignment: pairwise shortest-path cost matrix and
// minimum-total-cost perfect matching via the Hungarian algorithm.

#include "discplan/paths.hpp"

#include <limits>
#include <vector>

namespace discplan::assign {

// m x m matrix of shortest-path lengths; kInfeasible marks cross-component
// pairs.
struct CostMatrix {
    static constexpr double kInfeasible = std::numeric_limits<double>::infinity();

    std::size_t m = 0;
    std::vector<double> costs;  // row-major

    double at(std::size_t i, std::size_t j) const { return costs[i * m + j]; }
    double& at(std::size_t i, std::size_t j) { return costs[i * m + j]; }
    bool feasibleAt(std::size_t i, std::size_t j) const {
        return at(i, j) != kInfeasible;
    }
};

struct Matching {
    std::vector<int> goalOfStart;  // goalOfStart[i] = matched goal for start i
    double cost = 0.0;
};

// Minimum-cost perfect matching; lexicographically smallest (by goalOfStart)
// among cost ties. Throws NoPerfectMatching when infeasible entries block
// every matching.
Matching hungarian(const CostMatrix& c);

struct AssignmentPair {
    int startIndex;
    int goalIndex;
    paths::PolyArcPath path;
};

struct AssignmentPathSet {
    std::vector<AssignmentPair> pairs;  // sorted by startIndex
    double totalLength = 0.0;
};

// Shared visibility graph and per-start shortest-path trees for one
// start/goal set; the expensive geometric phase, separated from the matching.
class PairwisePaths {
public:
    PairwisePaths(const freespace::FreeSpace& f, const std::vector<geom::Point>& starts,
                  const std::vector<geom::Point>& goals);

    const CostMatrix& matrix() const { return matrix_; }
    paths::PolyArcPath extract(std::size_t startIdx, std::size_t goalIdx) const;

private:
    std::size_t m_;
    paths::VisibilityGraph graph_;
    std::vector<paths::VisibilityGraph::ShortestTree> trees_;
    CostMatrix matrix_;
};

CostMatrix buildCostMatrix(const freespace::FreeSpace& f,
                           const std::vector<geom::Point>& starts,
                           const std::vector<geom::Point>& goals);

// Matching plus its paths; totalLength is the solution lower bound.
AssignmentPathSet optimalAssignment(const freespace::FreeSpace& f,
                                    const std::vector<geom::Point>& starts,
                                    const std::vector<geom::Point>& goals);
AssignmentPathSet optimalAssignment(const PairwisePaths& pp);

}  // namespace discplan::assign
