#pragma once

// The recursive planner: find a standalone goal, emit a 0-hop or 1-hop path,
// park the moved robot as an obstacle, recurse on the rest. Plans carry the
// assignment lower bound and are checked by a sequential-execution validator.

#include "discplan/assign.hpp"

#include <optional>
#include <string>

namespace discplan::planner {

struct Scenario {
    geom::Polygon workspace;
    std::vector<geom::Polygon> obstacles;
    std::vector<geom::Point> starts;
    std::vector<geom::Point> goals;
    std::string name;
};

enum class HopKind { ZeroHop, OneHop };

struct PlanStep {
    int iteration = 0;
    int startIndex = -1;  // original index of the moved robot's start
    int goalIndex = -1;   // original index of the filled goal
    geom::Point movedFrom;
    geom::Point goal;
    HopKind hopKind = HopKind::ZeroHop;
    paths::PolyArcPath path;
    std::optional<geom::Point> interferencePoint;  // OneHop only
};

struct Plan {
    std::vector<PlanStep> steps;  // execution order = computation order
    double totalCost = 0.0;
    double lowerBound = 0.0;  // first-iteration assignment cost
    int zeroHops = 0;
    int oneHops = 0;
    // |Gamma_j| for every iteration, for per-level bound bookkeeping.
    std::vector<double> assignmentCosts;
};

struct InfeasibilityReport {
    std::vector<std::pair<int, int>> perComponent;  // (startCount, goalCount)
    std::vector<int> startComponent;
    std::vector<int> goalComponent;
};

struct PhaseTimings {
    double freespace = 0.0;
    double shortestPaths = 0.0;
    double assignment = 0.0;
    double standaloneGoal = 0.0;
    double total = 0.0;
};

struct PlanResult {
    std::optional<Plan> plan;
    std::optional<InfeasibilityReport> infeasible;
    PhaseTimings timings;
};

// Position in gamma.pairs of the standalone goal with the smallest goal
// index. Throws InvariantViolation when none exists (broken assumptions).
int findStandaloneGoal(const assign::AssignmentPathSet& gamma);

// The step that fills gamma.pairs[k]'s goal: the assigned path itself when no
// remaining start blocks it, otherwise the 1-hop path from the last blocking
// start. `starts` is the full remaining start set (own start included).
PlanStep buildHop(const assign::AssignmentPathSet& gamma, int k,
                  const std::vector<geom::Point>& starts);

struct SwitchPath {
    paths::PolyArcPath path;  // prefix of gamma_k to x, then x->s_i, then gamma_i
};

// Proof object for the per-iteration cost bound; kPos/iPos are positions in
// gamma.pairs, x the interference point at arc-length xParam along gamma_k.
SwitchPath buildSwitchPath(const assign::AssignmentPathSet& gamma, int kPos, int iPos,
                           geom::Point x, double xParam);

PlanResult plan(const Scenario& scenario);

struct ValidationReport {
    bool ok = true;
    double minRobotClearance = std::numeric_limits<double>::infinity();
    double minBoundarySlack = std::numeric_limits<double>::infinity();
    double costError = 0.0;
    bool boundSatisfied = true;
    std::vector<std::string> violations;
};

// Simulates sequential execution: the moving robot is checked for clearance 2
// against every parked robot (earlier goals, later starts) and containment in
// the original free space, at `samplesPerPath` points per path.
ValidationReport validatePlan(const Scenario& scenario, const Plan& plan,
                              int samplesPerPath = 1000);

}  // namespace discplan::planner
