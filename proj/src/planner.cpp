#include "discplan/planner.hpp"

#include "discplan/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace discplan::planner {

using assign::AssignmentPathSet;
using freespace::FreeSpace;
using freespace::ObstacleSpace;
using geom::Point;
using geom::Segment;
using paths::PolyArcPath;

namespace {

double seconds(std::chrono::steady_clock::time_point from) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - from).count();
}

}  // namespace

int findStandaloneGoal(const assign::AssignmentPathSet& gamma) {
    if (gamma.pairs.empty()) throw InvariantViolation("standalone-goal search on empty set");
    // candidates in ascending goal index
    std::vector<int> order(gamma.pairs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return gamma.pairs[static_cast<std::size_t>(a)].goalIndex <
               gamma.pairs[static_cast<std::size_t>(b)].goalIndex;
    });
    for (int k : order) {
        Point tk = gamma.pairs[static_cast<std::size_t>(k)].path.end();
        bool standalone = true;
        for (std::size_t i = 0; i < gamma.pairs.size(); ++i) {
            if (static_cast<int>(i) == k) continue;
            if (paths::pathGoalInterference(gamma.pairs[i].path, tk)) {
                standalone = false;
                break;
            }
        }
        if (standalone) return k;
    }
    throw InvariantViolation("no standalone goal exists");
}

PlanStep buildHop(const AssignmentPathSet& gamma, int k,
                  const std::vector<Point>& starts) {
    const auto& pair = gamma.pairs[static_cast<std::size_t>(k)];
    const PolyArcPath& gammaK = pair.path;
    Point sk = gammaK.start();
    Point tk = gammaK.end();

    std::vector<Point> others;
    std::vector<int> otherIdx;
    for (std::size_t i = 0; i < starts.size(); ++i) {
        if (static_cast<int>(i) == pair.startIndex) continue;  // the path's own start
        others.push_back(starts[i]);
        otherIdx.push_back(static_cast<int>(i));
    }
    auto hit = paths::lastInterferencePoint(gammaK, others);

    PlanStep step;
    step.goal = tk;
    if (!hit) {
        step.hopKind = HopKind::ZeroHop;
        step.movedFrom = sk;
        step.path = gammaK;
        step.startIndex = pair.startIndex;
        step.goalIndex = pair.goalIndex;
        return step;
    }

    Point si = others[static_cast<std::size_t>(hit->startIndex)];
    // the blocker at the farthest interference point is unique under the
    // 4-separation of starts
    for (std::size_t i = 0; i < others.size(); ++i) {
        if (static_cast<int>(i) == hit->startIndex) continue;
        if (geom::dist(hit->x, others[i]) < 2.0 - 1e-9)
            throw InvariantViolation("multiple starts block the farthest interference point");
    }
    PolyArcPath tail = paths::pathSuffix(gammaK, hit->param);
    std::vector<geom::Element> elements;
    elements.push_back(Segment{si, hit->x});
    for (const auto& e : tail.elements()) elements.push_back(e);
    step.hopKind = HopKind::OneHop;
    step.movedFrom = si;
    step.interferencePoint = hit->x;
    step.path = PolyArcPath::fromElements(si, std::move(elements));
    step.startIndex = otherIdx[static_cast<std::size_t>(hit->startIndex)];
    step.goalIndex = pair.goalIndex;
    return step;
}

SwitchPath buildSwitchPath(const AssignmentPathSet& gamma, int kPos, int iPos, Point x,
                           double xParam) {
    const PolyArcPath& gammaK = gamma.pairs[static_cast<std::size_t>(kPos)].path;
    const PolyArcPath& gammaI = gamma.pairs[static_cast<std::size_t>(iPos)].path;
    Point si = gammaI.start();
    PolyArcPath head = paths::pathPrefix(gammaK, xParam);
    std::vector<geom::Element> elements = head.elements();
    elements.push_back(Segment{x, si});
    for (const auto& e : gammaI.elements()) elements.push_back(e);
    return SwitchPath{PolyArcPath::fromElements(gammaK.start(), std::move(elements))};
}

PlanResult plan(const Scenario& scenario) {
    PlanResult result;
    auto t0 = std::chrono::steady_clock::now();

    ObstacleSpace obs;
    obs.workspace = scenario.workspace;
    obs.obstacles = scenario.obstacles;

    auto tFree = std::chrono::steady_clock::now();
    FreeSpace f = freespace::buildFreeSpace(obs);
    result.timings.freespace += seconds(tFree);

    auto counts = freespace::countEndpointsPerComponent(f, scenario.starts, scenario.goals);
    if (!counts.balanced) {
        InfeasibilityReport report;
        report.perComponent = counts.perComponent;
        for (Point s : scenario.starts) report.startComponent.push_back(f.locate(s));
        for (Point g : scenario.goals) report.goalComponent.push_back(f.locate(g));
        result.infeasible = std::move(report);
        result.timings.total = seconds(t0);
        return result;
    }

    std::vector<Point> S = scenario.starts;
    std::vector<Point> T = scenario.goals;
    std::vector<int> sIds(S.size()), tIds(T.size());
    for (std::size_t i = 0; i < S.size(); ++i) sIds[i] = static_cast<int>(i);
    for (std::size_t i = 0; i < T.size(); ++i) tIds[i] = static_cast<int>(i);

    Plan planOut;
    std::size_t m = S.size();
    for (std::size_t iter = 0; iter < m; ++iter) {
        auto tPaths = std::chrono::steady_clock::now();
        assign::PairwisePaths pairwise(f, S, T);
        result.timings.shortestPaths += seconds(tPaths);

        auto tAssign = std::chrono::steady_clock::now();
        AssignmentPathSet gamma = assign::optimalAssignment(pairwise);
        result.timings.assignment += seconds(tAssign);

        if (iter == 0) planOut.lowerBound = gamma.totalLength;
        planOut.assignmentCosts.push_back(gamma.totalLength);

        auto tGoal = std::chrono::steady_clock::now();
        int k = findStandaloneGoal(gamma);
        PlanStep step = buildHop(gamma, k, S);
        result.timings.standaloneGoal += seconds(tGoal);

        step.iteration = static_cast<int>(iter);
        int localStart = step.startIndex;  // position in current S
        int localGoal = step.goalIndex;    // position in current T
        step.startIndex = sIds[static_cast<std::size_t>(localStart)];
        step.goalIndex = tIds[static_cast<std::size_t>(localGoal)];

        planOut.totalCost += step.path.length();
        if (step.hopKind == HopKind::ZeroHop)
            ++planOut.zeroHops;
        else
            ++planOut.oneHops;
        Point tk = step.goal;
        planOut.steps.push_back(std::move(step));

        S.erase(S.begin() + localStart);
        sIds.erase(sIds.begin() + localStart);
        T.erase(T.begin() + localGoal);
        tIds.erase(tIds.begin() + localGoal);

        if (iter + 1 < m) {
            auto tUpdate = std::chrono::steady_clock::now();
            f = freespace::removeGoalDisc(f, tk);
            result.timings.freespace += seconds(tUpdate);
        }
    }

    result.plan = std::move(planOut);
    result.timings.total = seconds(t0);
    return result;
}

ValidationReport validatePlan(const Scenario& scenario, const Plan& plan,
                              int samplesPerPath) {
    ValidationReport report;
    ObstacleSpace obs;
    obs.workspace = scenario.workspace;
    obs.obstacles = scenario.obstacles;
    FreeSpace f0 = freespace::buildFreeSpace(obs);

    auto complain = [&](std::size_t stepIdx, const std::string& what) {
        report.ok = false;
        report.violations.push_back("step " + std::to_string(stepIdx) + ": " + what);
    };

    double recomputed = 0.0;
    for (std::size_t j = 0; j < plan.steps.size(); ++j) {
        const PlanStep& step = plan.steps[j];
        recomputed += step.path.length();
        if (geom::dist(step.path.start(), step.movedFrom) > 1e-6)
            complain(j, "path does not start at the moved robot");
        if (geom::dist(step.path.end(), step.goal) > 1e-6)
            complain(j, "path does not end at the goal");

        std::vector<Point> parked;
        for (std::size_t q = 0; q < plan.steps.size(); ++q) {
            if (q < j)
                parked.push_back(plan.steps[q].goal);
            else if (q > j)
                parked.push_back(plan.steps[q].movedFrom);
        }
        int bad = 0;
        for (int k = 0; k <= samplesPerPath; ++k) {
            Point q = step.path.pointAt(step.path.length() * k / samplesPerPath);
            double slack = f0.clearanceSlack(q);
            report.minBoundarySlack = std::min(report.minBoundarySlack, slack);
            if (slack < -1e-6 && bad++ < 3) complain(j, "path leaves the free space");
            for (Point c : parked) {
                double d = geom::dist(q, c);
                report.minRobotClearance = std::min(report.minRobotClearance, d);
                if (d < 2.0 - 1e-6 && bad++ < 3)
                    complain(j, "moving robot comes within " + std::to_string(d) +
                                    " of a parked robot");
            }
        }
    }
    report.costError = std::abs(recomputed - plan.totalCost);
    if (report.costError > 1e-9) {
        report.ok = false;
        report.violations.push_back("total cost mismatch");
    }
    double m = static_cast<double>(plan.steps.size());
    report.boundSatisfied = plan.totalCost <= plan.lowerBound + 4.0 * m + 1e-6;
    if (!report.boundSatisfied) {
        report.ok = false;
        report.violations.push_back("cost exceeds lower bound + 4m");
    }
    return report;
}

}  // namespace discplan::planner
