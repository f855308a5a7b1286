#include "discplan/assign.hpp"

#include "discplan/errors.hpp"

#include <algorithm>
#include <cmath>

namespace discplan::assign {

using freespace::FreeSpace;
using geom::Point;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Shortest-augmenting-path Hungarian with potentials on a subproblem given by
// explicit row and column index lists. Infeasible entries are replaced by a
// cost exceeding any feasible total, so they are picked only when no finite
// perfect matching exists.
struct SubSolver {
    const CostMatrix& c;
    double bigM;

    explicit SubSolver(const CostMatrix& matrix) : c(matrix) {
        double finiteSum = 0.0;
        for (double v : matrix.costs)
            if (v != CostMatrix::kInfeasible) finiteSum += v;
        bigM = finiteSum + 1.0;
    }

    double entry(int i, int j) const {
        double v = c.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        return v == CostMatrix::kInfeasible ? bigM : v;
    }

    // Optimal assignment over rows x cols; match[r] = position in cols
    // assigned to rows[r].
    double solve(const std::vector<int>& rows, const std::vector<int>& cols,
                 std::vector<int>& match) const {
        int n = static_cast<int>(rows.size());
        match.assign(static_cast<std::size_t>(n), -1);
        if (n == 0) return 0.0;
        std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1, 0.0);
        std::vector<int> p(n + 1, 0), way(n + 1, 0);
        std::vector<char> used(n + 1, 0);
        for (int i = 1; i <= n; ++i) {
            p[0] = i;
            int j0 = 0;
            std::fill(minv.begin(), minv.end(), kInf);
            std::fill(used.begin(), used.end(), 0);
            do {
                used[j0] = 1;
                int i0 = p[j0], j1 = -1;
                double delta = kInf;
                for (int j = 1; j <= n; ++j) {
                    if (used[j]) continue;
                    double cur = entry(rows[i0 - 1], cols[j - 1]) - u[i0] - v[j];
                    if (cur < minv[j]) {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if (minv[j] < delta) {
                        delta = minv[j];
                        j1 = j;
                    }
                }
                for (int j = 0; j <= n; ++j) {
                    if (used[j]) {
                        u[p[j]] += delta;
                        v[j] -= delta;
                    } else {
                        minv[j] -= delta;
                    }
                }
                j0 = j1;
            } while (p[j0] != 0);
            do {
                int j1 = way[j0];
                p[j0] = p[j1];
                j0 = j1;
            } while (j0 != 0);
        }
        double total = 0.0;
        for (int j = 1; j <= n; ++j)
            if (p[j] != 0) match[p[j] - 1] = j - 1;
        for (int i = 0; i < n; ++i) total += entry(rows[i], cols[match[i]]);
        return total;
    }
};

}  // namespace

Matching hungarian(const CostMatrix& c) {
    std::size_t m = c.m;
    Matching out;
    out.goalOfStart.assign(m, -1);
    if (m == 0) return out;
    SubSolver solver(c);

    // Commit rows in order, preferring the smallest column that still allows
    // an optimal completion; the result is the lexicographically smallest
    // matching among cost ties.
    std::vector<int> freeCols(m);
    for (std::size_t j = 0; j < m; ++j) freeCols[j] = static_cast<int>(j);
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<int> rows;
        for (std::size_t r = i; r < m; ++r) rows.push_back(static_cast<int>(r));
        std::vector<int> match;
        double refCost = solver.solve(rows, freeCols, match);
        double tol = 1e-9 * (1.0 + std::abs(refCost));
        int chosenPos = match[0];
        for (int pos = 0; pos < chosenPos; ++pos) {
            std::vector<int> subRows(rows.begin() + 1, rows.end());
            std::vector<int> subCols;
            for (int q = 0; q < static_cast<int>(freeCols.size()); ++q)
                if (q != pos) subCols.push_back(freeCols[q]);
            std::vector<int> subMatch;
            double forced = solver.entry(static_cast<int>(i), freeCols[pos]) +
                            solver.solve(subRows, subCols, subMatch);
            if (forced <= refCost + tol) {
                chosenPos = pos;
                break;
            }
        }
        out.goalOfStart[i] = freeCols[chosenPos];
        freeCols.erase(freeCols.begin() + chosenPos);
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (!c.feasibleAt(i, static_cast<std::size_t>(out.goalOfStart[i])))
            throw NoPerfectMatching("infeasible entries block every perfect matching");
        out.cost += c.at(i, static_cast<std::size_t>(out.goalOfStart[i]));
    }
    return out;
}

namespace {

void requireInside(const FreeSpace& f, const std::vector<Point>& pts) {
    for (Point p : pts)
        if (f.locate(p) == FreeSpace::kOutside) throw PointOutsideFreeSpace(p.x, p.y);
}

}  // namespace

namespace {

std::vector<Point> concatTerminals(const std::vector<Point>& starts,
                                   const std::vector<Point>& goals) {
    std::vector<Point> t = starts;
    t.insert(t.end(), goals.begin(), goals.end());
    return t;
}

const FreeSpace& validated(const FreeSpace& f, const std::vector<Point>& starts,
                           const std::vector<Point>& goals) {
    requireInside(f, starts);
    requireInside(f, goals);
    return f;
}

}  // namespace

PairwisePaths::PairwisePaths(const FreeSpace& f, const std::vector<Point>& starts,
                             const std::vector<Point>& goals)
    : m_(starts.size()),
      graph_(validated(f, starts, goals), concatTerminals(starts, goals)) {
    trees_.reserve(m_);
    matrix_.m = m_;
    matrix_.costs.assign(m_ * m_, CostMatrix::kInfeasible);
    for (std::size_t i = 0; i < m_; ++i) {
        trees_.push_back(graph_.shortestTreeFromTerminal(i));
        for (std::size_t j = 0; j < m_; ++j) {
            double d = graph_.distanceToTerminal(trees_.back(), m_ + j);
            if (std::isfinite(d)) matrix_.at(i, j) = d;
        }
    }
}

paths::PolyArcPath PairwisePaths::extract(std::size_t startIdx, std::size_t goalIdx) const {
    auto path = graph_.extractToTerminal(trees_[startIdx], m_ + goalIdx);
    if (!path) throw InvariantViolation("requested pair has no path");
    return std::move(*path);
}

CostMatrix buildCostMatrix(const FreeSpace& f, const std::vector<Point>& starts,
                           const std::vector<Point>& goals) {
    return PairwisePaths(f, starts, goals).matrix();
}

AssignmentPathSet optimalAssignment(const PairwisePaths& pp) {
    Matching match = hungarian(pp.matrix());
    std::size_t m = pp.matrix().m;
    AssignmentPathSet out;
    out.pairs.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t j = static_cast<std::size_t>(match.goalOfStart[i]);
        out.pairs.push_back({static_cast<int>(i), static_cast<int>(j), pp.extract(i, j)});
        out.totalLength += out.pairs.back().path.length();
    }
    return out;
}

AssignmentPathSet optimalAssignment(const FreeSpace& f, const std::vector<Point>& starts,
                                    const std::vector<Point>& goals) {
    return optimalAssignment(PairwisePaths(f, starts, goals));
}

}  // namespace discplan::assign
