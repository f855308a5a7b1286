#include "doctest.h"

#include "discplan/assign.hpp"
#include "discplan/errors.hpp"
#include "discplan/rng.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace discplan;
using namespace discplan::geom;
using namespace discplan::freespace;
using namespace discplan::assign;

namespace {

CostMatrix fromRows(const std::vector<std::vector<double>>& rows) {
    CostMatrix c;
    c.m = rows.size();
    for (const auto& r : rows)
        for (double v : r) c.costs.push_back(v);
    return c;
}

ObstacleSpace bigSquare(double half) {
    ObstacleSpace obs;
    obs.workspace = Polygon{{{-half, -half}, {half, -half}, {half, half}, {-half, half}}};
    return obs;
}

}  // namespace

TEST_CASE("hungarian on 2x2 matrices") {
    auto r = hungarian(fromRows({{1, 2}, {2, 1}}));
    CHECK(r.cost == doctest::Approx(2.0));
    CHECK(r.goalOfStart == std::vector<int>{0, 1});

    auto diag = hungarian(fromRows({{0, 9}, {9, 0}}));
    CHECK(diag.cost == doctest::Approx(0.0));
    CHECK(diag.goalOfStart == std::vector<int>{0, 1});
}

TEST_CASE("hungarian ties resolve to the lexicographically smallest matching") {
    // all matchings cost 2
    auto r = hungarian(fromRows({{1, 1}, {1, 1}}));
    CHECK(r.goalOfStart == std::vector<int>{0, 1});
    // (0->1, 1->0) and (0->0, 1->1) tie at 4
    auto r2 = hungarian(fromRows({{2, 2}, {2, 2}}));
    CHECK(r2.goalOfStart == std::vector<int>{0, 1});
    // unique optimum through the ones: 0->0, 1->2, 2->1
    auto r3 = hungarian(fromRows({{1, 2, 3}, {2, 3, 1}, {3, 1, 2}}));
    CHECK(r3.cost == doctest::Approx(3.0));
    CHECK(r3.goalOfStart == std::vector<int>{0, 2, 1});
    // full tie: every permutation costs 15
    auto r4 = hungarian(fromRows({{5, 5, 5}, {5, 5, 5}, {5, 5, 5}}));
    CHECK(r4.cost == doctest::Approx(15.0));
    CHECK(r4.goalOfStart == std::vector<int>{0, 1, 2});
}

TEST_CASE("hungarian equals exhaustive permutation minimum") {
    Rng rng(909);
    for (int it = 0; it < 60; ++it) {
        std::size_t m = 2 + it % 6;  // up to 7x7
        std::vector<std::vector<double>> rows(m, std::vector<double>(m));
        for (auto& r : rows)
            for (double& v : r) v = rng.uniform(0.0, 100.0);
        auto got = hungarian(fromRows(rows));
        double want = oracles::bruteForceAssignment(rows);
        CHECK(got.cost == doctest::Approx(want).epsilon(1e-12));
        // never beaten by random permutations
        std::vector<int> perm(m);
        for (std::size_t i = 0; i < m; ++i) perm[i] = static_cast<int>(i);
        for (int k = 0; k < 50; ++k) {
            for (std::size_t i = m; i > 1; --i)
                std::swap(perm[i - 1], perm[rng.below(i)]);
            double total = 0.0;
            for (std::size_t i = 0; i < m; ++i) total += rows[i][static_cast<std::size_t>(perm[i])];
            CHECK(got.cost <= total + 1e-9);
        }
    }
}

TEST_CASE("scaling all costs by powers of two keeps the matching") {
    Rng rng(4242);
    for (int it = 0; it < 20; ++it) {
        std::size_t m = 3 + it % 5;
        CostMatrix c;
        c.m = m;
        c.costs.resize(m * m);
        for (double& v : c.costs) v = rng.uniform(0.0, 50.0);
        auto base = hungarian(c);
        for (double lambda : {0.5, 2.0, 8.0}) {
            CostMatrix scaled = c;
            for (double& v : scaled.costs) v *= lambda;
            auto got = hungarian(scaled);
            CHECK(got.goalOfStart == base.goalOfStart);
            CHECK(got.cost == doctest::Approx(base.cost * lambda).epsilon(1e-12));
        }
    }
}

TEST_CASE("infeasible entries raise NoPerfectMatching only when blocking") {
    const double inf = CostMatrix::kInfeasible;
    auto ok = hungarian(fromRows({{1, inf}, {inf, 1}}));
    CHECK(ok.cost == doctest::Approx(2.0));
    CHECK_THROWS_AS(hungarian(fromRows({{1, inf}, {1, inf}})), NoPerfectMatching);
}

TEST_CASE("buildCostMatrix in the open square is the Euclidean matrix") {
    FreeSpace f = buildFreeSpace(bigSquare(30.0));
    std::vector<Point> S{{0, 0}, {-8, 4}, {5, -9}};
    std::vector<Point> T{{3, 4}, {10, 10}, {-6, -7}};
    auto c = buildCostMatrix(f, S, T);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(c.at(i, j) == doctest::Approx(dist(S[i], T[j])).epsilon(1e-12));
    CHECK(c.at(0, 0) == doctest::Approx(5.0));
}

TEST_CASE("cost matrix marks cross-component pairs infeasible") {
    ObstacleSpace obs;
    obs.workspace = Polygon{{{0, 0}, {10, 0}, {10, 3}, {20, 3}, {20, 0}, {30, 0},
                             {30, 10}, {20, 10}, {20, 6.9}, {10, 6.9}, {10, 10}, {0, 10}}};
    FreeSpace f = removeGoalDisc(buildFreeSpace(obs), {15, 4.95});
    auto c = buildCostMatrix(f, {{5, 5}, {25, 5}}, {{4, 4}, {26, 4}});
    CHECK(c.feasibleAt(0, 0));
    CHECK(c.feasibleAt(1, 1));
    CHECK_FALSE(c.feasibleAt(0, 1));
    CHECK_FALSE(c.feasibleAt(1, 0));
}

TEST_CASE("optimalAssignment prefers the non-crossing pairing") {
    FreeSpace f = buildFreeSpace(bigSquare(30.0));
    std::vector<Point> S{{-2.5, 0}, {2.5, 0}};
    std::vector<Point> T{{-2.5, 8}, {2.5, 8}};
    auto gamma = optimalAssignment(f, S, T);
    REQUIRE(gamma.pairs.size() == 2);
    CHECK(gamma.pairs[0].goalIndex == 0);  // straight up, not crossing
    CHECK(gamma.pairs[1].goalIndex == 1);
    CHECK(gamma.totalLength == doctest::Approx(16.0));
}

TEST_CASE("optimalAssignment equals brute force on random obstacle-free instances") {
    Rng rng(31337);
    FreeSpace f = buildFreeSpace(bigSquare(40.0));
    for (int it = 0; it < 8; ++it) {
        std::size_t m = 2 + it % 5;  // up to 6
        std::vector<Point> S, T;
        for (std::size_t i = 0; i < m; ++i) {
            S.push_back({rng.uniform(-30, 30), rng.uniform(-30, 30)});
            T.push_back({rng.uniform(-30, 30), rng.uniform(-30, 30)});
        }
        auto gamma = optimalAssignment(f, S, T);
        std::vector<std::vector<double>> costs(m, std::vector<double>(m));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) costs[i][j] = dist(S[i], T[j]);
        CHECK(gamma.totalLength ==
              doctest::Approx(oracles::bruteForceAssignment(costs)).epsilon(1e-9));
    }
}

TEST_CASE("optimalAssignment total length is invariant under input permutation") {
    FreeSpace f = buildFreeSpace(bigSquare(30.0));
    std::vector<Point> S{{0, 0}, {-8, 4}, {5, -9}, {12, 13}};
    std::vector<Point> T{{3, 4}, {10, 10}, {-6, -7}, {-14, 2}};
    auto base = optimalAssignment(f, S, T);
    std::vector<Point> S2{S[2], S[0], S[3], S[1]};
    std::vector<Point> T2{T[1], T[3], T[0], T[2]};
    auto shuffled = optimalAssignment(f, S2, T2);
    CHECK(base.totalLength == doctest::Approx(shuffled.totalLength).epsilon(1e-9));
}

TEST_CASE("single-robot assignment is the single shortest path") {
    FreeSpace f = removeGoalDisc(buildFreeSpace(bigSquare(50.0)), {0, 0});
    auto gamma = optimalAssignment(f, {{-4, 0}}, {{4, 0}});
    REQUIRE(gamma.pairs.size() == 1);
    double analytic = 2.0 * std::sqrt(12.0) + 2.0 * kPi / 3.0;
    CHECK(gamma.totalLength == doctest::Approx(analytic).epsilon(1e-12));
}
