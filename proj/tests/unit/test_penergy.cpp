#include "doctest.h"

#include "potkit/penergy.hpp"

#include <chrono>
#include <cmath>

using namespace potkit;

TEST_CASE("affine boundary data is reproduced exactly")
{
    for (double p : {1.5, 2.0, 3.0}) {
        PProblem prob{EvaluationGrid(Box(Point{0.0, 0.0}, Point{1.0, 1.0}), 1.0 / 16), LatticeEmbedding::cartesian(2), p};
        auto ell = [](const Point& x) { return 0.3 + 2.0 * x[0] - 0.7 * x[1]; };
        prob.dirichlet = [&](const Point& x) -> std::optional<double> {
            if (x[0] <= 0.0 || x[0] >= 1.0 || x[1] <= 0.0 || x[1] >= 1.0) return ell(x);
            return std::nullopt;
        };
        const auto sol = solvePEnergy(prob);
        double err = 0.0;
        for (std::size_t i = 0; i < sol.u.size(); ++i) err = std::max(err, std::abs(sol.u[i] - ell(sol.grid.node(i))));
        CHECK(err < 1e-10);
    }
}

TEST_CASE("gradient of the discrete functional matches finite differences")
{
    PProblem prob{EvaluationGrid(Box(Point{0.0, 0.0, 0.0}, Point{1.0, 1.0, 1.0}), 0.25), LatticeEmbedding::cartesian(3), 2.7};
    prob.dirichlet = [](const Point&) -> std::optional<double> { return std::nullopt; };
    prob.sources.push_back({Point{0.5, 0.5, 0.5}, 0.3});
    std::vector<double> u(prob.grid.nodeCount());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = std::sin(1.0 + 3.0 * static_cast<double>(i) / u.size());
    std::vector<double> g;
    pFunctional(prob, u, &g);
    for (std::size_t i : {0ul, 17ul, 62ul, 124ul}) {
        const double e = 1e-6;
        auto up = u, dn = u;
        up[i] += e;
        dn[i] -= e;
        const double fd = (pFunctional(prob, up, nullptr) - pFunctional(prob, dn, nullptr)) / (2 * e);
        CHECK(g[i] == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("linear condenser energy in the axisymmetric reduction")
{
    // p = 2 condenser between radii 1/4 and 1 in R^3: 4 pi / (4 - 1).
    const double r = 0.25, R = 1.0;
    PProblem prob{EvaluationGrid(Box(Point{0.0, 0.0}, Point{1.0, 1.0}), 1.0 / 64), LatticeEmbedding::axisymmetric(Point(3), 2), 2.0};
    prob.mirrorLow = {true, false};
    prob.dirichlet = [&](const Point& q) -> std::optional<double> {
        const double d = std::hypot(q[0], q[1]);
        if (d <= r + 1e-12) return 1.0;
        if (d >= R - 1e-12) return 0.0;
        return std::nullopt;
    };
    const auto sol = solvePEnergy(prob);
    const double exact = 4.0 * M_PI / (1.0 / r - 1.0 / R);
    MESSAGE("axisym p=2 energy " << sol.energy << " exact " << exact);
    CHECK(sol.energy == doctest::Approx(exact).epsilon(0.05));
}
