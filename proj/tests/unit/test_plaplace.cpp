#include "doctest.h"

#include "potkit/plaplace.hpp"

#include <cmath>

using namespace potkit;

TEST_CASE("unit-mass coefficient has unit flux")
{
    for (auto [n, p] : {std::pair{3, 2.0}, std::pair{3, 2.5}, std::pair{3, 3.0}, std::pair{4, 3.0}, std::pair{2, 1.5}, std::pair{2, 2.0}}) {
        const double f = fluxNormalization(p, n, 0.5, 1.0 / 128);
        INFO("n=" << n << " p=" << p);
        CHECK(f == doctest::Approx(-1.0).epsilon(1e-3));
    }
    CHECK(FundamentalSolution::unitMassCoefficient(3, 2.0) == doctest::Approx(1.0 / (4.0 * M_PI)));
}

TEST_CASE("fundamental solution profile")
{
    const FundamentalSolution G{3, 2.5, 1.0, Point(3)};
    CHECK(G.exponent() == doctest::Approx(1.0 / 3.0));
    CHECK(G.profile(0.125) == doctest::Approx(2.0));
    const FundamentalSolution L{2, 2.0, 1.0, Point(2)};
    CHECK(L.profile(std::exp(-1.0)) == doctest::Approx(1.0));
}

TEST_CASE("point source with exact boundary data reproduces m G_p")
{
    const double p = 2.5, h = 1.0 / 64;
    const FundamentalSolution G = FundamentalSolution::unitMass(Point(3), p);
    PDirichletOptions opt;
    opt.embedding = LatticeEmbedding::axisymmetric(Point(3), 2);
    opt.mirrorLow = {true, false};
    const Measure mu(AtomicMeasure({Atom{Point(3), 1.0}}));
    const auto sol = solvePDirichlet(EvaluationGrid(Box(Point{0.0, 0.0}, Point{1.0, 1.0}), h), mu, p,
                                     [&](const Point& x) { return G(x); }, opt);
    const auto path = ApproachPath::geometric(Point{1.0, 0.0, 0.0}, 0.25, 0.9, 40);
    const auto rep = superAsymptoticReport([&](const Point& x) { return sol.valueAt(x); }, 3, p, G.m, Point(3), path, 4 * h, 0.25);
    MESSAGE("deviation " << rep.maxRelDeviation << " m " << G.m << " c0 " << rep.c0);
    CHECK(rep.maxRelDeviation <= 0.05);
    CHECK(rep.c0 < 0.05);

    const auto env = envelopeCheck(sol, mu, p, {Point{0.3, 0.0, 0.0}, Point{0.0, 0.2, 0.4}}, {0.5, 0.8});
    MESSAGE("c1 " << env.c1 << " c2 " << env.c2);
    CHECK(env.c1 >= 0.05);
    CHECK(env.c2 <= 50.0);

    CHECK_THROWS_AS(superAsymptoticReport([&](const Point& x) { return sol.valueAt(x); }, 3, p, G.m, Point(3), path, 0.3, 0.31),
                    Error);
}

TEST_CASE("atoms on the Dirichlet boundary are rejected")
{
    const Measure mu(AtomicMeasure({Atom{Point{1.0, 0.5}, 1.0}}));
    CHECK_THROWS(solvePDirichlet(EvaluationGrid(Box(Point{0.0, 0.0}, Point{1.0, 1.0}), 1.0 / 16), mu, 2.0,
                                 [](const Point&) { return 0.0; }));
}
