#include "doctest.h"

#include "potkit/measures.hpp"

#include <random>

using namespace potkit;

TEST_CASE("ball mass of an atom and a power profile")
{
    const Measure atom(AtomicMeasure({{Point{0, 0, 0}, 3.0}}));
    CHECK(ballMass(atom, Point{0, 0, 0}, 0.5) == 3.0);
    CHECK(ballMass(atom, Point{1, 0, 0}, 0.5) == 0.0);
    /// Closed ball: an atom exactly on the sphere counts.
    CHECK(ballMass(atom, Point{1, 0, 0}, 1.0) == 3.0);

    const Measure power(RadialProfileMeasure(Point{0, 0, 0}, RadialProfile::power(2.0, 1.5, 10.0)));
    CHECK(ballMass(power, Point{0, 0, 0}, 4.0) == doctest::Approx(16.0).epsilon(1e-14));
    CHECK_THROWS_AS(ballMass(power, Point{0, 0, 0}, 0.0), Error);
}

TEST_CASE("total mass")
{
    CHECK(totalMass(Measure(AtomicMeasure({{Point{0, 0}, 1.0}, {Point{1, 0}, 2.0}}))) == 3.0);
    CHECK(totalMass(Measure(AtomicMeasure())) == 0.0);
    const EvaluationGrid g(Box(Point{0, 0}, Point{1, 1}), 0.1);
    const GridMeasure unit(g, std::vector<double>(g.cellCount(), 1.0));
    CHECK(unit.totalMass() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("restriction")
{
    const Measure mu(AtomicMeasure({{Point{0, 0, 0}, 1.0}, {Point{3, 0, 0}, 2.0}}));
    const Measure r = restrict(mu, Point{0, 0, 0}, 1.0);
    CHECK(totalMass(r) == 1.0);
    CHECK(r.pointMass(Point{0, 0, 0}) == 1.0);

    const EvaluationGrid g(Box(Point{-1, -1}, Point{1, 1}), 1.0 / 32);
    const Measure uni(GridMeasure(g, std::vector<double>(g.cellCount(), 1.0)));
    /// The half box left of x = 0 is covered by a large ball centered far to the left.
    const double half = totalMass(restrict(uni, Point{-100, 0}, 100.0));
    CHECK(half == doctest::Approx(2.0).epsilon(2.0 / 32));
    CHECK(totalMass(restrict(uni, Point{0.3, 0.2}, 0.5)) == doctest::Approx(ballMass(uni, Point{0.3, 0.2}, 0.5)));

    const Measure prof(RadialProfileMeasure(Point{0, 0, 0}, RadialProfile::power(1.0, 2.0, 5.0)));
    const Measure cut = restrict(prof, Point{0, 0, 0}, 1.0);
    CHECK(totalMass(cut) == doctest::Approx(1.0));
    CHECK(ballMass(cut, Point{0, 0, 0}, 0.5) == doctest::Approx(0.25));
    CHECK_THROWS_AS(restrict(prof, Point{1, 0, 0}, 1.0), Error);
    try {
        restrict(prof, Point{1, 0, 0}, 1.0);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::RepresentationLimit);
    }
}

TEST_CASE("ball mass is monotone and additive")
{
    const Measure a(AtomicMeasure({{Point{0.1, 0, 0}, 1.0}, {Point{0, 0.5, 0}, 0.5}, {Point{0, 0, -0.9}, 2.0}}));
    const Measure b(uniformBallGrid(Point{0, 0, 0}, 0.6, 1.0, 0.05, 0.7));
    const Measure s = Measure::sum({a, b});
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.01, 2.0);
    std::vector<double> ts(200);
    for (double& t : ts) t = u(rng);
    std::sort(ts.begin(), ts.end());
    const Point x{0.05, 0.1, 0.0};
    double prev = 0.0;
    for (double t : ts) {
        const double m = ballMass(s, x, t);
        CHECK(m >= prev);
        CHECK(m == doctest::Approx(ballMass(a, x, t) + ballMass(b, x, t)).epsilon(1e-14));
        prev = m;
    }
}

TEST_CASE("atomic and radial-table forms agree at the center")
{
    const Point c{0, 0, 0};
    const Measure atoms(AtomicMeasure({{c, 1.0}, {Point{0.5, 0, 0}, 2.0}, {Point{0, 0, 1.5}, 0.25}}));
    const Measure table(RadialProfileMeasure(c, RadialProfile::table({{0.0, 1.0}, {0.5, 3.0}, {1.5, 3.25}})));
    for (double t : {0.01, 0.3, 0.5, 0.7, 1.5, 1.6, 4.0}) CHECK(ballMass(atoms, c, t) == ballMass(table, c, t));
}
