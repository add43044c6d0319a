#include "doctest.h"

#include "potkit/density.hpp"

#include <cmath>
#include <random>

using namespace potkit;

TEST_CASE("upper density of an atom blows up")
{
    const Measure mu(AtomicMeasure({Atom{Point{0.2, 0.1, 0.0}, 0.5}}));
    const auto prof = upperDensity(mu, Point{0.2, 0.1, 0.0}, 1.0, geometricLadder(0.5, 0.5, 20));
    CHECK(isInfinite(prof.limsupEstimate));
    CHECK(prof.values.back() == doctest::Approx(0.5 * std::pow(0.5 * std::pow(0.5, 19), -1.0)));
    CHECK(prof.trend == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("uniform density at full dimension stays at the ball-volume constant")
{
    const double omega3 = 4.0 * M_PI / 3.0;
    const Measure mu(RadialProfileMeasure(Point(3), RadialProfile::power(omega3, 3.0, 1.0)));
    const auto prof = upperDensity(mu, Point(3), 3.0, geometricLadder(0.5, 0.5, 16));
    CHECK(prof.limsupEstimate == doctest::Approx(omega3).epsilon(1e-12));

    const Measure g(GridMeasure(EvaluationGrid(Box(Point{-1.0, -1.0}, Point{1.0, 1.0}), 0.01), std::vector<double>(40000, 1.0)));
    // Cell-center masses only resolve radii above a few cells.
    const auto pg = upperDensity(g, Point{0.013, -0.27}, 2.0, geometricLadder(0.5, 0.8, 12));
    CHECK(std::isfinite(pg.limsupEstimate));
    CHECK(pg.limsupEstimate == doctest::Approx(M_PI).epsilon(0.1));
}

TEST_CASE("power profile below its exponent decays")
{
    const Measure mu(RadialProfileMeasure(Point(3), RadialProfile::power(2.0, 2.5, 1.0)));
    const auto prof = upperDensity(mu, Point(3), 1.5, geometricLadder(0.5, 0.5, 20));
    CHECK(std::isfinite(prof.limsupEstimate));
    CHECK(prof.values.back() == doctest::Approx(2.0 * std::pow(prof.radii.back(), 1.0)));
    CHECK(prof.trend == doctest::Approx(-1.0));
}

TEST_CASE("ladder validation")
{
    const Measure mu(AtomicMeasure({Atom{Point{0.0, 0.0}, 1.0}}));
    CHECK_THROWS(upperDensity(mu, Point{0.0, 0.0}, 1.0, geometricLadder(0.5, 0.5, 5)));
    CHECK_THROWS(upperDensity(mu, Point{0.0, 0.0}, 3.0, geometricLadder(0.5, 0.5, 12)));
}

TEST_CASE("box-counting dimension of model sets")
{
    const auto seg = ParametricSet::segment(Point{0.1, 0.2, 0.3}, Point{0.8, 0.5, 0.6});
    CHECK(boxCountingDimension(seg, geometricLadder(0.1, 0.5, 7)).dimension == doctest::Approx(1.0).epsilon(0.1));

    const auto pts = ParametricSet::points({Point{0.1, 0.1}, Point{0.5, 0.7}, Point{0.9, 0.2}});
    CHECK(std::abs(boxCountingDimension(pts, geometricLadder(0.1, 0.5, 7)).dimension) <= 0.1);

    const auto cantor = cantorSet(Point{0.0, 0.0}, 0, 1.0, 10);
    const auto rep = boxCountingDimension(cantor, geometricLadder(std::pow(3.0, -2) * 0.97, 1.0 / 3.0, 6));
    MESSAGE("cantor dimension " << rep.dimension);
    CHECK(rep.dimension == doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(0.05 / 0.6309));

    CHECK_THROWS(boxCountingDimension(ParametricSet(2), {0.1, 0.01}));
}

TEST_CASE("box counts are monotone under inclusion")
{
    const auto small = cantorSet(Point{0.0, 0.0}, 0, 1.0, 6);
    const auto big = small.united(ParametricSet::segment(Point{0.0, 0.3}, Point{1.0, 0.3}));
    for (double eps : geometricLadder(0.2, 0.5, 6)) CHECK(small.boxCount(eps) <= big.boxCount(eps));
}

TEST_CASE("no density blow-up below the support dimension off the support")
{
    // Cantor measure: 2^10 equal atoms at the left ends of the depth-10 intervals.
    std::vector<Atom> atoms;
    for (unsigned m = 0; m < 1024; ++m) {
        double s = 0.0, w = 1.0;
        for (int j = 9; j >= 0; --j) {
            w /= 3.0;
            if (m & (1u << j)) s += 2.0 * w;
        }
        atoms.push_back(Atom{Point{s, 0.0}, 1.0 / 1024});
    }
    const Measure mu{AtomicMeasure(atoms)};
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-0.5, 1.5);
    for (int t = 0; t < 50; ++t) {
        const Point x{u(rng), 0.05 + 0.2 * (t % 5) / 5.0};
        const auto prof = upperDensity(mu, x, 0.5, geometricLadder(0.04, 0.7, 16));
        CHECK(std::isfinite(prof.limsupEstimate));
    }
}
