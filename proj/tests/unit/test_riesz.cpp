#include "doctest.h"

#include "potkit/riesz.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <numbers>

using namespace potkit;

TEST_CASE("single-atom potentials")
{
    const Measure mu(AtomicMeasure({{Point{0, 0, 0}, 2.5}}));
    const Point x{0.3, 0.4, 0.0};
    CHECK(rieszPotential(mu, {1.5, 0.0}, x) == doctest::Approx(2.5 * std::pow(0.5, -1.5)));
    CHECK(rieszPotential(mu, {3.0, 4.0}, x) == doctest::Approx(2.5 * std::log(4.0 / 0.5)));
    CHECK(isInfinite(rieszPotential(mu, {2.0, 0.0}, Point{0, 0, 0})));
    CHECK_THROWS_AS(rieszPotential(mu, {1.0, 0.0}, x), Error);
    CHECK_THROWS_AS(rieszPotential(mu, {3.5, 0.0}, x), Error);
}

TEST_CASE("Newtonian potential of the unit ball at its center")
{
    /// Radial oracle: int_0^1 4 pi t^2 t^-1 dt = 2 pi.
    const double oracle = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        [](double t) { return 4.0 * std::numbers::pi * t; }, 0.0, 1.0);
    const Measure mu(uniformBallGrid(Point{0, 0, 0}, 1.0, 1.0, 1.0 / 24, 1.0));
    CHECK(rieszPotential(mu, {2.0, 0.0}, Point{0, 0, 0}) == doctest::Approx(oracle).epsilon(0.02));
}

TEST_CASE("linearity and scaling for atoms")
{
    const Measure a(AtomicMeasure({{Point{0.2, 0, 0}, 1.0}, {Point{0, -0.3, 0.1}, 0.7}}));
    const Measure b(AtomicMeasure({{Point{-0.5, 0.5, 0}, 2.0}}));
    const RieszParams prm{1.7, 0.0};
    const Point x{0.05, 0.05, 0.05};
    CHECK(rieszPotential(Measure::sum({a, b}), prm, x) ==
          doctest::Approx(rieszPotential(a, prm, x) + rieszPotential(b, prm, x)).epsilon(1e-14));

    const double lambda = 0.37;
    std::vector<Atom> scaled;
    for (const auto& at : std::get<AtomicMeasure>(a.components()[0]).atoms()) scaled.push_back({at.location * lambda, at.mass});
    CHECK(rieszPotential(Measure(AtomicMeasure(scaled)), prm, x * lambda) ==
          doctest::Approx(std::pow(lambda, prm.alpha - 3.0) * rieszPotential(a, prm, x)).epsilon(1e-13));
}

TEST_CASE("moving atoms outward lowers the potential")
{
    const Point x{0, 0, 0};
    const RieszParams prm{2.5, 0.0};
    double prev = kInfinity;
    for (double s = 0.1; s < 1.0; s += 0.1) {
        const Measure mu(AtomicMeasure({{Point{s, 0, 0}, 1.0}, {Point{0, -1.2 * s, 0}, 0.5}}));
        const double v = rieszPotential(mu, prm, x);
        CHECK(v <= prev);
        prev = v;
    }
}

TEST_CASE("asymptotic ratio recovers the atom")
{
    const Point p{0, 0, 0};
    const auto path = ApproachPath::geometric(Point{1, 0, 0}, 0.5, 0.5, 20);
    const Measure atom(AtomicMeasure({{p, 2.0}}));
    const auto pure = rieszAsymptoticReport(atom, {2.0, 0.0}, p, path);
    for (double r : pure.ratios) CHECK(r == doctest::Approx(2.0).epsilon(1e-14));

    const Measure diffuse(RadialProfileMeasure(p, RadialProfile::power(4.0 * std::numbers::pi / 3.0, 3.0, 1.0)));
    const auto mixed = rieszAsymptoticReport(Measure::sum({atom, diffuse}), {2.0, 0.0}, p, path);
    CHECK(mixed.fit.limit == doctest::Approx(2.0).epsilon(0.01));
    const auto none = rieszAsymptoticReport(diffuse, {2.0, 0.0}, p, path);
    CHECK(std::abs(none.fit.limit) < 0.05);
    CHECK_THROWS_AS(rieszAsymptoticReport(atom, {2.0, 0.0}, p, ApproachPath::geometric(Point{1, 0, 0}, 0.5, 0.5, 5)),
                    Error);
}

TEST_CASE("decay off a lower-dimensional support")
{
    const Point p{0, 0, 0};
    const auto path = ApproachPath::geometric(Point{1, 0, 0}, 0.25, 0.5, 12);
    const Measure atom(AtomicMeasure({{p, 1.0}}));
    const auto exact = rieszDecayCheck(atom, {2.0, 0.0}, p, 0.0, path);
    CHECK(exact.slope == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(exact.withinBound);

    const Measure far(AtomicMeasure({{Point{0, 1, 0}, 1.0}}));
    const auto flat = rieszDecayCheck(far, {2.0, 0.0}, p, 0.0, path, 1.0);
    CHECK(std::abs(flat.slope) < 0.01);
}
