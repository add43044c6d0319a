#include "doctest.h"

#include "potkit/witness.hpp"
#include "potkit/wolff.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

using namespace potkit;

namespace {

/// Direct quadrature of the single-atom integrand over (d, r).
double atomOracle(int n, double p, double a, double d, double r)
{
    boost::math::quadrature::tanh_sinh<double> q;
    return q.integrate([&](double t) { return std::pow(a / std::pow(t, n - p), 1.0 / (p - 1.0)) / t; }, d, r);
}

}  // namespace

TEST_CASE("single atom closed forms")
{
    const Point o{0, 0, 0};
    const Measure mu(AtomicMeasure({{o, 1.7}}));
    const Point x{0.1, 0.2, 0.0};
    const double d = x.norm();
    for (double p : {1.5, 2.0, 2.6}) {
        const double w = wolffPotential(mu, {p, 1.0}, x);
        const double g = (3.0 - p) / (p - 1.0);
        CHECK(w == doctest::Approx(std::pow(1.7, 1.0 / (p - 1.0)) / g * (std::pow(d, -g) - 1.0)).epsilon(1e-12));
        CHECK(w == doctest::Approx(atomOracle(3, p, 1.7, d, 1.0)).epsilon(1e-9));
        WolffParams grid{p, 1.0, WolffQuadrature::LogGrid, 64};
        CHECK(wolffPotential(mu, grid, x) == doctest::Approx(w).epsilon(1e-6));
    }
    CHECK(wolffPotential(mu, {3.0, 1.0}, x) == doctest::Approx(std::sqrt(1.7) * std::log(1.0 / d)).epsilon(1e-12));
    CHECK(wolffPotential(Measure(AtomicMeasure()), {2.0, 1.0}, x) == 0.0);
    CHECK(isInfinite(wolffPotential(mu, {2.0, 1.0}, o)));
    CHECK_THROWS_AS(wolffPotential(mu, {1.0, 1.0}, x), Error);
    CHECK_THROWS_AS(wolffPotential(mu, {2.0, 0.0}, x), Error);
}

TEST_CASE("monotonicity and mass scaling")
{
    const Measure mu(AtomicMeasure({{Point{0.2, 0, 0}, 1.0}, {Point{0, 0.4, 0}, 0.3}}));
    const Measure more(AtomicMeasure({{Point{0.2, 0, 0}, 1.5}, {Point{0, 0.4, 0}, 0.3}}));
    const Measure tripled(AtomicMeasure({{Point{0.2, 0, 0}, 3.0}, {Point{0, 0.4, 0}, 0.9}}));
    const Point x{0.05, 0.05, 0.1};
    const double p = 2.4;
    double prev = 0.0;
    for (double r : {0.1, 0.3, 0.5, 1.0, 2.0}) {
        const double w = wolffPotential(mu, {p, r}, x);
        CHECK(w >= prev);
        CHECK(wolffPotential(more, {p, r}, x) >= w);
        CHECK(wolffPotential(tripled, {p, r}, x) == doctest::Approx(std::pow(3.0, 1.0 / (p - 1.0)) * w).epsilon(1e-12));
        prev = w;
    }
}

TEST_CASE("p = n is the limit of p < n")
{
    const Measure mu(AtomicMeasure({{Point{0, 0, 0}, 1.0}}));
    const Point x{0.3, 0, 0};
    const double near = wolffPotential(mu, {3.0 - 1e-3, 1.0}, x);
    const double at = wolffPotential(mu, {3.0, 1.0}, x);
    CHECK(std::abs(near - at) / at < 0.01);
}

TEST_CASE("scaled potential tends to the atom limit")
{
    const Point o{0, 0, 0};
    const auto path = ApproachPath::geometric(Point{0, 0, 1}, 0.5, 0.5, 20);
    const double a = 2.0, p = 2.0;
    const Measure atom(AtomicMeasure({{o, a}}));
    const auto rep = wolffAsymptoticReport(atom, {p, 1.0}, o, path);
    const double limit = wolffAtomLimit(3, p, a);
    CHECK(limit == doctest::Approx(a));
    for (std::size_t k = 0; k < rep.radii.size(); ++k)
        CHECK(rep.ratios[k] - limit == doctest::Approx(-limit * rep.radii[k]).epsilon(1e-9));

    const Measure diffuse(RadialProfileMeasure(o, RadialProfile::power(4.0, 3.0, 1.0)));
    const auto mixed = wolffAsymptoticReport(Measure::sum({atom, diffuse}), {p, 1.0}, o, path);
    CHECK(mixed.ratios.back() == doctest::Approx(limit).epsilon(0.01));

    const auto none = wolffAsymptoticReport(diffuse, {p, 1.0}, o, path);
    CHECK(std::abs(none.fit.limit) < 1e-3);
}

TEST_CASE("decay bound for a power profile")
{
    const Point o{0, 0, 0};
    const double p = 2.0, m = 0.5, eps = 0.05;
    const RadialProfileMeasure mu(o, RadialProfile::power(1.0, m, 1.0));
    const auto path = ApproachPath::geometric(Point{0.6, 0.8, 0}, 0.25, 0.5, 16);
    const auto rep = wolffDecayCheck(mu, 1.0, m, {p, 0.5}, eps, path);
    CHECK(rep.withinBound);
    CHECK(rep.slope <= (3.0 - p - m) / (p - 1.0) + eps);

    CHECK_THROWS_AS(wolffDecayCheck(mu, 1.0, 1.0, {p, 0.5}, eps, path), Error);
    const RadialProfileMeasure withAtom(o, RadialProfile::atomPlusPower(0.1, 1.0, m, 1.0));
    try {
        wolffDecayCheck(withAtom, 1.0, m, {p, 0.5}, eps, path);
        FAIL("expected a hypothesis violation");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::HypothesisViolated);
    }
}

TEST_CASE("witness masses are summable and blow up at the centers")
{
    const double p = 2.5;
    const AtomicMeasure mu = witnessMeasure(3, p, 2, 60);
    /// Partial sums settle: the last twenty atoms carry a negligible share of the mass.
    const AtomicMeasure head = witnessMeasure(3, p, 2, 40);
    CHECK(mu.totalMass() - head.totalMass() < 1e-3 * mu.totalMass());
    const Measure m(mu);
    for (const auto& atom : mu.atoms()) CHECK(isInfinite(wolffPotential(m, {p, 1.0}, atom.location)));
}
