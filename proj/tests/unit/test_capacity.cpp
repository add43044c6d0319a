#include "doctest.h"

#include "potkit/capacity.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

using namespace potkit;

namespace {

/// Radial Euler-Lagrange oracle: r^(n-1)|u'|^(p-1) is constant, so cap = |S| (int_r^R t^(-(n-1)/(p-1)) dt)^(1-p).
double condenserOracle(int n, double p, double r, double R)
{
    const double I = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        [&](double t) { return std::pow(t, -(n - 1.0) / (p - 1.0)); }, r, R);
    return unitSphereArea(n) * std::pow(I, 1.0 - p);
}

}  // namespace

TEST_CASE("radial condenser closed form matches the ODE oracle")
{
    for (double p : {1.5, 2.0, 2.5, 3.0})
        CHECK(radialCondenserCapacity(3, p, 0.25, 1.0) == doctest::Approx(condenserOracle(3, p, 0.25, 1.0)).epsilon(1e-10));
    CHECK(radialCondenserCapacity(2, 2.0, 0.5, 2.0) == doctest::Approx(condenserOracle(2, 2.0, 0.5, 2.0)).epsilon(1e-10));
}

TEST_CASE("riesz capacity of the unit sphere")
{
    const Point o(3);
    const auto coarse = rieszCapacity(ParametricSet::sphere(o, 1.0), Region::ball(o, 2.0), 1.5, 1.0 / 8);
    const auto fine = rieszCapacity(ParametricSet::sphere(o, 1.0), Region::ball(o, 2.0), 1.5, 1.0 / 16);
    CHECK(fine.value == doctest::Approx(0.5 / std::pow(2.0, -0.5)).epsilon(0.01));
    CHECK(coarse.value == doctest::Approx(fine.value).epsilon(0.05));
    CHECK(fine.lower <= fine.value * (1.0 + 1e-12));
}

TEST_CASE("riesz capacity is monotone and scales like lambda^(n - alpha)")
{
    const Point o(3);
    const double alpha = 2.0, h = 1.0 / 16;
    const auto small = ParametricSet::ball(Point{0.2, 0, 0}, 0.2);
    const auto big = small.united(ParametricSet::ball(Point{-0.3, 0, 0}, 0.2));
    const Region omega = Region::ball(o, 1.5);
    const double c1 = rieszCapacity(small, omega, alpha, h).value;
    const double c2 = rieszCapacity(big, omega, alpha, h).value;
    CHECK(c1 <= c2 * 1.01);
    const double half = rieszCapacity(big.scaled(0.5), omega.scaled(0.5), alpha, h / 2).value;
    CHECK(half == doctest::Approx(std::pow(0.5, 3.0 - alpha) * c2).epsilon(0.05));
}

TEST_CASE("p capacity of a spherical condenser")
{
    const Point o(3);
    for (double p : {2.0, 2.5}) {
        const double exact = condenserOracle(3, p, 0.25, 1.0);
        const auto est = pCapacity(ParametricSet::ball(o, 0.25), Region::ball(o, 1.0), p, 1.0 / 64);
        MESSAGE("p " << p << " value " << est.value << " exact " << exact);
        CHECK(est.value == doctest::Approx(exact).epsilon(0.05));
    }
}

TEST_CASE("p capacity scales like lambda^(n - p)")
{
    const Point o(3);
    const double p = 2.5;
    const auto K = ParametricSet::ball(o, 0.25);
    const Region omega = Region::ball(o, 1.0);
    const double c = pCapacity(K, omega, p, 1.0 / 32).value;
    const double c2 = pCapacity(K.scaled(0.5), omega.scaled(0.5), p, 1.0 / 64).value;
    CHECK(c2 == doctest::Approx(std::pow(0.5, 3.0 - p) * c).epsilon(0.05));
}

TEST_CASE("annulus ratio vanishes off the set")
{
    const Point o(3);
    const auto far = ParametricSet::ball(Point{5, 0, 0}, 0.1);
    AnnulusOptions opt;
    opt.hRel = 1.0 / 8;
    CHECK(annulusCapacityRatio(far, o, 2, CapacityKind::Variational, 2.0, opt).ratio == 0.0);
}
