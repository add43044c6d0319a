#include "doctest.h"

#include "potkit/thinness.hpp"

using namespace potkit;

TEST_CASE("classification of model series")
{
    CHECK(classifyThin(std::vector<double>(12, 0.0)).verdict == Verdict::Thin);
    CHECK(classifyThin(std::vector<double>(12, 0.3)).verdict == Verdict::NotThin);

    const int I = 40;
    std::vector<double> terms;
    for (int i = 1; i <= I; ++i) terms.push_back(0.5 / (double(i) * i));
    const auto rep = classifyThin(terms);
    CHECK(rep.verdict == Verdict::Thin);
    CHECK(rep.tail.kind == "power");
    CHECK(rep.tail.rate == doctest::Approx(2.0).epsilon(0.02));
    /// Exact tail of 0.5 sum_{i > I} i^-2 lies between 0.5/(I+1) and 0.5/I.
    CHECK(rep.tail.bound == doctest::Approx(0.5 / I).epsilon(0.05));
    CHECK(rep.partialSums.back() == doctest::Approx(rep.partialSum));

    std::vector<double> harmonic;
    for (int i = 1; i <= I; ++i) harmonic.push_back(1.0 / i);
    CHECK(classifyThin(harmonic).verdict != Verdict::Thin);
}

TEST_CASE("escaping rays")
{
    const Point o{0, 0, 0};
    const auto ball = ParametricSet::ball(Point{0.5, 0, 0}, 0.2);
    const auto ray = escapingRay(ball, o, 1.0, 256, 3);
    REQUIRE(ray.has_value());
    CHECK(!ball.segmentHits(o, *ray, 1.0));
    CHECK(ray->norm() == doctest::Approx(1.0));

    CHECK(!escapingRay(ParametricSet::sphere(o, 0.5), o, 1.0, 4096, 3).has_value());

    const auto family = ballFamily(o, 2.0, 2, 30);
    const auto esc = escapingRay(family, o, 1.0, 4096, 3);
    REQUIRE(esc.has_value());
    CHECK(!family.segmentHits(o, *esc, 1.0));
}

TEST_CASE("sphere directions are deterministic unit vectors")
{
    const auto a = sphereDirections(4, 64, 9);
    const auto b = sphereDirections(4, 64, 9);
    CHECK(a == b);
    for (const auto& v : a) CHECK(v.norm() == doctest::Approx(1.0));
}

TEST_CASE("isolated points have Wiener terms at the floor")
{
    const Point o{0, 0, 0};
    std::vector<Point> pts;
    for (int i = 1; i <= 6; ++i) pts.push_back(Point{std::ldexp(1.5, -i), 0, 0});
    WienerOptions opt;
    opt.annulus.hRel = 1.0 / 8;
    const auto series = wienerTerms(ParametricSet::points(pts), o, 2.0, 4, WienerWeighting::CapP, opt);
    REQUIRE(series.terms.size() == 4);
    for (const auto& t : series.terms) CHECK(t.belowFloor);
    CHECK(classifyThin(series.values()).verdict == Verdict::Thin);
}
