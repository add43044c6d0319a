#include "doctest.h"

#include "potkit/cones.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace potkit;

namespace {

Eigenvalues randomVector(std::mt19937_64& rng, std::size_t n)
{
    std::normal_distribution<double> g;
    Eigenvalues v(n);
    for (auto& x : v) x = g(rng);
    return v;
}

}  // namespace

TEST_CASE("A cone boundary and trace test")
{
    for (double p : {1.5, 2.0, 3.0, 5.0}) {
        const std::size_t n = 5;
        Eigenvalues v(n, 1.0);
        CHECK(memberA(v, p));
        if (p >= 2.0) {
            v[0] = -(n - 1.0) / (p - 1.0);
            CHECK(aCone(v, p) == doctest::Approx(0.0).epsilon(1e-14));
            CHECK(memberA(v, p));
            v[0] -= 1e-6;
            CHECK_FALSE(memberA(v, p));
        }
    }
    Eigenvalues w(4, 1.0);
    w[0] = -4.0;
    CHECK_FALSE(memberA(w, 2.0));
}

TEST_CASE("A cone minimum matches the brute-force minimum over k")
{
    std::mt19937_64 rng(3);
    for (int t = 0; t < 500; ++t) {
        const auto v = randomVector(rng, 5);
        const double p = 1.1 + 4.0 * (t % 10) / 10.0;
        const double sum = std::accumulate(v.begin(), v.end(), 0.0);
        double m = 1e300;
        for (double x : v) m = std::min(m, (p - 2.0) * x + sum);
        CHECK(aCone(v, p) == doctest::Approx(m));
    }
}

TEST_CASE("R cone sorted formula equals the minimum over rearrangements")
{
    std::mt19937_64 rng(5);
    for (std::size_t n = 2; n <= 6; ++n)
        for (int r = 1; 2 * r <= static_cast<int>(n); ++r)
            for (int t = 0; t < 30; ++t) {
                auto v = randomVector(rng, n);
                std::sort(v.begin(), v.end());
                Eigenvalues w = v;
                double best = 1e300;
                do {
                    double head = 0.0, tail = 0.0;
                    for (std::size_t i = 0; i < n; ++i) (static_cast<int>(i) < r ? head : tail) += w[i];
                    best = std::min(best, (n - r) * head + r * tail);
                } while (std::next_permutation(w.begin(), w.end()));
                CHECK(rCone(v, r) == doctest::Approx(best).epsilon(1e-12));
            }
    CHECK(rCone(Eigenvalues(6, -0.5), 2) == doctest::Approx(-0.5 * 2 * 2 * 4));
}

TEST_CASE("sigma recurrence equals subset sums")
{
    std::mt19937_64 rng(7);
    for (std::size_t n = 1; n <= 6; ++n)
        for (int t = 0; t < 20; ++t) {
            const auto v = randomVector(rng, n);
            const auto e = elementarySymmetric(v, static_cast<int>(n));
            std::vector<double> brute(n + 1, 0.0);
            for (unsigned mask = 0; mask < (1u << n); ++mask) {
                double prod = 1.0;
                int c = 0;
                for (std::size_t i = 0; i < n; ++i)
                    if (mask & (1u << i)) {
                        prod *= v[i];
                        ++c;
                    }
                brute[static_cast<std::size_t>(c)] += prod;
            }
            for (std::size_t l = 0; l <= n; ++l) CHECK(e[l] == doctest::Approx(brute[l]).epsilon(1e-12));
        }
}

TEST_CASE("Gamma boundary vector is exact")
{
    for (int n = 2; n <= 12; ++n)
        for (int k = 1; k < n; ++k) {
            Eigenvalues v(static_cast<std::size_t>(n), 1.0);
            v[0] = -static_cast<double>(n - k) / k;
            CHECK(std::abs(elementarySymmetric(v, k).back()) <= 1e-12 * std::pow(static_cast<double>(n), k));
            CHECK(memberGamma(v, k));
        }
    CHECK(memberGamma(Eigenvalues{1.0, 2.0, 3.0}, 3));
}

TEST_CASE("memberships are permutation and scale invariant")
{
    std::mt19937_64 rng(11);
    for (int t = 0; t < 300; ++t) {
        auto v = randomVector(rng, 6);
        Eigenvalues w = v;
        std::shuffle(w.begin(), w.end(), rng);
        Eigenvalues s = v;
        for (auto& x : s) x *= 3.7;
        for (const auto& cone : {ConeSpec::A(3.0), ConeSpec::R(2), ConeSpec::Gamma(2), ConeSpec::Gamma(3)}) {
            CHECK(member(v, cone) == member(w, cone));
            CHECK(member(v, cone) == member(s, cone));
        }
        if (memberA(v, 4.0)) CHECK(memberA(v, 3.0));
    }
}

TEST_CASE("A(2) and R(n/2) coincide")
{
    std::mt19937_64 rng(13);
    for (int t = 0; t < 10000; ++t) {
        const auto v = randomVector(rng, 6);
        CHECK(memberA(v, 2.0) == memberR(v, 3));
    }
}

TEST_CASE("cone inclusions hold and a violation is found")
{
    InclusionOptions opt;
    opt.samples = 20000;
    CHECK(inclusionCheck(4, ConeSpec::A(3.5), ConeSpec::A(2.5), opt).holds());
    CHECK(inclusionCheck(6, ConeSpec::R(1), ConeSpec::R(3), opt).holds());
    CHECK(inclusionCheck(4, ConeSpec::A(2.5), ConeSpec::R(2), opt).holds());
    const auto bad = inclusionCheck(4, ConeSpec::A(2.5), ConeSpec::R(1), opt);
    CHECK_FALSE(bad.holds());
    REQUIRE_FALSE(bad.counterexamples.empty());
    CHECK(memberA(bad.counterexamples.front(), 2.5));
    CHECK_FALSE(memberR(bad.counterexamples.front(), 1));
}

TEST_CASE("p index of the Gamma cones")
{
    CHECK(pGamma(6, ConeSpec::Gamma(2)) == doctest::Approx(3.5).epsilon(1e-12));
    for (int n = 2; n <= 12; ++n)
        for (int k = 1; 2 * k <= n; ++k) {
            INFO("n=" << n << " k=" << k);
            CHECK(std::abs(pGamma(static_cast<std::size_t>(n), ConeSpec::Gamma(k)) - pGammaK(n, k)) <= 1e-9);
        }
    CHECK(pGamma(8, ConeSpec::Gamma(4)) == doctest::Approx(8.0));
    CHECK(pGamma(5, ConeSpec::Gamma(1)) == doctest::Approx(2.0));
}

TEST_CASE("p index round trip through a custom function")
{
    for (double p : {2.0, 2.5, 3.0, 4.0}) {
        const auto F = ConeSpec::custom([p](const Eigenvalues& v) { return aCone(v, p); }, 1.0);
        CHECK(std::abs(pGamma(5, F) - p) <= 1e-9);
    }
    CHECK(isInfinite(pGamma(4, ConeSpec::custom([](const Eigenvalues& v) { return *std::max_element(v.begin(), v.end()); }, 1.0))));
    CHECK_THROWS_AS(pGamma(4, ConeSpec::custom([](const Eigenvalues& v) { return -std::accumulate(v.begin(), v.end(), 0.0); }, 1.0)),
                    Error);
    CHECK_THROWS(ConeSpec::custom([](const Eigenvalues& v) { return v[0]; }, 1.0).validate(4));
}

TEST_CASE("radial Hessian of the Gamma-k profile sits on the cone boundary")
{
    for (int n = 3; n <= 10; ++n)
        for (int k = 1; 2 * k < n; ++k) {
            const double beta = 2.0 - static_cast<double>(n) / k;
            const double r = 0.3;
            Eigenvalues h(static_cast<std::size_t>(n), beta * std::pow(r, beta - 2.0));
            h[0] = beta * (beta - 1.0) * std::pow(r, beta - 2.0);
            Eigenvalues neg(h.size());
            std::transform(h.begin(), h.end(), neg.begin(), [](double x) { return -x; });
            CHECK(memberGamma(neg, k));
            const double sk = elementarySymmetric(neg, k).back();
            CHECK(std::abs(sk) <= 1e-10 * std::pow(std::abs(neg[1]) * n, k));
            const auto b = fullyNonlinearBridge({h}, ConeSpec::Gamma(k));
            CHECK_FALSE(b.logProfile);
            CHECK(std::abs(b.exponent - beta) <= 1e-12 * std::max(1.0, std::abs(beta)) * 10);
            const double p = pGammaK(n, k);
            CHECK(std::abs(beta + (n - p) / (p - 1.0)) <= 1e-12);
        }
    Eigenvalues h(6, -1.0);
    CHECK(fullyNonlinearBridge({h}, ConeSpec::Gamma(3)).logProfile);
    CHECK_THROWS_AS(fullyNonlinearBridge({Eigenvalues(4, 1.0)}, ConeSpec::Gamma(1)), Error);
}
