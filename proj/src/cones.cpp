#include "potkit/cones.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include <boost/math/special_functions/binomial.hpp>

namespace potkit {

namespace {

double supNorm(const Eigenvalues& v)
{
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

/// Zero tolerance for a degree-d expression with `terms` products of entries.
double zeroTol(const Eigenvalues& v, double terms, double degree) { return 1e-12 * terms * std::pow(supNorm(v), degree); }

double binom(std::size_t n, std::size_t k) { return k > n ? 0.0 : boost::math::binomial_coefficient<double>(static_cast<unsigned>(n), static_cast<unsigned>(k)); }

Eigenvalues ray(std::size_t n, double a)
{
    Eigenvalues v(n, 1.0);
    v[0] = -a;
    return v;
}

}  // namespace

ConeSpec ConeSpec::A(double p) { return ConeSpec{Kind::A, p, {}, 1.0}; }
ConeSpec ConeSpec::R(int r) { return ConeSpec{Kind::R, static_cast<double>(r), {}, 1.0}; }
ConeSpec ConeSpec::Gamma(int k) { return ConeSpec{Kind::Gamma, static_cast<double>(k), {}, static_cast<double>(k)}; }
ConeSpec ConeSpec::custom(std::function<double(const Eigenvalues&)> F, double degree)
{
    require(static_cast<bool>(F), "custom cones need a function");
    require(degree > 0.0, "homogeneity degree must be positive");
    return ConeSpec{Kind::Custom, 0.0, std::move(F), degree};
}

void ConeSpec::validate(std::size_t n) const
{
    require(n >= 2, "cones need n >= 2");
    const double nn = static_cast<double>(n);
    switch (kind) {
    case Kind::A:
        require(parameter > 1.0 && std::isfinite(parameter), "A(p) needs p in (1, inf)");
        break;
    case Kind::R:
        require(parameter == std::floor(parameter) && parameter >= 1.0 && 2.0 * parameter <= nn, "R(r) needs integer r in [1, n/2]");
        break;
    case Kind::Gamma:
        require(parameter == std::floor(parameter) && parameter >= 1.0 && parameter <= nn, "Gamma(k) needs integer k in [1, n]");
        break;
    case Kind::Custom: {
        require(static_cast<bool>(F), "custom cones need a function");
        std::mt19937_64 rng(12345);
        std::normal_distribution<double> g;
        for (int t = 0; t < 8; ++t) {
            Eigenvalues v(n);
            for (auto& x : v) x = g(rng);
            Eigenvalues w = v;
            std::shuffle(w.begin(), w.end(), rng);
            const double a = F(v), b = F(w);
            if (std::abs(a - b) > 1e-9 * std::max({1.0, std::abs(a), std::abs(b)}))
                fail(ErrorKind::InvalidArgument, "custom F is not symmetric under permutations");
        }
        break;
    }
    }
}

std::string ConeSpec::name() const
{
    std::ostringstream os;
    switch (kind) {
    case Kind::A: os << "A(" << parameter << ")"; break;
    case Kind::R: os << "R(" << parameter << ")"; break;
    case Kind::Gamma: os << "Gamma(" << parameter << ")"; break;
    case Kind::Custom: os << "custom(degree " << degree << ")"; break;
    }
    return os.str();
}

std::vector<double> elementarySymmetric(const Eigenvalues& lambda, int k)
{
    require(k >= 0, "k must be nonnegative");
    std::vector<double> e(static_cast<std::size_t>(k) + 1, 0.0);
    e[0] = 1.0;
    for (double l : lambda)
        for (int j = k; j >= 1; --j) e[j] += l * e[j - 1];
    return e;
}

double aCone(const Eigenvalues& lambda, double p)
{
    require(!lambda.empty(), "empty eigenvalue vector");
    const double sum = std::accumulate(lambda.begin(), lambda.end(), 0.0);
    // The minimum over k sits at the smallest entry for p >= 2 and at the largest for p < 2.
    const auto [lo, hi] = std::minmax_element(lambda.begin(), lambda.end());
    return (p - 2.0) * (p >= 2.0 ? *lo : *hi) + sum;
}

double rCone(const Eigenvalues& lambda, int r)
{
    Eigenvalues s = lambda;
    std::sort(s.begin(), s.end());
    const std::size_t n = s.size();
    const double head = std::accumulate(s.begin(), s.begin() + r, 0.0);
    const double tail = std::accumulate(s.begin() + r, s.end(), 0.0);
    return static_cast<double>(n - static_cast<std::size_t>(r)) * head + r * tail;
}

bool memberA(const Eigenvalues& lambda, double p)
{
    require(p > 1.0, "A(p) needs p > 1");
    return aCone(lambda, p) >= -zeroTol(lambda, static_cast<double>(lambda.size()) + std::abs(p - 2.0), 1.0);
}

bool memberR(const Eigenvalues& lambda, int r)
{
    const std::size_t n = lambda.size();
    require(r >= 1 && 2 * static_cast<std::size_t>(r) <= n, "R(r) needs 1 <= r <= n/2");
    return rCone(lambda, r) >= -zeroTol(lambda, 2.0 * r * static_cast<double>(n - r), 1.0);
}

bool memberGamma(const Eigenvalues& lambda, int k)
{
    require(k >= 1 && static_cast<std::size_t>(k) <= lambda.size(), "Gamma(k) needs 1 <= k <= n");
    const auto e = elementarySymmetric(lambda, k);
    for (int l = 1; l <= k; ++l)
        if (e[l] < -zeroTol(lambda, binom(lambda.size(), l), l)) return false;
    return true;
}

double coneFunction(const Eigenvalues& lambda, const ConeSpec& cone)
{
    switch (cone.kind) {
    case ConeSpec::Kind::A: return aCone(lambda, cone.parameter);
    case ConeSpec::Kind::R: return rCone(lambda, static_cast<int>(cone.parameter));
    case ConeSpec::Kind::Gamma: return elementarySymmetric(lambda, static_cast<int>(cone.parameter)).back();
    case ConeSpec::Kind::Custom: return cone.F(lambda);
    }
    return 0.0;
}

bool member(const Eigenvalues& lambda, const ConeSpec& cone)
{
    switch (cone.kind) {
    case ConeSpec::Kind::A: return memberA(lambda, cone.parameter);
    case ConeSpec::Kind::R: return memberR(lambda, static_cast<int>(cone.parameter));
    case ConeSpec::Kind::Gamma: return memberGamma(lambda, static_cast<int>(cone.parameter));
    case ConeSpec::Kind::Custom:
        return cone.F(lambda) >= -1e-12 * std::pow(std::max(1.0, supNorm(lambda)), cone.degree);
    }
    return false;
}

double boundaryRay(std::size_t n, const ConeSpec& cone)
{
    cone.validate(n);
    const double nn = static_cast<double>(n);
    // Normalizing by (1 + a)^degree keeps the bracket values O(1).
    auto f = [&](double a) { return coneFunction(ray(n, a), cone) / std::pow(1.0 + a, cone.degree); };
    if (!(f(0.0) > 0.0)) fail(ErrorKind::DegenerateCone, "F(0, 1, ..., 1) <= 0: the cone does not contain the positive ray family");
    if (f(nn - 1.0) > 0.0) return kInfinity;
    double lo = 0.0, hi = nn - 1.0;
    while (true) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    return lo;
}

double pGamma(std::size_t n, const ConeSpec& cone)
{
    const double a = boundaryRay(n, cone);
    if (isInfinite(a)) return kInfinity;
    require(a > 0.0, "boundary ray collapsed to a = 0");
    return 1.0 + (static_cast<double>(n) - 1.0) / a;
}

double pGammaK(int n, int k)
{
    require(k >= 1 && k < n, "the closed form needs 1 <= k < n");
    return static_cast<double>(n) * (k - 1.0) / (n - k) + 2.0;
}

InclusionReport inclusionCheck(std::size_t n, const ConeSpec& inner, const ConeSpec& outer, const InclusionOptions& options)
{
    inner.validate(n);
    outer.validate(n);
    InclusionReport rep;
    rep.inner = inner.name();
    rep.outer = outer.name();
    rep.n = n;
    auto test = [&](const Eigenvalues& v) {
        ++rep.tested;
        if (member(v, outer)) return;
        ++rep.counterexampleCount;
        if (rep.counterexamples.size() < options.keep) rep.counterexamples.push_back(v);
    };

    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> g;
    for (std::size_t s = 0; s < options.samples; ++s) {
        Eigenvalues v(n);
        double len = 0.0;
        for (auto& x : v) {
            x = g(rng);
            len += x * x;
        }
        len = std::sqrt(len);
        for (auto& x : v) x /= len;
        ++rep.drawn;
        if (member(v, inner)) test(v);
    }

    // Rays (-a, 1, ..., 1) up to and including the inner boundary.
    double aStar = 0.0;
    try {
        aStar = boundaryRay(n, inner);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::DegenerateCone) throw;
        aStar = 0.0;
    }
    rep.innerRay = aStar;
    const double aMax = isInfinite(aStar) ? static_cast<double>(n) - 1.0 : aStar;
    for (std::size_t j = 0; j <= options.raySteps; ++j) {
        const Eigenvalues v = ray(n, aMax * static_cast<double>(j) / static_cast<double>(options.raySteps));
        if (member(v, inner)) test(v);
    }
    return rep;
}

BridgeReport fullyNonlinearBridge(const std::vector<Eigenvalues>& hessianEigenvalues, const ConeSpec& cone)
{
    require(!hessianEigenvalues.empty(), "no Hessian samples");
    const std::size_t n = hessianEigenvalues.front().size();
    cone.validate(n);
    BridgeReport rep;
    std::ostringstream bad;
    std::size_t violations = 0;
    for (std::size_t s = 0; s < hessianEigenvalues.size(); ++s) {
        const auto& h = hessianEigenvalues[s];
        require(h.size() == n, "Hessian samples differ in dimension");
        Eigenvalues neg(n);
        for (std::size_t j = 0; j < n; ++j) neg[j] = -h[j];
        ++rep.checked;
        if (!member(neg, cone)) {
            if (violations++ < 8) bad << " #" << s;
        }
    }
    if (violations > 0)
        fail(ErrorKind::SampleViolation, std::to_string(violations) + " samples have -lambda(D^2 u) outside the cone:" + bad.str());
    rep.pGamma = pGamma(n, cone);
    const double nn = static_cast<double>(n);
    if (isInfinite(rep.pGamma)) fail(ErrorKind::NoSignChange, "the cone has no finite p index");
    rep.logProfile = std::abs(rep.pGamma - nn) <= 1e-9 * nn;
    rep.exponent = rep.logProfile ? 0.0 : -(nn - rep.pGamma) / (rep.pGamma - 1.0);
    return rep;
}

}  // namespace potkit
