#include "potkit/thinness.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>

#include <boost/math/distributions/normal.hpp>

#include "potkit/asymptotic.hpp"

namespace potkit {

std::vector<double> WienerSeries::values() const
{
    std::vector<double> v;
    for (const auto& t : terms) v.push_back(t.term);
    return v;
}

namespace {

CapacityKind kindOf(WienerWeighting w) { return w == WienerWeighting::RieszAlpha ? CapacityKind::Riesz : CapacityKind::Variational; }

double weightOf(WienerWeighting w, std::size_t n, double param, int i)
{
    const bool crit = std::abs(param - static_cast<double>(n)) < 1e-12;
    if (!crit) return 1.0;
    if (w == WienerWeighting::RieszAlpha) return i;
    return std::pow(static_cast<double>(i), static_cast<double>(n) - 1.0);
}

}  // namespace

WienerSeries wienerTerms(const ParametricSet& E, const Point& x0, double param, int I, WienerWeighting weighting,
                         const WienerOptions& options)
{
    const std::size_t n = x0.dim();
    require(I >= 4, "at least four annuli are needed");
    require(E.dim() == n, "set and point dimensions differ");
    const double nn = static_cast<double>(n);
    switch (weighting) {
    case WienerWeighting::RieszAlpha:
        require(param > 1.0 && param <= nn, "alpha must lie in (1, n]");
        break;
    case WienerWeighting::CapP:
        require(param > 1.0 && param < nn, "cap-p weighting needs p in (1, n)");
        break;
    case WienerWeighting::CapN:
        require(std::abs(param - nn) < 1e-12, "cap-n weighting needs p = n");
        break;
    }
    const CapacityKind kind = kindOf(weighting);
    const bool crit = std::abs(param - nn) < 1e-12;
    const double delta = options.annulus.delta;

    // Reference capacities scale exactly like 2^(-i(n-param)) because the lattice scales with the annulus.
    const double den1 = crit ? 1.0 : annulusDenominator(n, 1, kind, param, options.annulus);
    auto denominator = [&](int i) { return crit ? 1.0 : den1 * std::pow(2.0, -(i - 1) * (nn - param)); };

    // Single-node floor at i = 1, expressed as an unweighted ratio.
    double floorRatio = 0.0;
    if (kind == CapacityKind::Variational) {
        Point q = x0;
        q[0] += 1.5 * std::ldexp(delta, -1);
        const double h = options.annulus.hRel * std::ldexp(delta, -1);
        floorRatio = pCapacity(ParametricSet::points({q}), dyadicShell(x0, 1, delta), param, h, options.annulus.variational).value / den1;
    }

    auto one = [&](int i) {
        WienerTerm t;
        t.i = i;
        const double h = options.annulus.hRel * std::ldexp(delta, -i);
        const ParametricSet piece = E.clipped(dyadicAnnulus(x0, i, delta));
        t.denominator = denominator(i);
        if (!piece.empty()) {
            t.numerator = kind == CapacityKind::Riesz
                              ? rieszCapacity(piece, dyadicShell(x0, i, delta), param, h, options.annulus.riesz).value
                              : pCapacity(piece, dyadicShell(x0, i, delta), param, h, options.annulus.variational).value;
        }
        const double ratio = t.numerator / t.denominator;
        t.raw = weightOf(weighting, n, param, i) * ratio;
        t.belowFloor = t.numerator == 0.0 || (floorRatio > 0.0 && ratio <= options.floorFactor * floorRatio);
        t.term = t.belowFloor ? 0.0 : t.raw;
        return t;
    };

    WienerSeries out;
    out.floor = floorRatio;
    out.terms.resize(static_cast<std::size_t>(I));
    const int jobs = std::max(1, options.jobs);
    if (jobs == 1) {
        for (int i = 1; i <= I; ++i) out.terms[static_cast<std::size_t>(i - 1)] = one(i);
    } else {
        // Independent annuli; results land in index order regardless of completion order.
        for (int start = 1; start <= I; start += jobs) {
            std::vector<std::future<WienerTerm>> fut;
            for (int i = start; i < start + jobs && i <= I; ++i) fut.push_back(std::async(std::launch::async, one, i));
            for (auto& f : fut) {
                WienerTerm t = f.get();
                out.terms[static_cast<std::size_t>(t.i - 1)] = t;
            }
        }
    }
    return out;
}

const char* verdictName(Verdict v)
{
    switch (v) {
    case Verdict::Thin: return "thin";
    case Verdict::NotThin: return "not-thin";
    case Verdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

ThinnessReport classifyThin(const std::vector<double>& terms, const ClassifyOptions& options)
{
    require(!terms.empty(), "no terms to classify");
    ThinnessReport rep;
    rep.terms = terms;
    double s = 0.0;
    for (double t : terms) {
        require(t >= 0.0 && !std::isnan(t), "Wiener terms must be nonnegative");
        s += t;
        rep.partialSums.push_back(s);
    }
    rep.partialSum = s;
    const std::size_t I = terms.size();
    const std::size_t half = I / 2, quarter = std::max<std::size_t>(1, I / 4);
    rep.lastQuarterIncrement = std::accumulate(terms.end() - static_cast<std::ptrdiff_t>(quarter), terms.end(), 0.0);
    rep.trailingMin = *std::min_element(terms.begin() + static_cast<std::ptrdiff_t>(half), terms.end());

    // Tail fit on the last half.
    std::vector<double> li, ii, lt;
    for (std::size_t k = half; k < I; ++k)
        if (terms[k] > 0.0) {
            li.push_back(std::log(static_cast<double>(k + 1)));
            ii.push_back(static_cast<double>(k + 1));
            lt.push_back(std::log(terms[k]));
        }
    const double Id = static_cast<double>(I);
    if (li.empty() && rep.trailingMin == 0.0) {
        rep.tail.kind = "zero";
        rep.tail.bound = 0.0;
    } else if (li.size() >= 3) {
        auto rss = [&](const std::vector<double>& x, std::pair<double, double> f) {
            double r = 0.0;
            for (std::size_t k = 0; k < x.size(); ++k) {
                const double e = lt[k] - (f.second + f.first * x[k]);
                r += e * e;
            }
            return r;
        };
        const auto pw = linearFit(li, lt);
        const auto ge = linearFit(ii, lt);
        if (rss(li, pw) <= rss(ii, ge)) {
            rep.tail.kind = "power";
            rep.tail.rate = -pw.first;
            rep.tail.coefficient = std::exp(pw.second);
            rep.tail.bound = rep.tail.rate > 1.0 + options.summableMargin
                                 ? rep.tail.coefficient * std::pow(Id, 1.0 - rep.tail.rate) / (rep.tail.rate - 1.0)
                                 : kInfinity;
        } else {
            rep.tail.kind = "geometric";
            rep.tail.rate = std::exp(ge.first);
            rep.tail.coefficient = std::exp(ge.second);
            rep.tail.bound = rep.tail.rate < 1.0 ? rep.tail.coefficient * std::pow(rep.tail.rate, Id + 1.0) / (1.0 - rep.tail.rate)
                                                 : kInfinity;
        }
    } else {
        rep.tail.kind = "none";
        rep.tail.bound = kInfinity;
    }

    const bool cauchy = rep.partialSum == 0.0 || rep.lastQuarterIncrement <= options.cauchyTol * rep.partialSum;
    if (std::isfinite(rep.tail.bound) && cauchy) {
        rep.verdict = Verdict::Thin;
        rep.evidence = "tail model " + rep.tail.kind + " is summable and the last quarter adds little";
    } else if (rep.trailingMin > 0.0 && !std::isfinite(rep.tail.bound)) {
        rep.verdict = Verdict::NotThin;
        rep.evidence = "terms stay positive over the trailing window and the fitted tail is not summable";
    } else {
        rep.verdict = Verdict::Inconclusive;
        rep.evidence = std::isfinite(rep.tail.bound) ? "summable tail but partial sums still moving"
                                                     : "no summable tail fit and terms vanish somewhere in the trailing window";
    }
    return rep;
}

std::vector<Point> sphereDirections(std::size_t n, std::size_t count, std::uint64_t seed)
{
    static constexpr int primes[] = {2, 3, 5, 7, 11, 13, 17, 19};
    require(n >= 1 && n <= 8, "direction sampling supports n <= 8");
    const boost::math::normal_distribution<double> normal;
    std::vector<Point> out;
    out.reserve(count);
    std::uint64_t index = 1 + seed % 100003;
    while (out.size() < count) {
        Point g(n);
        for (std::size_t j = 0; j < n; ++j) {
            double f = 1.0, r = 0.0;
            for (std::uint64_t k = index; k > 0; k /= primes[j]) {
                f /= primes[j];
                r += f * static_cast<double>(k % primes[j]);
            }
            g[j] = boost::math::quantile(normal, std::clamp(r, 1e-12, 1.0 - 1e-12));
        }
        ++index;
        const double len = g.norm();
        if (len > 1e-9) out.push_back(g * (1.0 / len));
    }
    return out;
}

std::optional<Point> escapingRay(const ParametricSet& E, const Point& x0, double delta, std::size_t directions, std::uint64_t seed)
{
    require(delta > 0.0, "ray length must be positive");
    require(E.dim() == x0.dim(), "set and point dimensions differ");
    if (E.empty()) return unitVector(x0.dim(), 0);
    for (const Point& v : sphereDirections(x0.dim(), directions, seed))
        if (!E.segmentHits(x0, v, delta)) return v;
    return std::nullopt;
}

ParametricSet ballFamily(const Point& x0, double s, int first, int last)
{
    require(first >= 1 && last >= first, "ball family needs 1 <= first <= last");
    ParametricSet E(x0.dim());
    for (int i = first; i <= last; ++i) {
        Point c = x0;
        c[0] += std::ldexp(1.0, -i);
        E.add(BallPrimitive{c, std::ldexp(1.0, -i) * std::pow(static_cast<double>(i), -s)});
    }
    return E;
}

}  // namespace potkit
