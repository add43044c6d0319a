#include "potkit/riesz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace potkit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double sphereWeightNorm(int n)
{
    // Integral of sin^(n-2) over [0, pi].
    return std::sqrt(std::numbers::pi) * std::tgamma(0.5 * (n - 1)) / std::tgamma(0.5 * n);
}

double atomicPotential(const AtomicMeasure& m, int n, const RieszParams& prm, const Point& x)
{
    double s = 0.0;
    for (const auto& a : m.atoms()) {
        if (a.mass == 0.0) continue;
        const double r = distance(a.location, x);
        if (r == 0.0) return kInfinity;
        s += a.mass * rieszKernel(n, prm, r);
    }
    return s;
}

double gridPotential(const GridMeasure& g, int n, const RieszParams& prm, const Point& x)
{
    const EvaluationGrid& grid = g.grid();
    const double vol = grid.cellVolume();
    const bool inside = grid.box().contains(x);
    const std::size_t self = inside ? grid.locateCell(x) : grid.cellCount();
    double s = 0.0;
    for (std::size_t c = 0; c < grid.cellCount(); ++c) {
        const double rho = g.density()[c];
        if (rho == 0.0 || c == self) continue;
        s += rho * vol * rieszKernel(n, prm, distance(grid.cellCenter(c), x));
    }
    if (inside && g.density()[self] > 0.0) {
        // Kernel integrated over the ball of the same volume as the cell, centered at x.
        const double area = unitSphereArea(n);
        const double r = grid.pitch() * std::pow(unitBallVolume(n), -1.0 / n);
        double ball = 0.0;
        if (prm.logarithmic(n))
            ball = area * std::pow(r, n) / n * (std::log(prm.diameter / r) + 1.0 / n);
        else
            ball = area * std::pow(r, prm.alpha) / prm.alpha;
        s += g.density()[self] * ball;
    }
    return s;
}

double radialPotential(const RadialProfileMeasure& m, int n, const RieszParams& prm, const Point& x)
{
    const RadialProfile& prof = m.profile();
    const double d = distance(x, m.center());
    const double R = prof.radius();
    const bool logk = prm.logarithmic(n);
    const double beta = prm.alpha - n;

    if (prof.form() == RadialProfile::Form::Table) {
        double s = 0.0, prev = 0.0;
        for (const auto& [t, v] : prof.steps()) {
            const double jump = v - prev;
            prev = v;
            if (jump == 0.0) continue;
            if (t == 0.0) {
                if (d == 0.0) return kInfinity;
                s += jump * rieszKernel(n, prm, d);
            } else {
                if (d == 0.0) s += jump * rieszKernel(n, prm, t);
                else s += jump * sphericalMeanKernel(n, prm, t, d);
            }
        }
        return s;
    }

    const double a = prof.atom(), c = prof.coefficient(), mexp = prof.exponent();
    double s = 0.0;
    if (a > 0.0) {
        if (d == 0.0) return kInfinity;
        s += a * rieszKernel(n, prm, d);
    }
    if (c == 0.0) return s;
    if (d == 0.0) {
        if (logk) return s + c * std::pow(R, mexp) * (std::log(prm.diameter / R) + 1.0 / mexp);
        if (beta + mexp <= 0.0) return kInfinity;
        return s + c * mexp * std::pow(R, beta + mexp) / (beta + mexp);
    }
    auto integrand = [&](double r) { return c * mexp * std::pow(r, mexp - 1.0) * sphericalMeanKernel(n, prm, r, d); };
    boost::math::quadrature::tanh_sinh<double> ts;
    if (d < R) {
        s += ts.integrate(integrand, 0.0, d, 1e-10);
        s += ts.integrate(integrand, d, R, 1e-10);
    } else {
        s += ts.integrate(integrand, 0.0, R, 1e-10);
    }
    return s;
}

}  // namespace

void RieszParams::validate(int n) const
{
    require(n >= 2, "dimension must be at least 2");
    require(alpha > 1.0 && alpha <= n, "alpha must lie in (1, n]");
    if (logarithmic(n)) require(diameter > 0.0 && std::isfinite(diameter), "the logarithmic kernel needs a positive diameter D");
}

double rieszKernel(int n, const RieszParams& params, double r)
{
    if (r <= 0.0) return kInfinity;
    if (params.logarithmic(n)) return std::log(params.diameter / r);
    return std::pow(r, params.alpha - n);
}

double sphericalMeanKernel(int n, const RieszParams& params, double s, double d)
{
    if (s == 0.0) return rieszKernel(n, params, d);
    if (d == 0.0) return rieszKernel(n, params, s);
    if (n == 3) {
        const double lo = std::abs(s - d), hi = s + d;
        if (params.logarithmic(n)) {
            // (1/(2sd)) * int_lo^hi u log(D/u) du
            auto F = [&](double u) { return u == 0.0 ? 0.0 : 0.5 * u * u * std::log(params.diameter / u) + 0.25 * u * u; };
            return (F(hi) - F(lo)) / (2.0 * s * d);
        }
        const double e = params.alpha - n + 2.0;  // exponent of the antiderivative
        return (std::pow(hi, e) - std::pow(lo, e)) / (2.0 * s * d * e);
    }
    auto integrand = [&](double th) {
        const double r2 = s * s + d * d - 2.0 * s * d * std::cos(th);
        return rieszKernel(n, params, std::sqrt(std::max(r2, 0.0))) * std::pow(std::sin(th), n - 2);
    };
    boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate(integrand, 0.0, std::numbers::pi, 1e-11) / sphereWeightNorm(n);
}

double rieszPotential(const Measure& mu, const RieszParams& params, const Point& x)
{
    const int n = static_cast<int>(x.dim());
    params.validate(n);
    require(x.finite(), "evaluation point must be finite");
    require(mu.dim() == 0 || mu.dim() == x.dim(), "measure and point dimensions differ");
    double s = 0.0;
    for (const auto& c : mu.components()) {
        const double v = std::visit(overloaded{[&](const AtomicMeasure& m) { return atomicPotential(m, n, params, x); },
                                               [&](const GridMeasure& m) { return gridPotential(m, n, params, x); },
                                               [&](const RadialProfileMeasure& m) { return radialPotential(m, n, params, x); }},
                                    c);
        if (isInfinite(v)) return kInfinity;
        s += v;
    }
    return s;
}

AsymptoticReport rieszAsymptoticReport(const Measure& mu, const RieszParams& params, const Point& p,
                                       const ApproachPath& path)
{
    const int n = static_cast<int>(p.dim());
    params.validate(n);
    path.validate(p.dim());
    AsymptoticReport rep;
    const bool logk = params.logarithmic(n);
    for (std::size_t k = 0; k < path.radii.size(); ++k) {
        const double r = path.radii[k];
        const double v = rieszPotential(mu, params, path.at(p, k));
        rep.radii.push_back(r);
        rep.potentials.push_back(v);
        if (logk) {
            rep.ratios.push_back(v / std::log(1.0 / r));
            rep.altRatios.push_back(v / std::log(params.diameter / r));
        } else {
            rep.ratios.push_back(v / std::pow(r, params.alpha - n));
        }
    }
    rep.fit = fitLimit(rep.radii, rep.ratios, logk ? CorrectionScale::InverseLog : CorrectionScale::Power);
    if (logk) {
        rep.hasAlt = true;
        rep.altFit = fitLimit(rep.radii, rep.altRatios, CorrectionScale::InverseLog);
    }
    return rep;
}

RieszDecayReport rieszDecayCheck(const Measure& mu, const RieszParams& params, const Point& p, double d,
                                 const ApproachPath& path, std::optional<double> growthConstant, double tol)
{
    const int n = static_cast<int>(p.dim());
    params.validate(n);
    path.validate(p.dim());
    require(d >= 0.0 && d < n - params.alpha, "decay check needs 0 <= d < n - alpha");
    RieszDecayReport rep;
    rep.exponentBound = n - params.alpha - d;
    for (std::size_t k = 0; k < path.radii.size(); ++k) {
        const double r = path.radii[k];
        rep.radii.push_back(r);
        rep.massRatios.push_back(mu.ballMass(p, r) / std::pow(r, d));
        rep.potentials.push_back(rieszPotential(mu, params, path.at(p, k)));
    }
    const double maxRatio = *std::max_element(rep.massRatios.begin(), rep.massRatios.end());
    if (growthConstant) {
        rep.growthConstant = *growthConstant;
        for (double q : rep.massRatios)
            if (q > *growthConstant * (1.0 + 1e-12))
                fail(ErrorKind::HypothesisViolated, "ball mass exceeds C t^d on the sampled scales");
    } else {
        rep.growthConstant = maxRatio;
        // Without a given C the bound must at least stop growing on the finest scales.
        const std::size_t N = rep.radii.size(), start = N - std::max<std::size_t>(4, N / 3);
        std::vector<double> lr, lq;
        for (std::size_t k = start; k < N; ++k) {
            if (rep.massRatios[k] <= 0.0) continue;
            lr.push_back(std::log(rep.radii[k]));
            lq.push_back(std::log(rep.massRatios[k]));
        }
        if (lr.size() >= 2 && linearFit(lr, lq).first < -tol)
            fail(ErrorKind::HypothesisViolated, "mu(B(p,t))/t^d keeps growing as t -> 0");
    }
    std::vector<double> lr, lv;
    double cPrime = 0.0;
    for (std::size_t k = 0; k < rep.radii.size(); ++k) {
        const double v = rep.potentials[k];
        if (isInfinite(v)) {
            cPrime = kInfinity;
            continue;
        }
        cPrime = std::max(cPrime, v * std::pow(rep.radii[k], rep.exponentBound));
        if (v > 0.0) {
            lr.push_back(std::log(rep.radii[k]));
            lv.push_back(std::log(v));
        }
    }
    rep.smallestConstant = cPrime;
    rep.slope = lr.size() >= 2 ? -linearFit(lr, lv).first : 0.0;
    rep.withinBound = std::isfinite(cPrime) && rep.slope <= rep.exponentBound + tol;
    return rep;
}

}  // namespace potkit
