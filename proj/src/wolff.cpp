#include "potkit/wolff.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

namespace potkit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct PowerTerm {
    double c, m, R;
};

/// t -> mu(B(x,t)) split into jumps, centered power laws and numerically evaluated parts.
struct MassModel {
    std::vector<std::pair<double, double>> jumps;  // (t, mass), counted for t >= location
    std::vector<PowerTerm> powers;                 // c t^m for t < R, c R^m beyond
    std::vector<const RadialProfileMeasure*> offCenter;
    double lowerLimit = 0.0;                       // integration starts here (grid cut-off)
    bool infinite = false;                         // mass at t = 0
};

MassModel buildModel(const Measure& mu, const Point& x)
{
    MassModel mm;
    for (const auto& comp : mu.components()) {
        std::visit(overloaded{[&](const AtomicMeasure& a) {
                                  for (const auto& at : a.atoms()) {
                                      if (at.mass <= 0.0) continue;
                                      const double d = distance(at.location, x);
                                      if (d == 0.0) mm.infinite = true;
                                      else mm.jumps.push_back({d, at.mass});
                                  }
                              },
                              [&](const GridMeasure& g) {
                                  // Cells closer than h/2 enter at t = h/2, where grid quadrature starts.
                                  const double h2 = 0.5 * g.grid().pitch();
                                  for (std::size_t c = 0; c < g.grid().cellCount(); ++c) {
                                      const double mass = g.cellMass(c);
                                      if (mass <= 0.0) continue;
                                      mm.jumps.push_back({std::max(h2, distance(g.grid().cellCenter(c), x)), mass});
                                  }
                              },
                              [&](const RadialProfileMeasure& r) {
                                  const double d = distance(r.center(), x);
                                  const RadialProfile& prof = r.profile();
                                  if (d > 0.0) {
                                      mm.offCenter.push_back(&r);
                                      return;
                                  }
                                  if (prof.form() == RadialProfile::Form::Table) {
                                      double prev = 0.0;
                                      for (const auto& [t, v] : prof.steps()) {
                                          const double jump = v - prev;
                                          prev = v;
                                          if (jump <= 0.0) continue;
                                          if (t == 0.0) mm.infinite = true;
                                          else mm.jumps.push_back({t, jump});
                                      }
                                      return;
                                  }
                                  if (prof.atom() > 0.0) mm.infinite = true;
                                  if (prof.coefficient() > 0.0)
                                      mm.powers.push_back({prof.coefficient(), prof.exponent(), prof.radius()});
                              }},
                   comp);
    }
    std::sort(mm.jumps.begin(), mm.jumps.end());
    return mm;
}

/// Gauss-Legendre in u = log t over [a, b] with at least `ppd` nodes per decade.
template <class F>
double logQuadrature(F&& integrand, double a, double b, int ppd)
{
    if (b <= a) return 0.0;
    const double ua = std::log(a), ub = std::log(b);
    const double decades = (ub - ua) / std::log(10.0);
    const int panels = std::max(1, static_cast<int>(std::ceil(decades * ppd / 8.0)));
    const double w = (ub - ua) / panels;
    double s = 0.0;
    for (int k = 0; k < panels; ++k) {
        const double lo = ua + k * w, hi = (k + 1 == panels) ? ub : ua + (k + 1) * w;
        // dt/t = du, so the measure is du.
        s += boost::math::quadrature::gauss<double, 8>::integrate([&](double u) { return integrand(std::exp(u)); }, lo, hi);
    }
    return s;
}

}  // namespace

void WolffParams::validate(int n) const
{
    require(n >= 2, "dimension must be at least 2");
    require(p > 1.0 && p <= n, "p must lie in (1, n]");
    require(r > 0.0 && std::isfinite(r), "Wolff radius r must be positive");
    require(pointsPerDecade >= 8, "log-grid quadrature needs at least 8 points per decade");
}

double wolffSingleAtom(int n, double p, double a, double d, double r)
{
    if (a <= 0.0 || d >= r) return 0.0;
    if (d <= 0.0) return kInfinity;
    if (p == n) return std::pow(a, 1.0 / (n - 1.0)) * std::log(r / d);
    const double g = (n - p) / (p - 1.0);
    return std::pow(a, 1.0 / (p - 1.0)) / g * (std::pow(d, -g) - std::pow(r, -g));
}

double wolffAtomLimit(int n, double p, double a)
{
    if (p == n) return std::pow(a, 1.0 / (n - 1.0));
    return std::pow(a, 1.0 / (p - 1.0)) * (p - 1.0) / (n - p);
}

WolffResult wolffPotentialDetailed(const Measure& mu, const WolffParams& params, const Point& x)
{
    const int n = static_cast<int>(x.dim());
    params.validate(n);
    require(mu.dim() == 0 || mu.dim() == x.dim(), "measure and point dimensions differ");
    const double p = params.p, r = params.r;
    const double q = 1.0 / (p - 1.0);
    const double g = (n - p) / (p - 1.0);
    const bool logCase = (p == n);

    WolffResult res;
    MassModel mm = buildModel(mu, x);
    if (mm.infinite) {
        res.value = kInfinity;
        res.pieces.push_back({0.0, r, kInfinity, "atom-at-point", kInfinity});
        return res;
    }

    // Breakpoints in (0, r).
    std::vector<double> br{0.0};
    for (const auto& [t, m] : mm.jumps)
        if (t < r) br.push_back(t);
    for (const auto& pw : mm.powers)
        if (pw.R < r) br.push_back(pw.R);
    for (const auto* rad : mm.offCenter) {
        const double d = distance(rad->center(), x), R = rad->profile().radius();
        for (double t : {d, std::abs(d - R), d + R})
            if (t > 0.0 && t < r) br.push_back(t);
        if (rad->profile().form() == RadialProfile::Form::Table)
            for (const auto& st : rad->profile().steps())
                for (double t : {d - st.first, d + st.first, st.first - d})
                    if (t > 0.0 && t < r) br.push_back(t);
    }
    br.push_back(r);
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());

    std::size_t jumpIdx = 0;
    double S = 0.0;
    const bool numericOnly = params.quadrature == WolffQuadrature::LogGrid;
    for (std::size_t k = 0; k + 1 < br.size(); ++k) {
        const double ta = br[k], tb = br[k + 1];
        while (jumpIdx < mm.jumps.size() && mm.jumps[jumpIdx].first <= ta) S += mm.jumps[jumpIdx++].second;

        std::vector<PowerTerm> active;
        double Sk = S;
        for (const auto& pw : mm.powers) {
            if (ta >= pw.R) Sk += pw.c * std::pow(pw.R, pw.m);
            else active.push_back(pw);
        }
        const bool hasOff = !mm.offCenter.empty();
        auto massAt = [&](double t) {
            double m = Sk;
            for (const auto& pw : active) m += pw.c * std::pow(t, pw.m);
            for (const auto* rad : mm.offCenter) m += rad->ballMass(x, t);
            return m;
        };
        auto integrand = [&](double t) {
            const double m = massAt(t);
            if (m <= 0.0) return 0.0;
            return std::pow(m / std::pow(t, n - p), q);
        };

        WolffPiece piece{ta, tb, Sk, "", 0.0};
        if (!hasOff && active.empty()) {
            if (Sk <= 0.0) continue;
            if (ta == 0.0) {
                res.value = kInfinity;
                res.pieces.push_back({ta, tb, Sk, "atom-at-point", kInfinity});
                return res;
            }
            if (numericOnly) {
                piece.method = "quadrature";
                piece.value = logQuadrature(integrand, ta, tb, params.pointsPerDecade);
            } else if (logCase) {
                piece.method = "log";
                piece.value = std::pow(Sk, q) * std::log(tb / ta);
            } else {
                piece.method = "constant";
                piece.value = std::pow(Sk, q) * (std::pow(ta, -g) - std::pow(tb, -g)) / g;
            }
        } else if (!hasOff && active.size() == 1 && Sk == 0.0 && !numericOnly) {
            const PowerTerm& pw = active.front();
            const double e = (pw.m - (n - p)) / (p - 1.0);
            piece.method = "power";
            if (e == 0.0) {
                piece.value = ta == 0.0 ? kInfinity : std::pow(pw.c, q) * std::log(tb / ta);
            } else if (ta == 0.0 && e < 0.0) {
                piece.value = kInfinity;
            } else {
                piece.value = std::pow(pw.c, q) * (std::pow(tb, e) - std::pow(ta, e)) / e;
            }
        } else {
            piece.method = "quadrature";
            double lo = ta;
            if (ta == 0.0) {
                if (Sk > 0.0) {
                    res.value = kInfinity;
                    res.pieces.push_back({ta, tb, Sk, "atom-at-point", kInfinity});
                    return res;
                }
                // Divergence near 0 is decided by the smallest active exponent.
                double mMin = kInfinity;
                for (const auto& pw : active) mMin = std::min(mMin, pw.m);
                if (!active.empty() && (mMin - (n - p)) / (p - 1.0) <= 0.0) {
                    res.value = kInfinity;
                    res.pieces.push_back({ta, tb, 0.0, "power", kInfinity});
                    return res;
                }
                lo = tb * 1e-12;
                if (!active.empty()) {
                    // Closed form of the leading power below the cut-off.
                    double cLead = 0.0;
                    for (const auto& pw : active)
                        if (pw.m == mMin) cLead += pw.c;
                    const double e = (mMin - (n - p)) / (p - 1.0);
                    piece.value += std::pow(cLead, q) * std::pow(lo, e) / e;
                }
            }
            piece.value += logQuadrature(integrand, lo, tb, params.pointsPerDecade);
        }
        res.value += piece.value;
        res.pieces.push_back(piece);
        if (isInfinite(piece.value)) {
            res.value = kInfinity;
            return res;
        }
    }
    return res;
}

double wolffPotential(const Measure& mu, const WolffParams& params, const Point& x)
{
    return wolffPotentialDetailed(mu, params, x).value;
}

AsymptoticReport wolffAsymptoticReport(const Measure& mu, const WolffParams& params, const Point& x0,
                                       const ApproachPath& path)
{
    const int n = static_cast<int>(x0.dim());
    params.validate(n);
    path.validate(x0.dim());
    const bool logCase = params.p == n;
    const double g = params.gamma(n);
    AsymptoticReport rep;
    for (std::size_t k = 0; k < path.radii.size(); ++k) {
        const double rk = path.radii[k];
        const double w = wolffPotential(mu, params, path.at(x0, k));
        rep.radii.push_back(rk);
        rep.potentials.push_back(w);
        rep.ratios.push_back(logCase ? w / std::log(1.0 / rk) : std::pow(rk, g) * w);
    }
    rep.fit = fitLimit(rep.radii, rep.ratios, logCase ? CorrectionScale::InverseLog : CorrectionScale::Power);
    return rep;
}

WolffDecayReport wolffDecayCheck(const RadialProfileMeasure& mu, double C, double m, const WolffParams& params,
                                 double epsilon, const ApproachPath& path)
{
    const int n = static_cast<int>(mu.center().dim());
    params.validate(n);
    path.validate(mu.center().dim());
    const double p = params.p;
    if (!(m > 0.0 && m < n - p)) fail(ErrorKind::HypothesisViolated, "growth exponent m must lie in (0, n-p)");
    require(p >= 2.0 && p < n, "decay check needs p in [2, n)");
    require(epsilon > 0.0 && C > 0.0, "epsilon and C must be positive");

    const RadialProfile& prof = mu.profile();
    // The growth bound is checked on a ladder covering the path scales and the Wolff radius.
    const double tMin = path.radii.back() * 1e-3;
    for (double t = 3.0 * params.r; t >= tMin; t *= 0.5)
        if (prof(t) > C * std::pow(t, m) * (1.0 + 1e-12))
            fail(ErrorKind::HypothesisViolated, "profile exceeds C t^m on the sampled scales");

    WolffDecayReport rep;
    rep.bound = (n - p - m + epsilon) / (p - 1.0);
    const Measure meas(mu);
    std::vector<double> lr, lv;
    for (std::size_t k = 0; k < path.radii.size(); ++k) {
        const double rk = path.radii[k];
        const double w = wolffPotential(meas, params, path.at(mu.center(), k));
        rep.radii.push_back(rk);
        rep.values.push_back(w);
        rep.smallestConstant = std::max(rep.smallestConstant, w * std::pow(rk, rep.bound));
        if (w > 0.0 && std::isfinite(w)) {
            lr.push_back(std::log(rk));
            lv.push_back(std::log(w));
        }
    }
    // The bound is asymptotic: fit the trailing half, where the cutoff at r no longer bends the curve.
    const std::size_t skip = lr.size() / 2;
    const std::vector<double> tr(lr.begin() + static_cast<std::ptrdiff_t>(skip), lr.end());
    const std::vector<double> tv(lv.begin() + static_cast<std::ptrdiff_t>(skip), lv.end());
    rep.slope = tr.size() >= 2 ? -linearFit(tr, tv).first : 0.0;
    rep.withinBound = std::isfinite(rep.smallestConstant) && rep.slope <= rep.bound;
    return rep;
}

}  // namespace potkit
