#include "potkit/acceptance.hpp"

#include "potkit/capacity.hpp"
#include "potkit/cones.hpp"
#include "potkit/plaplace.hpp"
#include "potkit/riesz.hpp"
#include "potkit/thinness.hpp"
#include "potkit/witness.hpp"
#include "potkit/wolff.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

namespace potkit {

namespace {

std::string fmt(double x)
{
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

CriterionResult criterion(int id, std::string title, double budget)
{
    CriterionResult r;
    r.id = id;
    r.title = std::move(title);
    r.budget = budget;
    return r;
}

std::vector<std::vector<double>> asymptoticRows(const AsymptoticReport& rep)
{
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < rep.radii.size(); ++k) rows.push_back({rep.radii[k], rep.ratios[k], rep.potentials[k]});
    return rows;
}

CriterionResult wolffAtom(Artifacts& out)
{
    CriterionResult r = criterion(1, "Wolff atom asymptotics, p < n", 1.0);
    const int n = 3;
    const double p = 2.5, a = 2.0;
    const Point x0(3);
    const Measure mu(AtomicMeasure({Atom{x0, a}}));
    const WolffParams params{p, 1.0};
    const auto rep = wolffAsymptoticReport(mu, params, x0, ApproachPath::geometric(Point{1.0, 0.0, 0.0}, 0.5, 0.5, 30));
    const double predicted = (p - 1.0) / (n - p) * std::pow(a, 1.0 / (p - 1.0));
    const double rel = std::abs(rep.fit.limit - predicted) / predicted;

    // The log-grid quadrature must agree with the exact piecewise integral.
    WolffParams quad = params;
    quad.quadrature = WolffQuadrature::LogGrid;
    quad.pointsPerDecade = 256;
    double quadErr = 0.0;
    for (double d : {0.5, 0.1, 0.01, 1e-4}) {
        const Point x{d, 0.0, 0.0};
        const double e = wolffPotential(mu, params, x), q = wolffPotential(mu, quad, x);
        quadErr = std::max(quadErr, std::abs(q - e) / std::abs(e));
    }
    r.pass = rel <= 1e-3 && quadErr <= 1e-6;
    r.metrics = {{"limit", jnum(rep.fit.limit)}, {"predicted", jnum(predicted)}, {"relError", jnum(rel)}, {"quadratureRelError", jnum(quadErr)}};
    r.summary = "limit " + fmt(rep.fit.limit) + " vs " + fmt(predicted) + ", rel " + fmt(rel) + ", quadrature " + fmt(quadErr);
    out.csv("c01-wolff-atom.csv", {"radius", "ratio", "potential"}, asymptoticRows(rep));
    return r;
}

CriterionResult wolffCritical(Artifacts& out)
{
    CriterionResult r = criterion(2, "Wolff atom asymptotics, p = n", 1.0);
    const double a = 2.0;
    const Point x0(3);
    const Measure mu(AtomicMeasure({Atom{x0, a}}));
    const auto rep = wolffAsymptoticReport(mu, WolffParams{3.0, 1.0}, x0, ApproachPath::geometric(Point{0.0, 1.0, 0.0}, 0.5, 0.5, 60));
    const double predicted = std::sqrt(a);
    const double rel = std::abs(rep.fit.limit - predicted) / predicted;
    r.pass = rel <= 5e-3;
    r.metrics = {{"limit", jnum(rep.fit.limit)}, {"predicted", jnum(predicted)}, {"relError", jnum(rel)}, {"lastRatio", jnum(rep.ratios.back())}};
    r.summary = "limit " + fmt(rep.fit.limit) + " vs " + fmt(predicted) + ", rel " + fmt(rel);
    out.csv("c02-wolff-critical.csv", {"radius", "ratio", "potential"}, asymptoticRows(rep));
    return r;
}

CriterionResult rieszAtom(Artifacts& out)
{
    CriterionResult r = criterion(3, "Riesz asymptotics, atom plus uniform density", 5.0);
    const Point x0(3);
    const Measure mu(RadialProfileMeasure(x0, RadialProfile::atomPlusPower(2.0, 4.0 * M_PI / 3.0, 3.0, 1.0)));
    const auto rep = rieszAsymptoticReport(mu, RieszParams{2.0, 0.0}, x0, ApproachPath::geometric(Point{0.0, 0.0, 1.0}, 0.5, 0.5, 20));
    const double rel = std::abs(rep.fit.limit - 2.0) / 2.0;
    r.pass = rel <= 1e-2 && rep.radii.back() <= std::ldexp(1.0, -20) * (1.0 + 1e-12);
    r.metrics = {{"limit", jnum(rep.fit.limit)}, {"atomMass", 2.0}, {"relError", jnum(rel)}, {"depth", jnum(rep.radii.back())}};
    r.summary = "limit " + fmt(rep.fit.limit) + " vs 2, rel " + fmt(rel);
    out.csv("c03-riesz-atom.csv", {"radius", "ratio", "potential"}, asymptoticRows(rep));
    return r;
}

CriterionResult capacityScaling(Artifacts& out)
{
    CriterionResult r = criterion(4, "Riesz capacity scaling", 120.0);
    const double alpha = 1.5, h = 1.0 / 64;
    const Point c(3);
    std::vector<std::vector<double>> rows;
    std::vector<double> lx, ly;
    for (double lambda : {1.0, 0.5, 0.25}) {
        const auto est = rieszCapacity(ParametricSet::ball(c, 0.5 * lambda), Region::ball(c, lambda), alpha, h);
        rows.push_back({lambda, est.value, est.lower, est.upper, est.h});
        lx.push_back(std::log(lambda));
        ly.push_back(std::log(est.value));
    }
    const double slope = linearFit(lx, ly).first;
    const double rel = std::abs(slope - 1.5) / 1.5;
    r.pass = rel <= 0.1;
    r.metrics = {{"slope", jnum(slope)}, {"predicted", 1.5}, {"relError", jnum(rel)}};
    r.summary = "slope " + fmt(slope) + " vs 1.5, rel " + fmt(rel);
    out.csv("c04-capacity-scaling.csv", {"lambda", "value", "lower", "upper", "h"}, rows);
    return r;
}

CriterionResult condenser(Artifacts& out)
{
    CriterionResult r = criterion(5, "p-capacity condenser against the radial oracle", 300.0);
    const double p = 2.5, h = 1.0 / 96;
    const Point c(3);
    const auto est = pCapacity(ParametricSet::ball(c, 0.25), Region::ball(c, 1.0), p, h);
    const double exact = radialCondenserCapacity(3, p, 0.25, 1.0);
    const double rel = std::abs(est.value - exact) / exact;
    r.pass = rel <= 0.05;
    r.metrics = {{"value", jnum(est.value)}, {"oracle", jnum(exact)}, {"relError", jnum(rel)}, {"h", jnum(est.h)}, {"unknowns", est.unknowns}};
    r.summary = "grid " + fmt(est.value) + " vs " + fmt(exact) + ", rel " + fmt(rel);
    out.csv("c05-condenser.csv", {"h", "grid", "oracle"}, {{est.h, est.value, exact}});
    return r;
}

struct EnvelopeCase {
    std::string label;
    std::vector<Atom> atoms;
    bool mirror;
};

CriterionResult envelope(Artifacts& out)
{
    CriterionResult r = criterion(6, "Wolff envelope constants", 600.0);
    const double p = 2.5, h = 1.0 / 64;
    const Point c(3);
    std::vector<EnvelopeCase> cases;
    for (double a : {0.25, 1.0, 4.0}) cases.push_back({"atom " + fmt(a), {Atom{c, a}}, true});
    cases.push_back({"two atoms", {Atom{Point{0.0, 0.0, 0.25}, 1.0}, Atom{Point{0.0, 0.0, -0.25}, 0.5}}, false});
    cases.push_back({"two atoms wide", {Atom{Point{0.0, 0.0, 0.5}, 2.0}, Atom{Point{0.0, 0.0, -0.125}, 0.25}}, false});
    const std::vector<Point> xs{Point{0.0, 0.0, 0.1}, Point{0.1, 0.0, 0.05}, Point{0.2, 0.0, 0.3}, Point{0.0, 0.3, -0.4},
                                Point{0.3, 0.0, 0.0}, Point{0.15, 0.15, -0.2}, Point{0.0, 0.05, 0.25}};
    const std::vector<double> rs{0.0625, 0.125, 0.25};
    double c1 = kInfinity, c2 = 0.0;
    bool finite = true;
    std::vector<std::vector<double>> rows;
    Json perCase = Json::array();
    for (std::size_t ci = 0; ci < cases.size(); ++ci) {
        const auto& ec = cases[ci];
        PDirichletOptions opt;
        opt.embedding = LatticeEmbedding::axisymmetric(c, 2);
        EvaluationGrid grid(Box(Point{ec.mirror ? 0.0 : -1.0, 0.0}, Point{1.0, 1.0}), h);
        if (ec.mirror) opt.mirrorLow = {true, false};
        const Measure mu{AtomicMeasure(ec.atoms)};
        const auto sol = solvePDirichlet(grid, mu, p, [](const Point&) { return 0.0; }, opt);
        double lo = kInfinity, hi = 0.0;
        for (const auto& x : xs) {
            double nearest = kInfinity;
            for (const auto& a : ec.atoms) nearest = std::min(nearest, distance(a.location, x));
            if (nearest < 4.0 * h) continue;
            for (double rad : rs) {
                // The envelope is stated for B(x, 2r) inside the domain.
                const double room = std::min({1.0 - std::abs(x[2]), 1.0 - std::hypot(x[0], x[1])});
                if (2.0 * rad > room) continue;
                const auto s = envelopeSample(sol, mu, p, x, rad);
                if (!std::isfinite(s.u) || !std::isfinite(s.upperRatio) || s.u <= 0.0) finite = false;
                if (s.hasLower) lo = std::min(lo, s.lowerRatio);
                hi = std::max(hi, s.upperRatio);
                rows.push_back({static_cast<double>(ci), x[0], x[1], x[2], rad, s.u, s.wolffR, s.wolff2R, s.infU, s.lowerRatio, s.upperRatio});
            }
        }
        perCase.push_back({{"case", ec.label}, {"c1", jnum(lo)}, {"c2", jnum(hi)}});
        c1 = std::min(c1, lo);
        c2 = std::max(c2, hi);
    }
    r.pass = finite && c1 >= 0.05 && c2 <= 50.0;
    r.metrics = {{"c1", jnum(c1)}, {"c2", jnum(c2)}, {"cases", perCase}, {"samples", rows.size()}};
    r.summary = "c1 " + fmt(c1) + " c2 " + fmt(c2) + " over " + std::to_string(rows.size()) + " samples";
    out.csv("c06-envelope.csv", {"case", "x", "y", "z", "r", "u", "wolff_r", "wolff_2r", "inf_u", "lower_ratio", "upper_ratio"}, rows);
    return r;
}

CriterionResult normalization(Artifacts& out)
{
    CriterionResult r = criterion(7, "fundamental solution normalization", 600.0);
    const std::vector<std::pair<int, double>> cases{{3, 2.0}, {3, 2.5}, {4, 3.0}};
    const double h = 1.0 / 64;
    bool ok = true;
    Json per = Json::array();
    std::vector<std::vector<double>> rows, ratioRows;
    for (const auto& [n, p] : cases) {
        const double flux = fluxNormalization(p, n, 0.5, 1.0 / 128);
        const Point c(static_cast<std::size_t>(n));
        const FundamentalSolution G = FundamentalSolution::unitMass(c, p);
        PDirichletOptions opt;
        opt.embedding = LatticeEmbedding::axisymmetric(c, static_cast<std::size_t>(n - 1));
        opt.mirrorLow = {true, false};
        const Measure mu(AtomicMeasure({Atom{c, 1.0}}));
        const auto sol = solvePDirichlet(EvaluationGrid(Box(Point{0.0, 0.0}, Point{1.0, 1.0}), h), mu, p, [&](const Point& x) { return G(x); }, opt);
        Point dir(static_cast<std::size_t>(n));
        dir[0] = 1.0;
        const auto rep = superAsymptoticReport([&](const Point& x) { return sol.valueAt(x); }, n, p, G.m, c,
                                               ApproachPath::geometric(dir, 0.25, 0.95, 200), 4.0 * h, 0.25);
        const bool pass = std::abs(flux + 1.0) <= 0.02 && rep.maxRelDeviation <= 0.05;
        ok = ok && pass;
        per.push_back({{"n", n}, {"p", p}, {"m", jnum(G.m)}, {"flux", jnum(flux)}, {"maxRelDeviation", jnum(rep.maxRelDeviation)}, {"c0", jnum(rep.c0)}});
        rows.push_back({static_cast<double>(n), p, G.m, flux, rep.maxRelDeviation});
        for (std::size_t k = 0; k < rep.asymptotic.radii.size(); ++k)
            ratioRows.push_back({static_cast<double>(n), p, rep.asymptotic.radii[k], rep.asymptotic.ratios[k] / G.m});
        r.summary += (r.summary.empty() ? "" : "; ") + std::string("(") + std::to_string(n) + "," + fmt(p) + ") flux " + fmt(flux) +
                     " dev " + fmt(rep.maxRelDeviation);
    }
    r.pass = ok;
    r.metrics = {{"cases", per}};
    out.csv("c07-normalization.csv", {"n", "p", "m", "flux", "max_rel_deviation"}, rows);
    out.csv("c07-ratios.csv", {"n", "p", "radius", "ratio_over_m"}, ratioRows);
    return r;
}

CriterionResult thinness(Artifacts& out, const AcceptanceOptions& opts)
{
    CriterionResult r = criterion(8, "thinness flip and witness blow-up", 600.0);
    const int n = 3;
    const double p = 2.5;
    const Point x0(3);
    WienerOptions wo;
    wo.annulus.hRel = 1.0 / 64;
    wo.jobs = opts.jobs;
    const int I = 10;
    Json per = Json::array();
    std::vector<std::vector<double>> rows;
    std::vector<Verdict> verdicts;
    for (double sc : {0.5, 2.0}) {
        const double s = sc / (n - p);
        const auto series = wienerTerms(ballFamily(x0, s, 2, I + 1), x0, p, I, WienerWeighting::CapP, wo);
        const auto rep = classifyThin(series.values());
        verdicts.push_back(rep.verdict);
        per.push_back({{"s", jnum(s)}, {"verdict", verdictName(rep.verdict)}, {"partialSum", jnum(rep.partialSum)},
                       {"tailKind", rep.tail.kind}, {"tailRate", jnum(rep.tail.rate)}});
        for (const auto& t : series.terms) rows.push_back({s, static_cast<double>(t.i), t.term, t.raw});
        r.summary += "s=" + fmt(s) + " " + verdictName(rep.verdict) + "; ";
    }
    WitnessOptions w;
    w.wiener = wo;
    w.seed = opts.seed;
    const auto wit = thinWitnessBlowup(2.0 / (n - p), p, w);
    std::vector<std::vector<double>> atomRows, rayRows;
    for (const auto& a : wit.atoms) atomRows.push_back({static_cast<double>(a.i), a.mass, a.centerScaled, a.claimedBound, a.probeScaled});
    for (std::size_t k = 0; k < wit.rayRadii.size(); ++k) rayRows.push_back({wit.rayRadii[k], wit.rayScaled[k]});
    const bool flip = verdicts[0] == Verdict::NotThin && verdicts[1] == Verdict::Thin;
    r.pass = flip && wit.centersDiverge && wit.ray.has_value() && wit.rayDecays;
    r.metrics = {{"families", per},
                 {"witness",
                  {{"verdict", verdictName(wit.thinness.verdict)},
                   {"totalMass", jnum(wit.totalMass)},
                   {"centersDiverge", wit.centersDiverge},
                   {"ray", wit.ray ? jvec({wit.ray->coords().begin(), wit.ray->coords().end()}) : Json(nullptr)},
                   {"rayDecays", wit.rayDecays},
                   {"rayFirst", wit.rayScaled.empty() ? Json(nullptr) : jnum(wit.rayScaled.front())},
                   {"rayLast", wit.rayScaled.empty() ? Json(nullptr) : jnum(wit.rayScaled.back())}}}};
    r.summary += "witness centers " + std::string(wit.centersDiverge ? "diverge" : "bounded") + ", ray " +
                 (wit.rayDecays ? "decays" : "does not decay");
    out.csv("c08-wiener.csv", {"s", "i", "term", "raw"}, rows);
    out.csv("c08-witness-atoms.csv", {"i", "mass", "center_scaled", "claimed_bound", "probe_scaled"}, atomRows);
    out.csv("c08-witness-ray.csv", {"t", "scaled_wolff"}, rayRows);
    return r;
}

CriterionResult cones(Artifacts& out, const AcceptanceOptions& opts)
{
    CriterionResult r = criterion(9, "cone inclusions and p index", 60.0);
    InclusionOptions io;
    io.samples = 100000;
    io.seed = opts.seed;
    std::size_t totalCounter = 0, inclusions = 0;
    bool violationFound = true;
    std::vector<std::vector<double>> rows;
    for (std::size_t n : {4u, 6u}) {
        const double nn = static_cast<double>(n);
        std::vector<std::pair<ConeSpec, ConeSpec>> pairs;
        const std::vector<double> ps{2.0, 2.5, 3.0, nn - 0.5, nn};
        for (double p : ps)
            for (double q : ps)
                if (q >= 2.0 && q < p) pairs.emplace_back(ConeSpec::A(p), ConeSpec::A(q));
        for (int s = 1; 2 * s <= static_cast<int>(n); ++s)
            for (int rr = s; 2 * rr <= static_cast<int>(n); ++rr) pairs.emplace_back(ConeSpec::R(s), ConeSpec::R(rr));
        for (double p : ps)
            for (int rr = 1; 2 * rr <= static_cast<int>(n); ++rr)
                if (rr >= (nn - p) / 2.0 + 1.0 - 1e-12) pairs.emplace_back(ConeSpec::A(p), ConeSpec::R(rr));
        for (const auto& [inner, outer] : pairs) {
            const auto rep = inclusionCheck(n, inner, outer, io);
            totalCounter += rep.counterexampleCount;
            ++inclusions;
            rows.push_back({nn, static_cast<double>(rep.tested), static_cast<double>(rep.counterexampleCount)});
        }
        // Below the admissible range the search must find a counterexample.
        InclusionOptions quick = io;
        quick.samples = 1000;
        const double p = 2.5;
        const int rBad = static_cast<int>(std::ceil((nn - p) / 2.0 + 1.0 - 1e-12)) - 1;
        if (rBad >= 1 && inclusionCheck(n, ConeSpec::A(p), ConeSpec::R(rBad), quick).holds()) violationFound = false;
    }
    double pErr = 0.0;
    for (int n = 2; n <= 12; ++n)
        for (int k = 1; 2 * k <= n; ++k) pErr = std::max(pErr, std::abs(pGamma(static_cast<std::size_t>(n), ConeSpec::Gamma(k)) - pGammaK(n, k)));
    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> g;
    std::size_t disagree = 0;
    for (std::size_t n : {4u, 6u})
        for (int t = 0; t < 10000; ++t) {
            Eigenvalues v(n);
            for (auto& x : v) x = g(rng);
            if (memberA(v, 2.0) != memberR(v, static_cast<int>(n / 2))) ++disagree;
        }
    double idErr = 0.0;
    for (int n = 3; n <= 10; ++n)
        for (int k = 1; 2 * k < n; ++k) {
            const double p = pGamma(static_cast<std::size_t>(n), ConeSpec::Gamma(k));
            idErr = std::max(idErr, std::abs((2.0 - static_cast<double>(n) / k) + (n - p) / (p - 1.0)));
        }
    r.pass = totalCounter == 0 && violationFound && pErr <= 1e-9 && disagree == 0 && idErr <= 1e-12;
    r.metrics = {{"inclusions", inclusions},           {"counterexamples", totalCounter}, {"violationFound", violationFound},
                 {"pGammaMaxError", jnum(pErr)},      {"a2r_disagreements", disagree},  {"exponentIdentityError", jnum(idErr)}};
    r.summary = std::to_string(inclusions) + " inclusions, " + std::to_string(totalCounter) + " counterexamples; p index err " + fmt(pErr) +
                "; identity err " + fmt(idErr);
    out.csv("c09-inclusions.csv", {"n", "tested", "counterexamples"}, rows);
    return r;
}

CriterionResult comparison(Artifacts& out, const AcceptanceOptions& opts)
{
    CriterionResult r = criterion(10, "discrete comparison principle", 300.0);
    const EvaluationGrid grid(Box(Point{0.0, 0.0}, Point{1.0, 1.0}), 1.0 / 64);
    const Measure none;
    std::mt19937_64 rng(opts.seed + 10);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = -kInfinity;
    std::vector<std::vector<double>> rows;
    const std::size_t nodes = grid.nodeCount();
    for (double p : {1.5, 2.0, 3.0})
        for (int pair = 0; pair < 100; ++pair) {
            // Smooth random data plus a nonnegative random lift.
            const double a1 = u(rng), a2 = u(rng), f1 = 1.0 + 4.0 * u(rng), ph = 6.283 * u(rng);
            const double b1 = 0.5 * u(rng), f2 = 1.0 + 4.0 * u(rng), ph2 = 6.283 * u(rng);
            auto g1 = [=](const Point& x) { return a1 * std::sin(f1 * (x[0] + 2.0 * x[1]) + ph) + a2 * x[0] * x[1]; };
            auto g2 = [=](const Point& x) { return g1(x) + b1 * (1.0 + std::sin(f2 * (x[1] - x[0]) + ph2)); };
            const auto s1 = solvePDirichlet(grid, none, p, g1);
            const auto s2 = solvePDirichlet(grid, none, p, g2);
            double viol = -kInfinity;
            for (std::size_t k = 0; k < nodes; ++k) viol = std::max(viol, s1.u[k] - s2.u[k]);
            worst = std::max(worst, viol);
            rows.push_back({p, static_cast<double>(pair), viol});
        }
    r.pass = worst <= 1e-10;
    r.metrics = {{"pairs", rows.size()}, {"maxViolation", jnum(worst)}};
    r.summary = std::to_string(rows.size()) + " pairs, max(u1 - u2) " + fmt(worst);
    out.csv("c10-comparison.csv", {"p", "pair", "max_u1_minus_u2"}, rows);
    return r;
}

}  // namespace

std::vector<CriterionResult> runAcceptance(const AcceptanceOptions& options, Artifacts& out,
                                           const std::function<void(const CriterionResult&)>& progress)
{
    std::vector<CriterionResult> results;
    const std::vector<std::function<CriterionResult()>> all{
        [&] { return wolffAtom(out); },       [&] { return wolffCritical(out); },  [&] { return rieszAtom(out); },
        [&] { return capacityScaling(out); }, [&] { return condenser(out); },      [&] { return envelope(out); },
        [&] { return normalization(out); },   [&] { return thinness(out, options); }, [&] { return cones(out, options); },
        [&] { return comparison(out, options); }};
    out.report["seed"] = options.seed;
    for (std::size_t i = 0; i < all.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!options.only.empty() && !options.only.count(id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        CriterionResult r;
        try {
            r = all[i]();
        } catch (const Error& e) {
            r.id = id;
            r.title = "criterion " + std::to_string(id);
            r.pass = false;
            r.summary = std::string("error: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.report["criteria"][std::to_string(id)] = {{"title", r.title}, {"pass", r.pass}, {"summary", r.summary}, {"metrics", r.metrics}};
        if (progress) progress(r);
        results.push_back(std::move(r));
    }
    return results;
}

CriterionResult determinismCriterion(const Artifacts& first, const Artifacts& second)
{
    CriterionResult r = criterion(11, "determinism of verify-all", 0.0);
    const std::string a = first.report.dump(2), b = second.report.dump(2);
    std::size_t differing = a == b ? 0 : 1;
    if (first.files().size() != second.files().size()) ++differing;
    for (const auto& [name, content] : first.files()) {
        auto it = second.files().find(name);
        if (it == second.files().end() || it->second != content) ++differing;
    }
    r.pass = differing == 0;
    r.metrics = {{"files", first.files().size() + 1}, {"differing", differing}};
    r.summary = std::to_string(first.files().size() + 1) + " artifacts compared, " + std::to_string(differing) + " differ";
    return r;
}

std::string criterionLine(const CriterionResult& r)
{
    std::ostringstream os;
    os << (r.pass ? "PASS" : "FAIL") << "  " << (r.id < 10 ? " " : "") << r.id << "  " << r.title << "  (" << r.summary << ")";
    return os.str();
}

}  // namespace potkit
