#include "potkit/tasks.hpp"

#include "potkit/density.hpp"
#include "potkit/plaplace.hpp"
#include "potkit/riesz.hpp"
#include "potkit/thinness.hpp"
#include "potkit/wolff.hpp"

#include <algorithm>
#include <cmath>

namespace potkit {

namespace {

struct TaskEnv {
    const Scene& scene;
    const RunContext& ctx;
    Artifacts& out;
    Json result = Json::object();
    bool checksPassed = true;
    std::string name;

    std::size_t n() const { return scene.n; }
    double tol(const Node& t, double fallback) const
    {
        if (ctx.tol) return *ctx.tol;
        if (t.has("tol")) return t.at("tol").positive();
        return scene.tol > 0.0 ? scene.tol : fallback;
    }
    std::uint64_t seed(const Node& t) const
    {
        if (ctx.seed) return *ctx.seed;
        return scene.seedFor(t);
    }
    /// Records a named check; a failing check turns the run's exit status into 2.
    void check(const std::string& what, bool ok, double value, double target)
    {
        Json c = {{"name", what}, {"pass", ok}, {"value", jnum(value)}, {"target", jnum(target)}};
        result["checks"].push_back(c);
        if (!ok) checksPassed = false;
    }
};

ApproachPath pathOf(const Node& p, std::size_t n)
{
    ApproachPath path;
    path.direction = p.at("direction").point(n);
    if (p.has("radii")) {
        path.radii = p.at("radii").numbers();
    } else {
        path = ApproachPath::geometric(path.direction, p.at("r0").positive(), p.at("q").positive(), p.at("count").integer());
    }
    try {
        path.validate(n);
    } catch (const Error& e) {
        p.error(e.what());
    }
    return path;
}

void reportAsymptotic(TaskEnv& env, const AsymptoticReport& rep, const std::string& ratioName)
{
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < rep.radii.size(); ++k) rows.push_back({rep.radii[k], rep.ratios[k], rep.potentials[k]});
    env.out.csv(env.name + ".csv", {"radius", ratioName, "potential"}, rows);
    env.result["limit"] = jnum(rep.fit.limit);
    env.result["correctionExponent"] = jnum(rep.fit.exponent);
    env.result["tail"] = jnum(rep.fit.tail);
    if (rep.hasAlt) env.result["altLimit"] = jnum(rep.altFit.limit);
}

void expectLimit(TaskEnv& env, const Node& t, double value, double predicted, double defaultRel)
{
    if (!t.has("expect") && !std::isfinite(predicted)) return;
    double target = predicted;
    if (t.has("expect")) target = t.at("expect").at("limit").number();
    const double rel = t.has("expect") ? t.at("expect").number("rel", env.tol(t, defaultRel)) : env.tol(t, defaultRel);
    env.check("limit", std::abs(value - target) <= rel * std::abs(target), value, target);
}

void wolffTask(TaskEnv& env, const Node& t)
{
    const Measure mu = env.scene.measure(t.at("measure"));
    WolffParams params{t.at("p").number(), t.number("r", 1.0)};
    const std::string quad = t.string("quadrature", "exact");
    if (quad == "loggrid") params.quadrature = WolffQuadrature::LogGrid;
    else if (quad != "exact") t.at("quadrature").error("quadrature must be exact or loggrid");
    const Point x0 = t.at("x0").point(env.n());
    const auto rep = wolffAsymptoticReport(mu, params, x0, pathOf(t.at("path"), env.n()));
    reportAsymptotic(env, rep, "ratio");
    const double a = mu.pointMass(x0);
    const double predicted = a > 0.0 ? wolffAtomLimit(static_cast<int>(env.n()), params.p, a) : 0.0;
    env.result["predicted"] = jnum(predicted);
    expectLimit(env, t, rep.fit.limit, predicted, 1e-3);
}

void rieszTask(TaskEnv& env, const Node& t)
{
    const Measure mu = env.scene.measure(t.at("measure"));
    RieszParams params{t.at("alpha").number(), t.number("diameter", 0.0)};
    const Point x0 = t.at("x0").point(env.n());
    const auto rep = rieszAsymptoticReport(mu, params, x0, pathOf(t.at("path"), env.n()));
    reportAsymptotic(env, rep, "ratio");
    const double predicted = mu.pointMass(x0);
    env.result["predicted"] = jnum(predicted);
    if (t.has("expect") || predicted > 0.0) expectLimit(env, t, rep.fit.limit, predicted, 1e-2);
}

void capacityTask(TaskEnv& env, const Node& t)
{
    const ParametricSet E = env.scene.set(t.at("set"));
    const Region omega = env.scene.region(t.at("omega"));
    const std::string kind = t.string("kind", "riesz");
    if (kind != "riesz" && kind != "p") t.at("kind").error("kind must be riesz or p");
    const double param = t.at(kind == "riesz" ? "alpha" : "p").number();
    const double h = t.at("h").positive();
    std::vector<double> scales{1.0};
    if (t.has("scales")) scales = t.at("scales").numbers();
    std::vector<std::vector<double>> rows;
    std::vector<double> lx, ly;
    for (double lambda : scales) {
        if (!(lambda > 0.0)) t.at("scales").error("scales must be positive");
        const CapacityEstimate c = kind == "riesz" ? rieszCapacity(E.scaled(lambda), omega.scaled(lambda), param, h * lambda)
                                                   : pCapacity(E.scaled(lambda), omega.scaled(lambda), param, h * lambda);
        rows.push_back({lambda, c.value, c.lower, c.upper, c.h});
        lx.push_back(std::log(lambda));
        ly.push_back(std::log(c.value));
        if (lambda == scales.front()) {
            env.result["value"] = jnum(c.value);
            env.result["lower"] = jnum(c.lower);
            env.result["upper"] = jnum(c.upper);
            env.result["method"] = c.method;
            env.result["certificate"] = c.hasCertificate;
        }
    }
    env.out.csv(env.name + ".csv", {"lambda", "value", "lower", "upper", "h"}, rows);
    if (scales.size() >= 2) {
        const double slope = linearFit(lx, ly).first;
        env.result["slope"] = jnum(slope);
        const double target = static_cast<double>(env.n()) - param;
        env.result["predictedSlope"] = jnum(target);
        const double rel = t.has("expect") ? t.at("expect").number("rel", 0.1) : env.tol(t, 0.1);
        env.check("scaling slope", std::abs(slope - target) <= rel * std::abs(target), slope, target);
    }
    if (t.has("expect") && t.at("expect").has("value")) {
        const double target = t.at("expect").at("value").number();
        const double rel = t.at("expect").number("rel", 0.05);
        const double v = rows.front()[1];
        env.check("value", std::abs(v - target) <= rel * std::abs(target), v, target);
    }
}

void thinTask(TaskEnv& env, const Node& t)
{
    const ParametricSet E = env.scene.set(t.at("set"));
    const Point x0 = t.at("x0").point(env.n());
    const std::string w = t.string("weighting", "p");
    WienerWeighting weighting = WienerWeighting::CapP;
    if (w == "riesz") weighting = WienerWeighting::RieszAlpha;
    else if (w == "n") weighting = WienerWeighting::CapN;
    else if (w != "p") t.at("weighting").error("weighting must be riesz, p or n");
    WienerOptions opt;
    opt.annulus.delta = t.number("delta", 1.0);
    opt.annulus.hRel = t.number("hRel", 1.0 / 32.0);
    opt.jobs = env.ctx.jobs;
    const auto series = wienerTerms(E, x0, t.at("param").number(), t.integer("annuli", 10), weighting, opt);
    const auto rep = classifyThin(series.values());
    std::vector<std::vector<double>> rows;
    for (const auto& term : series.terms)
        rows.push_back({static_cast<double>(term.i), term.term, term.raw, term.numerator, term.denominator});
    env.out.csv(env.name + ".csv", {"i", "term", "raw", "numerator", "denominator"}, rows);
    env.result["verdict"] = verdictName(rep.verdict);
    env.result["evidence"] = rep.evidence;
    env.result["partialSum"] = jnum(rep.partialSum);
    env.result["tail"] = {{"kind", rep.tail.kind}, {"rate", jnum(rep.tail.rate)}, {"bound", jnum(rep.tail.bound)}};
    env.result["floor"] = jnum(series.floor);
    if (t.has("escaping")) {
        const Node e = t.at("escaping");
        const auto ray = escapingRay(E, x0, opt.annulus.delta, static_cast<std::size_t>(e.integer("directions", 4096)), env.seed(t));
        env.result["escapingRay"] = ray ? jvec({ray->coords().begin(), ray->coords().end()}) : Json(nullptr);
    }
    if (t.has("expect")) {
        const std::string want = t.at("expect").at("verdict").string();
        env.check("verdict " + want, want == verdictName(rep.verdict), 0.0, 0.0);
    }
}

std::function<double(const Point&)> boundaryOf(const Scene& scene, const Node& b, const Measure& mu, double p)
{
    const std::string kind = b.tag({"fundamental", "constant"});
    if (kind == "constant") {
        const double c = b.at("constant").number();
        return [c](const Point&) { return c; };
    }
    // Sum of unit-mass fundamental solutions weighted by the atoms of mu.
    std::vector<std::pair<FundamentalSolution, double>> terms;
    for (const auto& comp : mu.components()) {
        const auto* a = std::get_if<AtomicMeasure>(&comp);
        if (!a) b.error("fundamental boundary data needs an atomic measure");
        for (const auto& atom : a->atoms()) terms.emplace_back(FundamentalSolution::unitMass(atom.location, p), atom.mass);
    }
    (void)scene;
    return [terms](const Point& x) {
        double s = 0.0;
        for (const auto& [G, m] : terms) s += std::pow(m, 1.0 / (G.p - 1.0)) * G(x);
        return s;
    };
}

void plaplaceTask(TaskEnv& env, const Node& t)
{
    const std::string mode = t.string("mode", "solve");
    if (mode == "flux") {
        const Node cases = t.at("cases");
        const double rho = t.number("rho", 0.5), h = t.number("h", 1.0 / 128);
        std::vector<std::vector<double>> rows;
        const double rel = env.tol(t, 0.02);
        for (std::size_t i = 0; i < cases.size(); ++i) {
            const auto np = cases.at(i).numbers();
            if (np.size() != 2) cases.at(i).error("expected [n, p]");
            const double f = fluxNormalization(np[1], static_cast<int>(np[0]), rho, h);
            rows.push_back({np[0], np[1], FundamentalSolution::unitMassCoefficient(static_cast<int>(np[0]), np[1]), f});
            env.check("flux n=" + formatNumber(np[0]) + " p=" + formatNumber(np[1]), std::abs(f + 1.0) <= rel, f, -1.0);
        }
        env.out.csv(env.name + ".csv", {"n", "p", "m", "flux"}, rows);
        return;
    }
    if (mode != "solve") t.at("mode").error("mode must be solve or flux");
    const double p = t.at("p").number();
    const Measure mu = env.scene.measure(t.at("measure"));
    const Node g = t.at("grid");
    PDirichletOptions opt;
    std::size_t latticeDim = env.n();
    if (t.has("axisymmetric")) {
        const Node a = t.at("axisymmetric");
        opt.embedding = LatticeEmbedding::axisymmetric(a.at("center").point(env.n()), static_cast<std::size_t>(a.integer("axis", static_cast<int>(env.n()) - 1)));
        latticeDim = 2;
    }
    if (t.has("mirror")) {
        const Node m = t.at("mirror");
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (!m.at(i).json().is_boolean()) m.at(i).error("expected true or false");
            opt.mirrorLow.push_back(m.at(i).json().get<bool>());
        }
    }
    const EvaluationGrid grid(Box(g.at("lo").point(latticeDim), g.at("hi").point(latticeDim)), g.at("h").positive());
    const auto sol = solvePDirichlet(grid, mu, p, boundaryOf(env.scene, t.at("boundary"), mu, p), opt);
    env.result["energy"] = jnum(sol.energy);
    env.result["newtonIterations"] = sol.iterations;
    env.result["residual"] = jnum(sol.residual);
    if (t.has("envelope")) {
        const Node e = t.at("envelope");
        std::vector<Point> xs;
        for (std::size_t i = 0; i < e.at("points").size(); ++i) xs.push_back(e.at("points").at(i).point(env.n()));
        const auto rep = envelopeCheck(sol, mu, p, xs, e.at("radii").numbers());
        std::vector<std::vector<double>> rows;
        for (std::size_t k = 0; k < rep.samples.size(); ++k) {
            const auto& s = rep.samples[k];
            rows.push_back({static_cast<double>(k), s.r, s.u, s.wolffR, s.wolff2R, s.infU, s.lowerRatio, s.upperRatio});
        }
        env.out.csv(env.name + "-envelope.csv", {"sample", "r", "u", "wolff_r", "wolff_2r", "inf_u", "lower_ratio", "upper_ratio"}, rows);
        env.result["c1"] = jnum(rep.c1);
        env.result["c2"] = jnum(rep.c2);
        // With no sample inside the support radius the lower bound is untested, which counts as a failed check.
        const bool tested = std::isfinite(rep.c1);
        env.check("c1 >= 0.05", tested && rep.c1 >= 0.05, rep.c1, 0.05);
        env.check("c2 <= 50", rep.c2 <= 50.0, rep.c2, 50.0);
    }
    if (t.has("asymptotic")) {
        const Node a = t.at("asymptotic");
        const Point x0 = a.at("x0").point(env.n());
        const double h = grid.pitch();
        const double r = a.at("r").positive();
        const double lo = a.number("windowLo", 4.0 * h), hi = a.number("windowHi", r / 4.0);
        const double m = FundamentalSolution::unitMassCoefficient(static_cast<int>(env.n()), p) * std::pow(mu.pointMass(x0), 1.0 / (p - 1.0));
        const auto path = ApproachPath::geometric(a.at("direction").point(env.n()), hi, a.number("q", 0.9), a.integer("count", 200));
        const auto rep = superAsymptoticReport([&](const Point& x) { return sol.valueAt(x); }, static_cast<int>(env.n()), p, m, x0, path, lo, hi);
        std::vector<std::vector<double>> rows;
        for (std::size_t k = 0; k < rep.asymptotic.radii.size(); ++k)
            rows.push_back({rep.asymptotic.radii[k], rep.asymptotic.ratios[k], rep.asymptotic.potentials[k]});
        env.out.csv(env.name + "-asymptotic.csv", {"radius", "ratio", "potential"}, rows);
        env.result["m"] = jnum(m);
        env.result["maxRelDeviation"] = jnum(rep.maxRelDeviation);
        env.result["c0"] = jnum(rep.c0);
        env.result["window"] = jvec({lo, hi});
        env.check("ratio within tolerance of m", rep.maxRelDeviation <= env.tol(t, 0.05), rep.maxRelDeviation, env.tol(t, 0.05));
    }
}

Json conesVector(const Eigenvalues& v) { return jvec(v); }

void conesTask(TaskEnv& env, const Node& t, const std::string& verb)
{
    const std::size_t n = static_cast<std::size_t>(t.integer("n", static_cast<int>(env.n())));
    try {
        if (verb == "member") {
            const ConeSpec cone = env.scene.cone(t.at("cone"));
            const Node ls = t.at("lambdas");
            Json res = Json::array();
            for (std::size_t i = 0; i < ls.size(); ++i) {
                const auto v = ls.at(i).numbers();
                cone.validate(v.size());
                res.push_back({{"lambda", conesVector(v)}, {"member", member(v, cone)}, {"value", jnum(coneFunction(v, cone))}});
            }
            env.result["members"] = res;
        } else if (verb == "include") {
            InclusionOptions opt;
            opt.samples = static_cast<std::size_t>(t.integer("samples", 100000));
            opt.raySteps = static_cast<std::size_t>(t.integer("raySteps", 1000));
            opt.seed = env.seed(t);
            const auto rep = inclusionCheck(n, env.scene.cone(t.at("inner")), env.scene.cone(t.at("outer")), opt);
            env.result["inner"] = rep.inner;
            env.result["outer"] = rep.outer;
            env.result["tested"] = rep.tested;
            env.result["counterexampleCount"] = rep.counterexampleCount;
            Json cx = Json::array();
            for (const auto& v : rep.counterexamples) cx.push_back(conesVector(v));
            env.result["counterexamples"] = cx;
            const bool expectHolds = t.has("expect") ? t.at("expect").boolean("holds", true) : true;
            env.check("inclusion", rep.holds() == expectHolds, static_cast<double>(rep.counterexampleCount), 0.0);
        } else if (verb == "pgamma") {
            const ConeSpec cone = env.scene.cone(t.at("cone"));
            const double p = pGamma(n, cone);
            env.result["pGamma"] = jnum(p);
            if (!std::isfinite(p)) env.result["status"] = "no-sign-change";
            if (cone.kind == ConeSpec::Kind::Gamma && cone.parameter < static_cast<double>(n)) {
                const double closed = pGammaK(static_cast<int>(n), static_cast<int>(cone.parameter));
                env.result["closedForm"] = jnum(closed);
                env.check("closed form", std::abs(p - closed) <= env.tol(t, 1e-9), p, closed);
            }
        } else {
            t.at("verb").error("verb must be member, include or pgamma");
        }
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::InvalidArgument) throw;
        t.error(e.what());
    }
}

void densityTask(TaskEnv& env, const Node& t)
{
    const std::string mode = t.string("mode", "upper");
    const Node l = t.at("ladder");
    const auto ladder = geometricLadder(l.at("r0").positive(), l.at("q").positive(), l.at("count").integer());
    if (mode == "upper") {
        const auto prof = upperDensity(env.scene.measure(t.at("measure")), t.at("x").point(env.n()), t.at("d").number(), ladder);
        std::vector<std::vector<double>> rows;
        for (std::size_t k = 0; k < prof.radii.size(); ++k) rows.push_back({prof.radii[k], prof.values[k]});
        env.out.csv(env.name + ".csv", {"r", "value"}, rows);
        env.result["limsupEstimate"] = jnum(prof.limsupEstimate);
        env.result["trend"] = jnum(prof.trend);
    } else if (mode == "boxcount") {
        const auto rep = boxCountingDimension(env.scene.set(t.at("set")), ladder);
        std::vector<std::vector<double>> rows;
        for (std::size_t k = 0; k < rep.scales.size(); ++k) rows.push_back({rep.scales[k], rep.counts[k]});
        env.out.csv(env.name + ".csv", {"scale", "count"}, rows);
        env.result["dimension"] = jnum(rep.dimension);
        if (t.has("expect")) {
            const double target = t.at("expect").at("dimension").number();
            const double tol = t.at("expect").number("abs", 0.05);
            env.check("dimension", std::abs(rep.dimension - target) <= tol, rep.dimension, target);
        }
    } else {
        t.at("mode").error("mode must be upper or boxcount");
    }
}

}  // namespace

RunOutcome runScene(const Scene& scene, const std::string& type, const std::string& verb, const RunContext& ctx, Artifacts& out)
{
    static const std::vector<std::string> types{"wolff", "riesz", "capacity", "thin", "plaplace", "cones", "density"};
    RunOutcome outcome;
    const Node tasks = scene.tasks();
    Json& results = out.report["tasks"];
    results = Json::object();
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const Node t = tasks.at(i);
        const std::string ttype = t.at("type").string();
        if (std::find(types.begin(), types.end(), ttype) == types.end()) t.at("type").error("unknown task type '" + ttype + "'");
        if (type != "all" && ttype != type) continue;
        const std::string tverb = ttype == "cones" ? t.at("verb").string() : "";
        if (!verb.empty() && tverb != verb) continue;
        TaskEnv env{scene, ctx, out, Json::object(), true, t.at("name").string()};
        if (results.contains(env.name)) t.at("name").error("duplicate task name");
        env.result["type"] = ttype;
        env.result["checks"] = Json::array();
        if (ttype == "wolff") wolffTask(env, t);
        else if (ttype == "riesz") rieszTask(env, t);
        else if (ttype == "capacity") capacityTask(env, t);
        else if (ttype == "thin") thinTask(env, t);
        else if (ttype == "plaplace") plaplaceTask(env, t);
        else if (ttype == "cones") conesTask(env, t, tverb);
        else densityTask(env, t);
        env.result["pass"] = env.checksPassed;
        results[env.name] = env.result;
        ++outcome.tasks;
        if (!env.checksPassed) ++outcome.failedChecks;
    }
    if (outcome.tasks == 0) fail(ErrorKind::Schema, "/tasks: no task of type '" + type + (verb.empty() ? "" : " " + verb) + "' in the scene");
    return outcome;
}

}  // namespace potkit
