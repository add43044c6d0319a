#include "potkit/plaplace.hpp"

#include "potkit/wolff.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace potkit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

double FundamentalSolution::unitMassCoefficient(int n, double p)
{
    require(n >= 2 && p > 1.0 && p <= n, "fundamental solutions need 1 < p <= n");
    const double area = unitSphereArea(n);
    if (p == n) return std::pow(area, -1.0 / (n - 1.0));
    return (p - 1.0) / (n - p) * std::pow(area, -1.0 / (p - 1.0));
}

FundamentalSolution FundamentalSolution::unitMass(const Point& x0, double p)
{
    const int n = static_cast<int>(x0.dim());
    return FundamentalSolution{n, p, unitMassCoefficient(n, p), x0};
}

double FundamentalSolution::profile(double r) const
{
    if (r <= 0.0) return kInfinity;
    if (p == n) return -std::log(r);
    return std::pow(r, -exponent());
}

PSolution solvePDirichlet(const EvaluationGrid& grid, const Measure& mu, double p,
                          const std::function<double(const Point&)>& boundary, const PDirichletOptions& options)
{
    require(p > 1.0 && std::isfinite(p), "p must exceed 1");
    require(static_cast<bool>(boundary), "boundary data is required");
    PProblem prob;
    prob.grid = grid;
    prob.embedding = options.embedding.ambientDim == 0 ? LatticeEmbedding::cartesian(grid.dim()) : options.embedding;
    prob.p = p;
    prob.energyTol = options.energyTol;
    prob.gradTol = options.gradTol;
    prob.maxNewton = options.maxNewton;
    prob.continuation = options.continuation;
    prob.mirrorLow = options.mirrorLow;
    prob.mirrorLow.resize(static_cast<std::size_t>(grid.dim()), false);
    require(mu.dim() == 0 || static_cast<int>(mu.dim()) == prob.embedding.ambientDim, "measure and lattice dimensions differ");

    const bool axisym = prob.embedding.kind == LatticeEmbedding::Kind::Axisymmetric;
    const Box box = grid.box();
    const double h = grid.pitch();
    for (const auto& comp : mu.components()) {
        std::visit(overloaded{[&](const AtomicMeasure& a) {
                                  for (const auto& atom : a.atoms()) {
                                      if (atom.mass == 0.0) continue;
                                      const Point q = prob.embedding.toLattice(atom.location);
                                      if (!box.contains(q, 1e-12)) fail(ErrorKind::InvalidArgument, "atom lies outside the grid");
                                      prob.sources.push_back({q, atom.mass});
                                  }
                              },
                              [&](const GridMeasure& g) {
                                  require(!axisym, "grid measures need a Cartesian lattice");
                                  const EvaluationGrid& mg = g.grid();
                                  for (std::size_t c = 0; c < mg.cellCount(); ++c) {
                                      const double m = g.cellMass(c);
                                      if (m != 0.0) prob.sources.push_back({mg.cellCenter(c), m});
                                  }
                              },
                              [&](const RadialProfileMeasure&) {
                                  fail(ErrorKind::RepresentationLimit, "radial profiles are not projected onto lattices");
                              }},
                   comp);
    }
    const auto mirror = prob.mirrorLow;
    const LatticeEmbedding emb = prob.embedding;
    prob.dirichlet = [box, h, mirror, axisym, emb, boundary](const Point& q) -> std::optional<double> {
        const double tol = 1e-9 * h;
        for (std::size_t j = 0; j < q.dim(); ++j) {
            const bool natural = (j < mirror.size() && mirror[j]) || (axisym && j == 1);
            if (!natural && std::abs(q[j] - box.lo[j]) <= tol) return boundary(emb.toAmbient(q));
            if (std::abs(q[j] - box.hi[j]) <= tol) return boundary(emb.toAmbient(q));
        }
        return std::nullopt;
    };
    return solvePEnergy(prob);
}

double fluxNormalization(double p, int n, double rho, double h)
{
    require(n >= 2 && n <= 4, "flux quadrature supports n in {2, 3, 4}");
    require(p > 1.0 && p <= n, "flux normalization needs 1 < p <= n");
    require(rho > 0.0 && h > 0.0 && h < rho, "need 0 < h < rho");
    const FundamentalSolution G = FundamentalSolution::unitMass(Point(static_cast<std::size_t>(n)), p);
    const int m = std::max(1, static_cast<int>(std::ceil(std::numbers::pi * rho / (2.0 * h))));
    const double cell = 2.0 / m;
    const int k = n - 1;
    double flux = 0.0;
    std::vector<int> idx(k, 0);
    for (int ax = 0; ax < n; ++ax)
        for (int sign : {-1, 1}) {
            std::fill(idx.begin(), idx.end(), 0);
            while (true) {
                Point u(static_cast<std::size_t>(n));
                int q = 0;
                for (int j = 0; j < n; ++j) u[j] = j == ax ? sign : -1.0 + (idx[q++] + 0.5) * cell;
                const double nu = u.norm();
                const Point normal = u * (1.0 / nu);
                const Point x = normal * rho;
                const double w = std::pow(rho, k) * std::pow(cell, k) / std::pow(nu, n);
                Point g(static_cast<std::size_t>(n));
                for (int j = 0; j < n; ++j) {
                    Point a = x, b = x;
                    a[j] += h;
                    b[j] -= h;
                    g[j] = (G(a) - G(b)) / (2.0 * h);
                }
                flux += w * std::pow(g.norm(), p - 2.0) * dot(g, normal);
                int a = 0;
                while (a < k && ++idx[a] >= m) {
                    idx[a] = 0;
                    ++a;
                }
                if (a == k) break;
            }
        }
    return flux;
}

EnvelopeSample envelopeSample(const PSolution& solution, const Measure& mu, double p, const Point& x, double r)
{
    require(r > 0.0, "envelope radius must be positive");
    EnvelopeSample s;
    s.x = x;
    s.r = r;
    s.u = solution.valueAt(x);
    require(s.u >= -1e-12, "the envelope needs u >= 0");
    WolffParams w1{p, r}, w2{p, 2.0 * r};
    s.wolffR = wolffPotential(mu, w1, x);
    s.wolff2R = wolffPotential(mu, w2, x);
    s.infU = solution.minOverBall(x, r);
    s.hasLower = s.wolffR > 0.0;
    s.lowerRatio = s.hasLower ? s.u / s.wolffR : std::nan("");
    const double den = s.infU + s.wolff2R;
    s.upperRatio = den > 0.0 ? s.u / den : (s.u > 0.0 ? kInfinity : 0.0);
    return s;
}

EnvelopeReport envelopeCheck(const PSolution& solution, const Measure& mu, double p, const std::vector<Point>& xs,
                             const std::vector<double>& rs)
{
    require(!xs.empty() && !rs.empty(), "envelope needs test points and radii");
    EnvelopeReport rep;
    for (const auto& x : xs)
        for (double r : rs) {
            EnvelopeSample s = envelopeSample(solution, mu, p, x, r);
            if (s.hasLower) rep.c1 = std::min(rep.c1, s.lowerRatio);
            rep.c2 = std::max(rep.c2, s.upperRatio);
            rep.samples.push_back(std::move(s));
        }
    return rep;
}

SuperAsymptoticReport superAsymptoticReport(const std::function<double(const Point&)>& u, int n, double p, double m,
                                            const Point& x0, const ApproachPath& path, double windowLo, double windowHi)
{
    require(p > 1.0 && p <= n, "singular asymptotics need 1 < p <= n");
    require(windowLo > 0.0, "window must start above zero");
    const FundamentalSolution G{n, p, 1.0, x0};
    SuperAsymptoticReport rep;
    rep.m = m;
    rep.windowLo = windowLo;
    rep.windowHi = windowHi;
    ApproachPath inside{path.direction, {}};
    for (double r : path.radii)
        if (r >= windowLo * (1.0 - 1e-12) && r <= windowHi * (1.0 + 1e-12)) inside.radii.push_back(r);
    if (inside.radii.size() < 8 || windowHi <= windowLo)
        fail(ErrorKind::WindowEmpty, "the resolvable window [4h, r/4] holds too few path samples");
    rep.c0 = -kInfinity;
    rep.ratioMin = kInfinity;
    rep.ratioMax = -kInfinity;
    for (std::size_t k = 0; k < inside.radii.size(); ++k) {
        const Point x = inside.at(x0, k);
        const double v = u(x);
        const double g = G.profile(inside.radii[k]);
        rep.asymptotic.radii.push_back(inside.radii[k]);
        rep.asymptotic.potentials.push_back(v);
        rep.asymptotic.ratios.push_back(v / g);
        rep.c0 = std::max(rep.c0, m * g - v);
        rep.ratioMin = std::min(rep.ratioMin, v / g);
        rep.ratioMax = std::max(rep.ratioMax, v / g);
        rep.maxRelDeviation = std::max(rep.maxRelDeviation, std::abs(v / g - m) / std::abs(m));
    }
    rep.asymptotic.fit = fitLimit(rep.asymptotic.radii, rep.asymptotic.ratios,
                                  p == n ? CorrectionScale::InverseLog : CorrectionScale::Power);
    return rep;
}

}  // namespace potkit
