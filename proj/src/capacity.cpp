#include "potkit/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>

#include <Eigen/Dense>
#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace potkit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kTableEnd = 6.0;
constexpr int kTableSize = 1201;

/// Integral of rho^(k-1) f(rho) from 0 to R.
double radialAntiderivative(int k, double beta, bool logk, double R)
{
    if (R <= 0.0) return 0.0;
    if (logk) return std::pow(R, k) / k * (std::log(1.0 / R) + 1.0 / k);
    return std::pow(R, beta + k) / (beta + k);
}

double patchKernelDirect(int k, double beta, bool logk, double tau)
{
    if (k == 1) {
        auto G = [&](double x) { return radialAntiderivative(1, beta, logk, x); };
        if (tau < 1.0) return 0.5 * (G(1.0 + tau) + G(1.0 - tau));
        return 0.5 * (G(tau + 1.0) - G(tau - 1.0));
    }
    const double norm = unitSphereArea(k - 1) / unitBallVolume(k);
    auto integrand = [&](double th) {
        const double c = std::cos(th), s = std::sin(th);
        const double disc = std::sqrt(std::max(0.0, 1.0 - tau * tau * s * s));
        const double r2 = tau * c + disc;
        const double r1 = tau * c - disc;
        double v = radialAntiderivative(k, beta, logk, r2);
        if (r1 > 0.0) v -= radialAntiderivative(k, beta, logk, r1);
        return v * std::pow(s, k - 2);
    };
    boost::math::quadrature::tanh_sinh<double> ts;
    const double thMax = tau <= 1.0 ? std::numbers::pi : std::asin(1.0 / tau);
    return norm * ts.integrate(integrand, 0.0, thMax, 1e-12);
}

double patchTail(int k, double beta, bool logk, double tau)
{
    const double c = 1.0 / (2.0 * (k + 2) * tau * tau);
    if (logk) return -std::log(tau) - (k - 2) * c;
    return std::pow(tau, beta) * (1.0 + beta * (beta + k - 2) * c);
}

class PatchTable {
public:
    PatchTable(int k, double beta, bool logk) : k_(k), beta_(beta), logk_(logk)
    {
        std::vector<double> v(kTableSize);
        const double step = kTableEnd / (kTableSize - 1);
        for (int i = 0; i < kTableSize; ++i) v[i] = patchKernelDirect(k, beta, logk, i * step);
        spline_ = boost::math::interpolators::cardinal_cubic_b_spline<double>(v.begin(), v.end(), 0.0, step);
    }
    double operator()(double tau) const
    {
        if (tau >= kTableEnd) return patchTail(k_, beta_, logk_, tau);
        return spline_(tau);
    }

private:
    int k_;
    double beta_;
    bool logk_;
    boost::math::interpolators::cardinal_cubic_b_spline<double> spline_;
};

const PatchTable& patchTable(int k, double beta, bool logk)
{
    static std::mutex mu;
    static std::map<std::tuple<int, double, bool>, std::unique_ptr<PatchTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{k, logk ? 0.0 : beta, logk}];
    if (!slot) slot = std::make_unique<PatchTable>(k, beta, logk);
    return *slot;
}

/// A collocation site: a flat k-dimensional patch of radius `a` centered at x.
struct Site {
    Point x;
    int k = 0;
    double a = 0.0;
    bool constraint = true;
};

struct KernelSetup {
    int n = 0;
    double beta = 0.0;
    bool logk = false;
    double D = 1.0;

    /// Potential at distance d of unit mass spread on a k-patch of radius a.
    double patch(int k, double a, double d) const
    {
        const double tau = d / a;
        if (logk) return std::log(D / a) + patchTable(k, beta, true)(tau);
        return std::pow(a, beta) * patchTable(k, beta, false)(tau);
    }
    double point(double d) const { return logk ? std::log(D / d) : std::pow(d, beta); }
    double siteKernel(const Site& s, double d) const { return d < kTableEnd * s.a ? patch(s.k, s.a, d) : pointTail(s, d); }
    double pointTail(const Site& s, double d) const
    {
        if (logk) return std::log(D / s.a) + patchTail(s.k, beta, true, d / s.a);
        return std::pow(s.a, beta) * patchTail(s.k, beta, false, d / s.a);
    }
    bool admissible(int k) const { return k >= 1 && (logk || beta + k > 0.0); }
};

double patchRadius(int k, double weight) { return std::pow(weight / unitBallVolume(k), 1.0 / k); }

void pushSite(std::vector<Site>& out, const Point& x, int k, double weight, bool constraint)
{
    out.push_back(Site{x, k, patchRadius(k, weight), constraint});
}

/// Cubed-sphere patches on the sphere |x - c| = r.
void sphereSites(const Point& c, double r, double s, std::vector<Site>& out)
{
    const std::size_t n = c.dim();
    const int m = std::max(1, static_cast<int>(std::ceil(std::numbers::pi * r / (2.0 * s))));
    const double cell = 2.0 / m;
    const int k = static_cast<int>(n) - 1;
    std::vector<int> idx(k, 0);
    for (std::size_t ax = 0; ax < n; ++ax)
        for (int sign : {-1, 1}) {
            std::fill(idx.begin(), idx.end(), 0);
            while (true) {
                Point u(n);
                std::size_t q = 0;
                for (std::size_t j = 0; j < n; ++j) {
                    if (j == ax) u[j] = sign;
                    else u[j] = -1.0 + (idx[q++] + 0.5) * cell;
                }
                const double nu = u.norm();
                const double w = std::pow(r, k) * std::pow(cell, k) / std::pow(nu, static_cast<double>(n));
                pushSite(out, c + u * (r / nu), k, w, true);
                int a = 0;
                while (a < k && ++idx[a] >= m) {
                    idx[a] = 0;
                    ++a;
                }
                if (a == k) break;
            }
        }
}

void boxFaceSites(const Box& b, double s, std::vector<Site>& out)
{
    const std::size_t n = b.dim();
    const int k = static_cast<int>(n) - 1;
    for (std::size_t ax = 0; ax < n; ++ax)
        for (int side = 0; side < 2; ++side) {
            std::vector<int> m(n, 1);
            double w = 1.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == ax) continue;
                const double L = b.hi[j] - b.lo[j];
                m[j] = std::max(1, static_cast<int>(std::ceil(L / s)));
                w *= L / m[j];
            }
            if (w <= 0.0) continue;
            std::vector<int> idx(n, 0);
            while (true) {
                Point x(n);
                for (std::size_t j = 0; j < n; ++j) {
                    if (j == ax) x[j] = side ? b.hi[j] : b.lo[j];
                    else x[j] = b.lo[j] + (idx[j] + 0.5) * (b.hi[j] - b.lo[j]) / m[j];
                }
                pushSite(out, x, k, w, true);
                std::size_t a = 0;
                while (a < n && (a == ax || ++idx[a] >= m[a])) {
                    if (a != ax) idx[a] = 0;
                    ++a;
                }
                if (a == n) break;
            }
        }
}

/// Cell-centered lattice sites at pitch s inside `bounds` where keep(x) holds.
template <class F>
void volumeSites(const Box& bounds, double s, F&& keep, bool constraint, std::vector<Site>& out)
{
    const std::size_t n = bounds.dim();
    std::vector<std::int64_t> m(n), idx(n, 0);
    for (std::size_t j = 0; j < n; ++j) m[j] = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil((bounds.hi[j] - bounds.lo[j]) / s)));
    const double w = std::pow(s, static_cast<double>(n));
    Point x(n);
    while (true) {
        for (std::size_t j = 0; j < n; ++j) x[j] = bounds.lo[j] + (static_cast<double>(idx[j]) + 0.5) * s;
        if (keep(x)) pushSite(out, x, static_cast<int>(n), w, constraint);
        std::size_t a = 0;
        while (a < n && ++idx[a] >= m[a]) {
            idx[a] = 0;
            ++a;
        }
        if (a == n) break;
    }
}

bool isSolid(const SetPrimitive& p)
{
    return std::holds_alternative<BallPrimitive>(p) || std::holds_alternative<BoxPrimitive>(p) ||
           std::holds_alternative<CuspPrimitive>(p) || std::holds_alternative<PredicatePrimitive>(p);
}

bool solidInterior(const SetPrimitive& p, const Point& x, double margin)
{
    return std::visit(overloaded{[&](const BallPrimitive& b) { return distance(x, b.center) < b.radius - margin; },
                                 [&](const BoxPrimitive& b) { return b.box.contains(x, -margin); },
                                 [&](const CuspPrimitive&) { return false; },
                                 [&](const PredicatePrimitive&) { return false; },
                                 [](const auto&) { return false; }},
                      p);
}

std::vector<Site> constraintSites(const ParametricSet& E, double s, const KernelSetup& ks, double alpha)
{
    const int n = ks.n;
    const bool volumes = std::abs(alpha - 2.0) > 1e-12;
    std::vector<Site> raw;
    const auto& prims = E.primitives();
    std::vector<std::size_t> owner;
    for (std::size_t pi = 0; pi < prims.size(); ++pi) {
        const std::size_t before = raw.size();
        std::visit(overloaded{[&](const BallPrimitive& b) {
                                  if (ks.admissible(n - 1)) sphereSites(b.center, b.radius, s, raw);
                                  if (volumes && ks.admissible(n))
                                      volumeSites(Box::cube(b.center, b.radius), s,
                                                  [&](const Point& x) { return distance(x, b.center) <= b.radius - 0.5 * s; }, true, raw);
                              },
                              [&](const BoxPrimitive& b) {
                                  if (ks.admissible(n - 1)) boxFaceSites(b.box, s, raw);
                                  if (volumes && ks.admissible(n))
                                      volumeSites(b.box, s, [&](const Point& x) { return b.box.contains(x, -0.5 * s); }, true, raw);
                              },
                              [&](const SpherePrimitive& sp) {
                                  if (ks.admissible(n - 1)) sphereSites(sp.center, sp.radius, s, raw);
                              },
                              [&](const SegmentPrimitive& sg) {
                                  if (!ks.admissible(1)) return;
                                  const double L = distance(sg.a, sg.b);
                                  if (L == 0.0) return;
                                  const int m = std::max(1, static_cast<int>(std::ceil(L / s)));
                                  for (int j = 0; j < m; ++j)
                                      pushSite(raw, sg.a + (sg.b - sg.a) * ((j + 0.5) / m), 1, L / m, true);
                              },
                              [&](const PointPrimitive&) {},
                              [&](const CuspPrimitive& c) {
                                  if (!ks.admissible(n)) return;
                                  const ParametricSet single = ParametricSet(static_cast<std::size_t>(n)).add(c);
                                  volumeSites(single.boundingBox(), s, [&](const Point& x) { return single.contains(x); }, true, raw);
                              },
                              [&](const PredicatePrimitive& q) {
                                  if (!ks.admissible(n)) return;
                                  volumeSites(q.bounds, s, [&](const Point& x) { return q.bounds.contains(x) && q.contains(x); }, true, raw);
                              }},
                   prims[pi]);
        owner.resize(raw.size(), pi);
        (void)before;
    }
    std::vector<Site> out;
    for (std::size_t j = 0; j < raw.size(); ++j) {
        const Site& st = raw[j];
        if (E.clip() && !E.clip()->contains(st.x)) continue;
        // Drop sites buried inside another solid, and duplicate volume sites of overlapping solids.
        bool buried = false;
        for (std::size_t pi = 0; pi < prims.size() && !buried; ++pi) {
            if (pi == owner[j] || !isSolid(prims[pi])) continue;
            if (st.k == n ? (pi < owner[j] && solidInterior(prims[pi], st.x, 0.0)) : solidInterior(prims[pi], st.x, 1e-12))
                buried = true;
        }
        if (!buried) out.push_back(st);
    }
    return out;
}

struct Solve {
    Eigen::VectorXd mass;
    int iterations = 0;
    double dualBound = 0.0;
    bool haveDual = false;
};

Eigen::MatrixXd kernelMatrix(const std::vector<Site>& rows, const std::vector<Site>& cols, const KernelSetup& ks, bool symmetric)
{
    const Eigen::Index R = static_cast<Eigen::Index>(rows.size()), C = static_cast<Eigen::Index>(cols.size());
    Eigen::MatrixXd B(R, C);
    for (Eigen::Index j = 0; j < C; ++j)
        for (Eigen::Index i = 0; i < R; ++i) {
            if (symmetric && i < j) continue;
            const double d = distance(rows[i].x, cols[j].x);
            double v = ks.siteKernel(cols[j], d);
            if (symmetric) {
                v = 0.5 * (v + ks.siteKernel(rows[i], d));
                B(j, i) = v;
            }
            B(i, j) = v;
        }
    return B;
}

/// Collocation B m = 1 with sites dropped while their masses come out negative.
Solve activeSetSolve(const Eigen::MatrixXd& B, int maxRounds)
{
    const Eigen::Index N = B.rows();
    std::vector<Eigen::Index> active(N);
    std::iota(active.begin(), active.end(), 0);
    Solve out;
    out.mass = Eigen::VectorXd::Zero(N);
    for (int round = 0; round < maxRounds; ++round) {
        ++out.iterations;
        const Eigen::Index A = static_cast<Eigen::Index>(active.size());
        Eigen::MatrixXd S(A, A);
        for (Eigen::Index j = 0; j < A; ++j)
            for (Eigen::Index i = 0; i < A; ++i) S(i, j) = B(active[i], active[j]);
        Eigen::VectorXd x;
        Eigen::LLT<Eigen::MatrixXd> llt(S);
        if (llt.info() == Eigen::Success) x = llt.solve(Eigen::VectorXd::Ones(A));
        else x = S.ldlt().solve(Eigen::VectorXd::Ones(A));
        const double tiny = 1e-12 * x.cwiseAbs().maxCoeff();
        std::vector<Eigen::Index> keep;
        for (Eigen::Index i = 0; i < A; ++i)
            if (x[i] >= -tiny) keep.push_back(active[i]);
        if (keep.size() == active.size() || keep.empty()) {
            out.mass.setZero();
            for (Eigen::Index i = 0; i < A; ++i) out.mass[active[i]] = std::max(0.0, x[i]);
            return out;
        }
        active = std::move(keep);
    }
    fail(ErrorKind::ResolutionTooCoarse, "active-set collocation did not settle; refine the pitch");
}

/// Primal-dual interior point for min 1'm subject to A m >= 1, m >= 0.
Solve interiorPointLp(const Eigen::MatrixXd& A, int maxIterations)
{
    const Eigen::Index nc = A.rows(), nv = A.cols();
    const Eigen::VectorXd b = Eigen::VectorXd::Ones(nc), c = Eigen::VectorXd::Ones(nv);
    // Feasible-ish start scaled so that A m is near 1.
    const double rowMean = A.sum() / static_cast<double>(nc);
    Eigen::VectorXd m = Eigen::VectorXd::Constant(nv, 2.0 / std::max(rowMean, 1e-300));
    Eigen::VectorXd w = (A * m - b).cwiseMax(1.0);
    Eigen::VectorXd y = Eigen::VectorXd::Constant(nc, 1.0 / std::max(A.colwise().sum().maxCoeff(), 1e-300));
    Eigen::VectorXd z = (c - A.transpose() * y).cwiseMax(0.5);
    Solve out;
    for (int it = 0; it < maxIterations; ++it) {
        out.iterations = it + 1;
        const Eigen::VectorXd rp = b - A * m + w;
        const Eigen::VectorXd rd = c - A.transpose() * y - z;
        const double mu = (m.dot(z) + w.dot(y)) / static_cast<double>(nv + nc);
        const double primal = m.sum(), dual = y.sum();
        if (rp.cwiseAbs().maxCoeff() < 1e-9 && rd.cwiseAbs().maxCoeff() < 1e-9 &&
            std::abs(primal - dual) <= 1e-9 * std::max(1.0, std::abs(primal)))
            break;
        const double sigma = 0.1;
        const Eigen::VectorXd rmz = (Eigen::VectorXd::Constant(nv, sigma * mu) - m.cwiseProduct(z));
        const Eigen::VectorXd rwy = (Eigen::VectorXd::Constant(nc, sigma * mu) - w.cwiseProduct(y));
        const Eigen::VectorXd D = m.cwiseQuotient(z);
        Eigen::MatrixXd N = A * D.asDiagonal() * A.transpose();
        N.diagonal() += w.cwiseQuotient(y);
        const Eigen::VectorXd rhs = rp + A * (D.cwiseProduct(rd)) - A * rmz.cwiseQuotient(z) + rwy.cwiseQuotient(y);
        const Eigen::VectorXd dy = N.llt().solve(rhs);
        const Eigen::VectorXd dm = D.cwiseProduct(A.transpose() * dy - rd) + rmz.cwiseQuotient(z);
        const Eigen::VectorXd dz = (rmz - z.cwiseProduct(dm)).cwiseQuotient(m);
        const Eigen::VectorXd dw = (rwy - w.cwiseProduct(dy)).cwiseQuotient(y);
        auto maxStep = [](const Eigen::VectorXd& v, const Eigen::VectorXd& dv) {
            double t = 1.0;
            for (Eigen::Index i = 0; i < v.size(); ++i)
                if (dv[i] < 0.0) t = std::min(t, -v[i] / dv[i]);
            return t;
        };
        const double tp = std::min(1.0, 0.99 * std::min(maxStep(m, dm), maxStep(w, dw)));
        const double td = std::min(1.0, 0.99 * std::min(maxStep(z, dz), maxStep(y, dy)));
        m += tp * dm;
        w += tp * dw;
        y += td * dy;
        z += td * dz;
    }
    out.mass = m.cwiseMax(0.0);
    // Scale the dual iterate into strict feasibility for a rigorous discrete lower bound.
    const double worst = std::max(1.0, (A.transpose() * y.cwiseMax(0.0)).maxCoeff());
    out.dualBound = y.cwiseMax(0.0).sum() / worst;
    out.haveDual = true;
    return out;
}

}  // namespace

double patchKernel(int k, double beta, bool logarithmic, double tau)
{
    require(k >= 1 && tau >= 0.0, "patch kernel needs k >= 1 and tau >= 0");
    if (!logarithmic) require(beta + k > 0.0, "patch kernel diverges for beta + k <= 0");
    return patchKernelDirect(k, beta, logarithmic, tau);
}

CapacityEstimate rieszCapacity(const ParametricSet& E, const Region& omega, double alpha, double h,
                               const RieszCapacityOptions& options)
{
    const int n = static_cast<int>(E.dim());
    require(n >= 2 && n <= 4, "Riesz capacity is discretized for n in {2, 3, 4}");
    require(omega.dim() == E.dim(), "set and domain dimensions differ");
    require(alpha > 1.0 && alpha <= n, "alpha must lie in (1, n]");
    require(h > 0.0, "pitch must be positive");
    KernelSetup ks{n, alpha - n, std::abs(alpha - n) < 1e-12, omega.diameter()};

    CapacityEstimate est;
    est.method = "lp-discrete";
    est.hasCertificate = true;
    if (E.empty()) {
        est.h = h;
        return est;
    }
    const Box bb = E.boundingBox();
    for (const Point& corner : {bb.lo, bb.hi})
        require(omega.boundingBox().contains(corner, 1e-12 * omega.diameter()), "E must lie inside Omega");

    double s = h;
    std::vector<Site> sites;
    for (int attempt = 0; attempt < 40; ++attempt) {
        sites = constraintSites(E, s, ks, alpha);
        if (sites.size() <= options.maxSites) break;
        int kmax = 1;
        for (const auto& st : sites) kmax = std::max(kmax, st.k);
        s *= std::max(1.05, std::pow(static_cast<double>(sites.size()) / options.maxSites, 1.0 / kmax));
    }
    for (const auto& st : sites)
        if (!omega.contains(st.x)) fail(ErrorKind::InvalidArgument, "E must lie inside the open domain Omega");
    est.h = s;
    if (sites.empty()) return est;  // every part of E is polar for this kernel

    std::vector<Site> candidates;
    if (alpha > 2.0 + 1e-12) {
        // Off-E candidate masses: the maximum principle fails and mass inside Omega can be cheaper.
        const double vol = [&] {
            double v = 1.0;
            for (std::size_t j = 0; j < bb.dim(); ++j) v *= std::max(bb.hi[j] - bb.lo[j], s);
            return v;
        }();
        const double sc = std::max(s, std::pow(vol / static_cast<double>(options.maxCandidates), 1.0 / n));
        volumeSites(bb, sc, [&](const Point& x) { return omega.contains(x) && E.distance(x) > 0.5 * sc; }, false, candidates);
    }

    Solve sol;
    std::vector<Site> all = sites;
    if (candidates.empty()) {
        const Eigen::MatrixXd B = kernelMatrix(sites, sites, ks, true);
        sol = activeSetSolve(B, options.maxIterations);
    } else {
        all.insert(all.end(), candidates.begin(), candidates.end());
        Eigen::MatrixXd A = kernelMatrix(sites, all, ks, false);
        // Symmetrize the E-E block like the collocation path.
        for (std::size_t i = 0; i < sites.size(); ++i)
            for (std::size_t j = 0; j < i; ++j) {
                const double v = 0.5 * (A(i, j) + A(j, i));
                A(i, j) = A(j, i) = v;
            }
        sol = interiorPointLp(A, options.maxIterations);
    }
    est.iterations = sol.iterations;
    est.unknowns = all.size();
    const double total = sol.mass.sum();

    // Continuum check on a finer sample of E.
    std::vector<Site> checks = constraintSites(E, 0.5 * s, ks, alpha);
    const std::size_t cap = 4 * sites.size() + 16;
    if (checks.size() > cap) {
        std::vector<Site> thin;
        const double stride = static_cast<double>(checks.size()) / cap;
        for (std::size_t q = 0; q < cap; ++q) thin.push_back(checks[static_cast<std::size_t>(q * stride)]);
        checks.swap(thin);
    }
    double qmin = kInfinity, qmax = 0.0;
    for (const auto& c : checks) {
        double u = 0.0;
        for (std::size_t j = 0; j < all.size(); ++j) {
            if (sol.mass[static_cast<Eigen::Index>(j)] == 0.0) continue;
            u += sol.mass[static_cast<Eigen::Index>(j)] * ks.siteKernel(all[j], distance(c.x, all[j].x));
        }
        qmin = std::min(qmin, u);
        qmax = std::max(qmax, u);
    }
    if (checks.empty()) qmin = qmax = 1.0;
    est.upper = qmin > 0.0 ? total / std::min(1.0, qmin) : kInfinity;
    if (sol.haveDual) est.lower = std::min(sol.dualBound, total);
    else est.lower = total / std::max(1.0, qmax);
    est.value = std::clamp(total, est.lower, est.upper);
    return est;
}

// ---------------------------------------------------------------- variational capacity

PProblem pCapacityProblem(const ParametricSet& K, const Region& omega, double p, double h, const PCapacityOptions& options)
{
    const std::size_t n = K.dim();
    require(p > 1.0, "p must exceed 1");
    require(n >= 2 && n <= 4, "grid capacities need n in {2, 3, 4}");
    require(omega.dim() == n, "set and domain dimensions differ");
    require(h > 0.0, "pitch must be positive");

    const Box ob = omega.boundingBox();
    const Point c = omega.kind == Region::Kind::Box ? ob.center() : omega.center;

    PProblem prob;
    prob.p = p;
    prob.energyTol = options.energyTol;
    prob.continuation = options.continuation;

    auto halfCells = [&](double half) { return std::ceil(half / h - 1e-9) * h; };

    std::optional<std::size_t> axis;
    if (options.symmetry == SymmetryMode::Auto && n >= 3 && omega.kind != Region::Kind::Box) {
        for (std::size_t a = 0; a < n && !axis; ++a)
            if (K.empty() || K.axisymmetric(c, a)) axis = a;
    }
    if (axis) {
        const double R = halfCells(omega.rOuter);
        const bool mirror = K.empty() || K.mirrorSymmetric(c, *axis);
        prob.embedding = LatticeEmbedding::axisymmetric(c, *axis);
        prob.grid = EvaluationGrid(Box(Point{mirror ? 0.0 : -R, 0.0}, Point{R, R}), h);
        prob.mirrorLow = {mirror, false};
    } else {
        Point lo(n), hi(n);
        prob.mirrorLow.assign(n, false);
        for (std::size_t j = 0; j < n; ++j) {
            const double half = halfCells(0.5 * (ob.hi[j] - ob.lo[j]));
            const bool mirror = options.symmetry == SymmetryMode::Auto && omega.mirrorSymmetric(c, j) &&
                                (K.empty() || K.mirrorSymmetric(c, j));
            lo[j] = mirror ? c[j] : c[j] - half;
            hi[j] = c[j] + half;
            prob.mirrorLow[j] = mirror;
        }
        prob.embedding = LatticeEmbedding::cartesian(static_cast<int>(n));
        prob.grid = EvaluationGrid(Box(lo, hi), h);
    }
    const LatticeEmbedding emb = prob.embedding;
    const double reach = 0.5 * h * (1.0 + 1e-9);
    prob.dirichlet = [emb, omega, K, reach](const Point& q) -> std::optional<double> {
        const Point x = emb.toAmbient(q);
        if (!omega.contains(x)) return 0.0;
        if (!K.empty() && K.distance(x) <= reach) return 1.0;
        return std::nullopt;
    };
    return prob;
}

CapacityEstimate pCapacity(const ParametricSet& K, const Region& omega, double p, double h, const PCapacityOptions& options)
{
    const PProblem prob = pCapacityProblem(K, omega, p, h, options);
    CapacityEstimate est;
    est.method = "grid-variational";
    est.h = h;
    bool anyOne = false;
    for (std::size_t i = 0; i < prob.grid.nodeCount() && !anyOne; ++i) {
        const auto v = prob.dirichlet(prob.grid.node(i));
        anyOne = v && *v == 1.0;
    }
    est.unknowns = prob.grid.nodeCount();
    if (!anyOne) return est;  // no lattice node reaches K
    const PSolution sol = solvePEnergy(prob);
    est.value = est.lower = est.upper = sol.energy;
    est.iterations = sol.iterations;
    return est;
}

// ---------------------------------------------------------------- dyadic annuli

Annulus dyadicAnnulus(const Point& x0, int i, double delta)
{
    require(i >= 1 && delta > 0.0, "annuli need i >= 1 and delta > 0");
    return Annulus{x0, std::ldexp(delta, -i), std::ldexp(delta, 1 - i)};
}

Region dyadicShell(const Point& x0, int i, double delta)
{
    require(i >= 1 && delta > 0.0, "annuli need i >= 1 and delta > 0");
    return Region::shell(x0, std::ldexp(delta, -i - 1), std::ldexp(delta, 2 - i));
}

namespace {

double capacityOf(const ParametricSet& E, const Region& omega, CapacityKind kind, double param, double h,
                  const AnnulusOptions& opt)
{
    if (kind == CapacityKind::Riesz) return rieszCapacity(E, omega, param, h, opt.riesz).value;
    return pCapacity(E, omega, param, h, opt.variational).value;
}

bool critical(std::size_t n, CapacityKind, double param) { return std::abs(param - static_cast<double>(n)) < 1e-12; }

}  // namespace

double annulusDenominator(std::size_t n, int i, CapacityKind kind, double param, const AnnulusOptions& options)
{
    const Point x0(n);
    const double r = std::ldexp(options.delta, -i);
    return capacityOf(ParametricSet::sphere(x0, r), Region::ball(x0, 2.0 * r), kind, param, options.hRel * r, options);
}

AnnulusRatio annulusCapacityRatio(const ParametricSet& E, const Point& x0, int i, CapacityKind kind, double param,
                                  const AnnulusOptions& options)
{
    const std::size_t n = x0.dim();
    require(E.dim() == n, "set and point dimensions differ");
    AnnulusRatio out;
    out.i = i;
    out.h = options.hRel * std::ldexp(options.delta, -i);
    const ParametricSet piece = E.clipped(dyadicAnnulus(x0, i, options.delta));
    const bool crit = critical(n, kind, param);
    out.denominator = crit ? 1.0 : annulusDenominator(n, i, kind, param, options);
    if (piece.empty()) return out;
    out.numerator = capacityOf(piece, dyadicShell(x0, i, options.delta), kind, param, out.h, options);
    out.ratio = out.numerator / out.denominator;
    return out;
}

double radialCondenserCapacity(int n, double p, double r, double R)
{
    require(n >= 2 && p > 1.0 && p <= n, "radial condenser needs 1 < p <= n");
    require(r > 0.0 && R > r, "radial condenser needs 0 < r < R");
    const double area = unitSphereArea(n);
    if (p == n) return area * std::pow(std::log(R / r), 1.0 - n);
    const double g = (n - p) / (p - 1.0);
    return area * std::pow(g, p - 1.0) * std::pow(std::pow(r, -g) - std::pow(R, -g), 1.0 - p);
}

}  // namespace potkit
