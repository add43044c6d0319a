#include "potkit/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>

namespace potkit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void requireRadius(double t)
{
    require(t > 0.0 && !std::isnan(t), "ball radius must be positive");
}

}  // namespace

// ---------------------------------------------------------------- atomic

AtomicMeasure::AtomicMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms))
{
    const std::size_t n = atoms_.empty() ? 0 : atoms_.front().location.dim();
    for (const auto& a : atoms_) {
        require(a.location.dim() == n, "atoms must share a dimension");
        require(n >= 2, "points need n >= 2");
        require(a.location.finite(), "atom location must be finite");
        require(a.mass >= 0.0 && std::isfinite(a.mass), "atom mass must be finite and nonnegative");
    }
    for (std::size_t i = 0; i < atoms_.size(); ++i)
        for (std::size_t j = i + 1; j < atoms_.size(); ++j)
            require(!(atoms_[i].location == atoms_[j].location), "atom locations must be distinct");
}

double AtomicMeasure::totalMass() const
{
    double s = 0.0;
    for (const auto& a : atoms_) s += a.mass;
    return s;
}

double AtomicMeasure::ballMass(const Point& x, double t) const
{
    requireRadius(t);
    double s = 0.0;
    for (const auto& a : atoms_)
        if (withinClosedBall(distance(a.location, x), t)) s += a.mass;
    return s;
}

double AtomicMeasure::massAt(const Point& x) const
{
    double s = 0.0;
    for (const auto& a : atoms_)
        if (distance(a.location, x) <= 1e-12 * std::max(1.0, x.norm())) s += a.mass;
    return s;
}

// ---------------------------------------------------------------- radial

RadialProfile RadialProfile::power(double c, double m, double radius)
{
    return atomPlusPower(0.0, c, m, radius);
}

RadialProfile RadialProfile::atomPlusPower(double a, double c, double m, double radius)
{
    require(a >= 0.0 && std::isfinite(a), "profile atom must be finite and nonnegative");
    require(c >= 0.0 && std::isfinite(c), "profile coefficient must be finite and nonnegative");
    require(m > 0.0 && std::isfinite(m), "profile exponent must be positive");
    require(radius > 0.0 && std::isfinite(radius), "profile support radius must be positive and finite");
    RadialProfile p;
    p.form_ = a > 0.0 ? Form::AtomPlusPower : Form::Power;
    p.a_ = a;
    p.c_ = c;
    p.m_ = m;
    p.radius_ = radius;
    return p;
}

RadialProfile RadialProfile::table(std::vector<std::pair<double, double>> steps)
{
    require(!steps.empty(), "profile table must not be empty");
    double prevT = -1.0, prevV = 0.0;
    for (const auto& [t, v] : steps) {
        require(t >= 0.0 && t > prevT, "profile table radii must be strictly increasing and nonnegative");
        require(std::isfinite(v) && v >= prevV, "profile table values must be nondecreasing");
        prevT = t;
        prevV = v;
    }
    RadialProfile p;
    p.form_ = Form::Table;
    p.radius_ = std::max(steps.back().first, 1e-300);
    p.steps_ = std::move(steps);
    return p;
}

double RadialProfile::operator()(double t) const
{
    if (t < 0.0) return 0.0;
    if (form_ == Form::Table) {
        double v = 0.0;
        for (const auto& [tk, vk] : steps_) {
            if (tk <= t * (1.0 + 1e-12)) v = vk;
            else break;
        }
        return v;
    }
    const double tt = std::min(t, radius_);
    return a_ + c_ * std::pow(tt, m_);
}

RadialProfile RadialProfile::truncated(double r) const
{
    require(r > 0.0, "truncation radius must be positive");
    if (form_ == Form::Table) {
        std::vector<std::pair<double, double>> kept;
        for (const auto& s : steps_)
            if (s.first <= r * (1.0 + 1e-12)) kept.push_back(s);
        if (kept.empty()) kept.push_back({r, 0.0});
        return table(std::move(kept));
    }
    RadialProfile p = *this;
    p.radius_ = std::min(radius_, r);
    return p;
}

double sphereFractionInBall(int n, double s, double d, double t)
{
    if (s + d <= t * (1.0 + 1e-12)) return 1.0;
    if (s >= d + t || s <= d - t) return 0.0;
    if (s <= 0.0 || d <= 0.0) return 0.0;
    double kappa = (s * s + d * d - t * t) / (2.0 * s * d);
    kappa = std::clamp(kappa, -1.0, 1.0);
    const double cap = 0.5 * boost::math::ibeta(0.5 * (n - 1), 0.5, 1.0 - kappa * kappa);
    return kappa >= 0.0 ? cap : 1.0 - cap;
}

RadialProfileMeasure::RadialProfileMeasure(Point center, RadialProfile profile)
    : center_(std::move(center)), profile_(std::move(profile))
{
    require(center_.dim() >= 2 && center_.finite(), "profile center must be a finite point with n >= 2");
}

double RadialProfileMeasure::ballMass(const Point& x, double t) const
{
    requireRadius(t);
    const double d = distance(x, center_);
    const double R = profile_.radius();
    if (d <= 1e-14 * std::max(1.0, t)) return profile_(t);
    if (t >= d + R) return profile_.total();
    const int n = static_cast<int>(center_.dim());

    double mass = 0.0;
    // Spheres entirely inside B(x,t), including any atom at the center.
    double lo = 0.0;
    if (t > d) {
        mass += profile_(t - d);
        lo = t - d;
    } else {
        lo = d - t;
        if (withinClosedBall(d, t) && profile_.form() != RadialProfile::Form::Table) mass += profile_.atom();
    }
    const double hi = std::min(d + t, R);
    if (hi <= lo) return mass;

    if (profile_.form() == RadialProfile::Form::Table) {
        double prev = 0.0;
        for (const auto& [tk, vk] : profile_.steps()) {
            const double jump = vk - prev;
            prev = vk;
            if (tk > lo && tk <= hi) mass += jump * sphereFractionInBall(n, tk, d, t);
            if (tk == 0.0 && t <= d && withinClosedBall(d, t)) mass += jump;
        }
        return mass;
    }
    const double c = profile_.coefficient(), m = profile_.exponent();
    if (c == 0.0) return mass;
    auto density = [&](double s) { return c * m * std::pow(s, m - 1.0) * sphereFractionInBall(n, s, d, t); };
    boost::math::quadrature::tanh_sinh<double> integrator;
    mass += integrator.integrate(density, lo, hi, 1e-11);
    return mass;
}

// ---------------------------------------------------------------- grid

GridMeasure::GridMeasure(EvaluationGrid grid, std::vector<double> density)
    : grid_(std::move(grid)), density_(std::move(density))
{
    require(density_.size() == grid_.cellCount(), "density must have one value per cell");
    for (double v : density_) require(v >= 0.0 && std::isfinite(v), "density must be finite and nonnegative");
}

double GridMeasure::totalMass() const
{
    double s = 0.0;
    for (double v : density_) s += v;
    return s * grid_.cellVolume();
}

double GridMeasure::ballMass(const Point& x, double t) const
{
    requireRadius(t);
    const int n = grid_.dim();
    const double h = grid_.pitch();
    const auto& cells = grid_.cellsPerAxis();
    // Scan only the index window that can hold centers within distance t.
    std::vector<std::int64_t> lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
        const double base = grid_.box().lo[i];
        lo[i] = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor((x[i] - t - base) / h - 0.5)));
        hi[i] = std::min<std::int64_t>(cells[i] - 1, static_cast<std::int64_t>(std::ceil((x[i] + t - base) / h - 0.5)));
        if (lo[i] > hi[i]) return 0.0;
    }
    std::vector<std::int64_t> k = lo;
    double s = 0.0;
    const double t2 = t * t * (1.0 + 2e-12);
    while (true) {
        double r2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double c = grid_.box().lo[i] + (static_cast<double>(k[i]) + 0.5) * h;
            r2 += (c - x[i]) * (c - x[i]);
        }
        if (r2 <= t2) s += density_[grid_.cellIndex(k)];
        int axis = 0;
        while (axis < n && ++k[axis] > hi[axis]) {
            k[axis] = lo[axis];
            ++axis;
        }
        if (axis == n) break;
    }
    return s * grid_.cellVolume();
}

GridMeasure uniformBallGrid(const Point& center, double radius, double density, double h, double halfWidth)
{
    EvaluationGrid grid(Box::cube(center, halfWidth), h);
    std::vector<double> rho(grid.cellCount(), 0.0);
    for (std::size_t c = 0; c < grid.cellCount(); ++c)
        if (withinClosedBall(distance(grid.cellCenter(c), center), radius)) rho[c] = density;
    return GridMeasure(std::move(grid), std::move(rho));
}

// ---------------------------------------------------------------- sums

Measure::Measure(AtomicMeasure m) { parts_.emplace_back(std::move(m)); }
Measure::Measure(RadialProfileMeasure m) { parts_.emplace_back(std::move(m)); }
Measure::Measure(GridMeasure m) { parts_.emplace_back(std::move(m)); }

Measure Measure::sum(const std::vector<Measure>& parts)
{
    Measure out;
    for (const auto& p : parts)
        for (const auto& c : p.parts_) out.parts_.push_back(c);
    const std::size_t n = out.dim();
    for (const auto& c : out.parts_) {
        const std::size_t k = std::visit(
            overloaded{[](const AtomicMeasure& a) { return a.atoms().empty() ? std::size_t{0} : a.atoms()[0].location.dim(); },
                       [](const RadialProfileMeasure& r) { return r.center().dim(); },
                       [](const GridMeasure& g) { return static_cast<std::size_t>(g.grid().dim()); }},
            c);
        require(k == 0 || k == n, "summed measures must share a dimension");
    }
    return out;
}

std::size_t Measure::dim() const
{
    for (const auto& c : parts_) {
        const std::size_t k = std::visit(
            overloaded{[](const AtomicMeasure& a) { return a.atoms().empty() ? std::size_t{0} : a.atoms()[0].location.dim(); },
                       [](const RadialProfileMeasure& r) { return r.center().dim(); },
                       [](const GridMeasure& g) { return static_cast<std::size_t>(g.grid().dim()); }},
            c);
        if (k != 0) return k;
    }
    return 0;
}

double Measure::totalMass() const
{
    double s = 0.0;
    for (const auto& c : parts_) s += std::visit([](const auto& m) { return m.totalMass(); }, c);
    return s;
}

double Measure::ballMass(const Point& x, double t) const
{
    requireRadius(t);
    double s = 0.0;
    for (const auto& c : parts_) s += std::visit([&](const auto& m) { return m.ballMass(x, t); }, c);
    return s;
}

double Measure::pointMass(const Point& x) const
{
    double s = 0.0;
    for (const auto& c : parts_) {
        s += std::visit(overloaded{[&](const AtomicMeasure& a) { return a.massAt(x); },
                                   [&](const RadialProfileMeasure& r) {
                                       if (distance(r.center(), x) > 1e-12 * std::max(1.0, x.norm())) return 0.0;
                                       const auto& prof = r.profile();
                                       if (prof.form() == RadialProfile::Form::Table)
                                           return prof.steps().front().first == 0.0 ? prof.steps().front().second : 0.0;
                                       return prof.atom();
                                   },
                                   [](const GridMeasure&) { return 0.0; }},
                        c);
    }
    return s;
}

double Measure::supportRadius(const Point& center) const
{
    double r = 0.0;
    for (const auto& c : parts_) {
        std::visit(overloaded{[&](const AtomicMeasure& a) {
                                  for (const auto& at : a.atoms())
                                      if (at.mass > 0.0) r = std::max(r, distance(at.location, center));
                              },
                              [&](const RadialProfileMeasure& m) {
                                  r = std::max(r, distance(m.center(), center) + m.profile().radius());
                              },
                              [&](const GridMeasure& g) {
                                  const Box& b = g.grid().box();
                                  Point far(center.dim());
                                  for (std::size_t i = 0; i < center.dim(); ++i)
                                      far[i] = std::max(std::abs(b.lo[i] - center[i]), std::abs(b.hi[i] - center[i]));
                                  r = std::max(r, far.norm());
                              }},
                   c);
    }
    return r;
}

double ballMass(const Measure& mu, const Point& x, double t) { return mu.ballMass(x, t); }

double totalMass(const Measure& mu) { return mu.totalMass(); }

Measure restrict(const Measure& mu, const Point& center, double radius)
{
    requireRadius(radius);
    std::vector<Measure> parts;
    for (const auto& c : mu.components()) {
        std::visit(overloaded{[&](const AtomicMeasure& a) {
                                  std::vector<Atom> kept;
                                  for (const auto& at : a.atoms())
                                      if (withinClosedBall(distance(at.location, center), radius)) kept.push_back(at);
                                  parts.emplace_back(AtomicMeasure(std::move(kept)));
                              },
                              [&](const RadialProfileMeasure& r) {
                                  if (distance(r.center(), center) > 1e-12 * std::max(1.0, radius))
                                      fail(ErrorKind::RepresentationLimit,
                                           "restricting a radial profile to a non-concentric ball is not representable");
                                  parts.emplace_back(RadialProfileMeasure(r.center(), r.profile().truncated(radius)));
                              },
                              [&](const GridMeasure& g) {
                                  std::vector<double> rho = g.density();
                                  for (std::size_t k = 0; k < rho.size(); ++k)
                                      if (!withinClosedBall(distance(g.grid().cellCenter(k), center), radius)) rho[k] = 0.0;
                                  parts.emplace_back(GridMeasure(g.grid(), std::move(rho)));
                              }},
                   c);
    }
    return Measure::sum(parts);
}

}  // namespace potkit
