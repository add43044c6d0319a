#include "potkit/sets.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace potkit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct KeyHash {
    std::size_t operator()(const std::vector<std::int64_t>& k) const noexcept
    {
        std::size_t h = 1469598103934665603ull;
        for (auto v : k) {
            h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};
using KeySet = std::unordered_set<std::vector<std::int64_t>, KeyHash>;

constexpr double kGeomTol = 1e-12;

/// Visit lattice points anchor + s*k inside [lo, hi].
template <class F>
void forEachLattice(const Point& lo, const Point& hi, const Point& anchor, double s, F&& fn)
{
    const std::size_t n = lo.dim();
    std::vector<std::int64_t> kl(n), kh(n), k(n);
    for (std::size_t i = 0; i < n; ++i) {
        kl[i] = static_cast<std::int64_t>(std::ceil((lo[i] - anchor[i]) / s - 1e-9));
        kh[i] = static_cast<std::int64_t>(std::floor((hi[i] - anchor[i]) / s + 1e-9));
        if (kl[i] > kh[i]) return;
    }
    k = kl;
    Point x(n);
    while (true) {
        for (std::size_t i = 0; i < n; ++i) x[i] = anchor[i] + static_cast<double>(k[i]) * s;
        fn(x);
        std::size_t axis = 0;
        while (axis < n && ++k[axis] > kh[axis]) {
            k[axis] = kl[axis];
            ++axis;
        }
        if (axis == n) break;
    }
}

double boxDistance(const Box& b, const Point& x)
{
    double s = 0.0;
    for (std::size_t i = 0; i < x.dim(); ++i) {
        const double d = std::max({b.lo[i] - x[i], 0.0, x[i] - b.hi[i]});
        s += d * d;
    }
    return std::sqrt(s);
}

double segmentDistance(const Point& a, const Point& b, const Point& x)
{
    const Point ab = b - a;
    const double L2 = dot(ab, ab);
    double t = L2 > 0.0 ? dot(x - a, ab) / L2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return distance(a + ab * t, x);
}

/// Axial coordinate and orthogonal radius of x relative to a cusp.
std::pair<double, double> cuspCoords(const CuspPrimitive& c, const Point& x)
{
    const Point v = x - c.apex;
    const double s = dot(v, c.axis);
    const double rho = std::sqrt(std::max(0.0, dot(v, v) - s * s));
    return {s, rho};
}

bool cuspContains(const CuspPrimitive& c, const Point& x, double tol)
{
    auto [s, rho] = cuspCoords(c, x);
    if (s < -tol || s > c.length + tol) return false;
    const double sc = std::clamp(s, 0.0, c.length);
    return rho <= c.width * std::pow(sc, c.exponent) + tol;
}

double cuspDistance(const CuspPrimitive& c, const Point& x)
{
    auto [s, rho] = cuspCoords(c, x);
    if (cuspContains(c, x, 0.0)) return 0.0;
    auto distAt = [&](double sp) {
        const double w = c.width * std::pow(sp, c.exponent);
        const double dr = std::max(0.0, rho - w);
        return std::hypot(s - sp, dr);
    };
    // Coarse scan then golden refinement around the best sample.
    const int N = 64;
    int best = 0;
    double bestVal = distAt(0.0);
    for (int k = 1; k <= N; ++k) {
        const double v = distAt(c.length * k / N);
        if (v < bestVal) {
            bestVal = v;
            best = k;
        }
    }
    double a = c.length * std::max(0, best - 1) / N, b = c.length * std::min(N, best + 1) / N;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = distAt(x1), f2 = distAt(x2);
    for (int it = 0; it < 60; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = distAt(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = distAt(x2);
        }
    }
    return std::min({bestVal, f1, f2});
}

Box cuspBounds(const CuspPrimitive& c)
{
    const double w = c.width * std::pow(c.length, c.exponent);
    Point tip = c.apex + c.axis * c.length;
    Point lo = c.apex, hi = c.apex;
    for (std::size_t i = 0; i < lo.dim(); ++i) {
        lo[i] = std::min(c.apex[i], tip[i]) - w;
        hi[i] = std::max(c.apex[i], tip[i]) + w;
    }
    return Box(lo, hi);
}

Box primitiveBounds(const SetPrimitive& p)
{
    return std::visit(overloaded{[](const BallPrimitive& b) { return Box::cube(b.center, b.radius); },
                                 [](const BoxPrimitive& b) { return b.box; },
                                 [](const SpherePrimitive& s) { return Box::cube(s.center, s.radius); },
                                 [](const SegmentPrimitive& s) {
                                     Point lo = s.a, hi = s.a;
                                     for (std::size_t i = 0; i < lo.dim(); ++i) {
                                         lo[i] = std::min(s.a[i], s.b[i]);
                                         hi[i] = std::max(s.a[i], s.b[i]);
                                     }
                                     Box out;
                                     out.lo = lo;
                                     out.hi = hi;
                                     return out;
                                 },
                                 [](const PointPrimitive& p) {
                                     Box out;
                                     out.lo = p.p;
                                     out.hi = p.p;
                                     return out;
                                 },
                                 [](const CuspPrimitive& c) { return cuspBounds(c); },
                                 [](const PredicatePrimitive& p) { return p.bounds; }},
                      p);
}

bool primitiveContains(const SetPrimitive& p, const Point& x, double tol)
{
    return std::visit(overloaded{[&](const BallPrimitive& b) { return distance(x, b.center) <= b.radius + tol; },
                                 [&](const BoxPrimitive& b) { return b.box.contains(x, tol); },
                                 [&](const SpherePrimitive& s) { return std::abs(distance(x, s.center) - s.radius) <= tol; },
                                 [&](const SegmentPrimitive& s) { return segmentDistance(s.a, s.b, x) <= tol; },
                                 [&](const PointPrimitive& q) { return distance(x, q.p) <= tol; },
                                 [&](const CuspPrimitive& c) { return cuspContains(c, x, tol); },
                                 [&](const PredicatePrimitive& q) { return q.bounds.contains(x, tol) && q.contains(x); }},
                      p);
}

double primitiveDistance(const SetPrimitive& p, const Point& x)
{
    return std::visit(overloaded{[&](const BallPrimitive& b) { return std::max(0.0, distance(x, b.center) - b.radius); },
                                 [&](const BoxPrimitive& b) { return boxDistance(b.box, x); },
                                 [&](const SpherePrimitive& s) { return std::abs(distance(x, s.center) - s.radius); },
                                 [&](const SegmentPrimitive& s) { return segmentDistance(s.a, s.b, x); },
                                 [&](const PointPrimitive& q) { return distance(x, q.p); },
                                 [&](const CuspPrimitive& c) { return cuspDistance(c, x); },
                                 [&](const PredicatePrimitive& q) {
                                     return q.bounds.contains(x) && q.contains(x) ? 0.0 : kInfinity;
                                 }},
                      p);
}

void sphereSamples(const Point& c, double r, double s, std::vector<Point>& out)
{
    const std::size_t n = c.dim();
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(c + unitVector(n, i) * r);
        out.push_back(c - unitVector(n, i) * r);
    }
    if (r <= 0.0) return;
    const double shell = 0.5 * s;
    Point lo = c, hi = c;
    for (std::size_t i = 0; i < n; ++i) {
        lo[i] -= r + shell;
        hi[i] += r + shell;
    }
    forEachLattice(lo, hi, c, s, [&](const Point& x) {
        const double d = distance(x, c);
        if (d > 0.0 && std::abs(d - r) <= shell) out.push_back(c + (x - c) * (r / d));
    });
}

void boxBoundarySamples(const Box& b, double s, std::vector<Point>& out)
{
    const std::size_t n = b.dim();
    forEachLattice(b.lo, b.hi, b.lo, s, [&](const Point& x) {
        // Project interior lattice points onto the nearest face if within half a step of it.
        double best = kInfinity;
        std::size_t axis = 0;
        bool upper = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i] - b.lo[i] < best) {
                best = x[i] - b.lo[i];
                axis = i;
                upper = false;
            }
            if (b.hi[i] - x[i] < best) {
                best = b.hi[i] - x[i];
                axis = i;
                upper = true;
            }
        }
        if (best <= 0.5 * s) {
            Point y = x;
            y[axis] = upper ? b.hi[axis] : b.lo[axis];
            out.push_back(y);
        }
    });
    // Corners keep the far faces represented when the pitch does not divide the box.
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        Point y(n);
        for (std::size_t i = 0; i < n; ++i) y[i] = (mask >> i) & 1 ? b.hi[i] : b.lo[i];
        out.push_back(y);
    }
}

void primitiveSamples(const SetPrimitive& p, double s, bool boundaryOnly, std::vector<Point>& out)
{
    std::visit(overloaded{[&](const BallPrimitive& b) {
                              sphereSamples(b.center, b.radius, s, out);
                              if (!boundaryOnly)
                                  forEachLattice(Box::cube(b.center, b.radius).lo, Box::cube(b.center, b.radius).hi,
                                                 b.center, s, [&](const Point& x) {
                                                     if (distance(x, b.center) < b.radius - 0.25 * s) out.push_back(x);
                                                 });
                          },
                          [&](const BoxPrimitive& b) {
                              boxBoundarySamples(b.box, s, out);
                              if (!boundaryOnly)
                                  forEachLattice(b.box.lo, b.box.hi, b.box.lo, s, [&](const Point& x) { out.push_back(x); });
                          },
                          [&](const SpherePrimitive& sp) { sphereSamples(sp.center, sp.radius, s, out); },
                          [&](const SegmentPrimitive& seg) {
                              const double L = distance(seg.a, seg.b);
                              const auto N = static_cast<std::int64_t>(std::ceil(L / s));
                              for (std::int64_t k = 0; k <= N; ++k) {
                                  const double t = N > 0 ? static_cast<double>(k) / static_cast<double>(N) : 0.0;
                                  out.push_back(seg.a * (1.0 - t) + seg.b * t);
                              }
                          },
                          [&](const PointPrimitive& q) { out.push_back(q.p); },
                          [&](const CuspPrimitive& c) {
                              const auto N = static_cast<std::int64_t>(std::ceil(c.length / s));
                              for (std::int64_t k = 0; k <= N; ++k)
                                  out.push_back(c.apex + c.axis * (c.length * static_cast<double>(k) / std::max<std::int64_t>(N, 1)));
                              const Box bb = cuspBounds(c);
                              forEachLattice(bb.lo, bb.hi, c.apex, s, [&](const Point& x) {
                                  if (cuspContains(c, x, 0.0)) out.push_back(x);
                              });
                          },
                          [&](const PredicatePrimitive& q) {
                              forEachLattice(q.bounds.lo, q.bounds.hi, q.bounds.lo, s, [&](const Point& x) {
                                  if (q.contains(x)) out.push_back(x);
                              });
                          }},
               p);
}

/// Closed t-intervals (within [0, T]) where origin + t*dir lies in the primitive; exact for analytic kinds.
void primitiveIntervals(const SetPrimitive& p, const Point& o, const Point& v, double T,
                        std::vector<std::pair<double, double>>& out)
{
    auto ballInterval = [&](const Point& c, double r, bool shellOnly) {
        const Point w = o - c;
        const double A = dot(v, v), B = 2.0 * dot(v, w), C = dot(w, w) - r * r;
        const double disc = B * B - 4.0 * A * C;
        if (disc < 0.0) return;
        const double sq = std::sqrt(disc);
        const double t1 = (-B - sq) / (2.0 * A), t2 = (-B + sq) / (2.0 * A);
        if (shellOnly) {
            for (double t : {t1, t2})
                if (t >= 0.0 && t <= T) out.push_back({t, t});
        } else {
            const double a = std::max(t1, 0.0), b = std::min(t2, T);
            if (a <= b) out.push_back({a, b});
        }
    };
    auto sampled = [&](auto&& inside) {
        const int N = 4096;
        for (int k = 1; k <= N; ++k) {
            const double t = T * k / N;
            if (inside(o + v * t)) out.push_back({t, t});
        }
    };
    std::visit(overloaded{[&](const BallPrimitive& b) { ballInterval(b.center, b.radius, false); },
                          [&](const BoxPrimitive& b) {
                              double a = 0.0, e = T;
                              for (std::size_t i = 0; i < o.dim(); ++i) {
                                  if (v[i] == 0.0) {
                                      if (o[i] < b.box.lo[i] || o[i] > b.box.hi[i]) return;
                                      continue;
                                  }
                                  double t1 = (b.box.lo[i] - o[i]) / v[i], t2 = (b.box.hi[i] - o[i]) / v[i];
                                  if (t1 > t2) std::swap(t1, t2);
                                  a = std::max(a, t1);
                                  e = std::min(e, t2);
                              }
                              if (a <= e) out.push_back({a, e});
                          },
                          [&](const SpherePrimitive& s) { ballInterval(s.center, s.radius, true); },
                          [&](const SegmentPrimitive& seg) {
                              // Closest approach between the ray segment and the primitive segment.
                              const Point u = seg.b - seg.a, w = o - seg.a;
                              const double a = dot(v, v), b = dot(v, u), c = dot(u, u), d = dot(v, w), e = dot(u, w);
                              const double den = a * c - b * b;
                              const double scale = std::max({1.0, std::sqrt(c), T});
                              if (den <= kGeomTol * a * c) {
                                  // Parallel: check collinearity, then overlap of parameter ranges.
                                  if (segmentDistance(seg.a, seg.b, o) > kGeomTol * scale &&
                                      distance(o + v * (dot(seg.a - o, v) / a), seg.a) > kGeomTol * scale)
                                      return;
                                  double ta = dot(seg.a - o, v) / a, tb = dot(seg.b - o, v) / a;
                                  if (ta > tb) std::swap(ta, tb);
                                  const double lo = std::max(ta, 0.0), hi = std::min(tb, T);
                                  if (lo <= hi && distance(o + v * lo, seg.a) + distance(o + v * lo, seg.b) <=
                                                      std::sqrt(c) * (1.0 + kGeomTol) + kGeomTol * scale)
                                      out.push_back({lo, hi});
                                  return;
                              }
                              double t = (b * e - c * d) / den, s = (a * e - b * d) / den;
                              t = std::clamp(t, 0.0, T);
                              s = std::clamp(s, 0.0, 1.0);
                              if (distance(o + v * t, seg.a + u * s) <= kGeomTol * scale) out.push_back({t, t});
                          },
                          [&](const PointPrimitive& q) {
                              const double t = std::clamp(dot(q.p - o, v) / dot(v, v), 0.0, T);
                              if (distance(o + v * t, q.p) <= kGeomTol * std::max(1.0, T)) out.push_back({t, t});
                          },
                          [&](const CuspPrimitive& c) { sampled([&](const Point& x) { return cuspContains(c, x, 0.0); }); },
                          [&](const PredicatePrimitive& q) {
                              sampled([&](const Point& x) { return q.bounds.contains(x) && q.contains(x); });
                          }},
               p);
}

SetPrimitive reflect(const SetPrimitive& p, const Point& c, std::size_t axis)
{
    auto rf = [&](Point x) {
        x[axis] = 2.0 * c[axis] - x[axis];
        return x;
    };
    return std::visit(overloaded{[&](const BallPrimitive& b) -> SetPrimitive { return BallPrimitive{rf(b.center), b.radius}; },
                                 [&](const BoxPrimitive& b) -> SetPrimitive {
                                     Point lo = b.box.lo, hi = b.box.hi;
                                     lo[axis] = 2.0 * c[axis] - b.box.hi[axis];
                                     hi[axis] = 2.0 * c[axis] - b.box.lo[axis];
                                     return BoxPrimitive{Box(lo, hi)};
                                 },
                                 [&](const SpherePrimitive& s) -> SetPrimitive { return SpherePrimitive{rf(s.center), s.radius}; },
                                 [&](const SegmentPrimitive& s) -> SetPrimitive { return SegmentPrimitive{rf(s.a), rf(s.b)}; },
                                 [&](const PointPrimitive& q) -> SetPrimitive { return PointPrimitive{rf(q.p)}; },
                                 [&](const CuspPrimitive& cu) -> SetPrimitive {
                                     Point ax = cu.axis;
                                     ax[axis] = -ax[axis];
                                     return CuspPrimitive{rf(cu.apex), ax, cu.length, cu.exponent, cu.width};
                                 },
                                 [&](const PredicatePrimitive& q) -> SetPrimitive { return q; }},
                      p);
}

bool nearlyEqual(const Point& a, const Point& b, double scale) { return distance(a, b) <= 1e-12 * std::max(1.0, scale); }

bool samePrimitive(const SetPrimitive& p, const SetPrimitive& q)
{
    if (p.index() != q.index()) return false;
    return std::visit(overloaded{[&](const BallPrimitive& a) {
                                     const auto& b = std::get<BallPrimitive>(q);
                                     return nearlyEqual(a.center, b.center, a.radius) && std::abs(a.radius - b.radius) <= 1e-12 * a.radius;
                                 },
                                 [&](const BoxPrimitive& a) {
                                     const auto& b = std::get<BoxPrimitive>(q);
                                     return nearlyEqual(a.box.lo, b.box.lo, 1.0) && nearlyEqual(a.box.hi, b.box.hi, 1.0);
                                 },
                                 [&](const SpherePrimitive& a) {
                                     const auto& b = std::get<SpherePrimitive>(q);
                                     return nearlyEqual(a.center, b.center, a.radius) && std::abs(a.radius - b.radius) <= 1e-12 * a.radius;
                                 },
                                 [&](const SegmentPrimitive& a) {
                                     const auto& b = std::get<SegmentPrimitive>(q);
                                     return (nearlyEqual(a.a, b.a, 1.0) && nearlyEqual(a.b, b.b, 1.0)) ||
                                            (nearlyEqual(a.a, b.b, 1.0) && nearlyEqual(a.b, b.a, 1.0));
                                 },
                                 [&](const PointPrimitive& a) { return nearlyEqual(a.p, std::get<PointPrimitive>(q).p, 1.0); },
                                 [&](const CuspPrimitive& a) {
                                     const auto& b = std::get<CuspPrimitive>(q);
                                     return nearlyEqual(a.apex, b.apex, 1.0) && nearlyEqual(a.axis, b.axis, 1.0) &&
                                            a.length == b.length && a.exponent == b.exponent && a.width == b.width;
                                 },
                                 [&](const PredicatePrimitive&) { return false; }},
                      p);
}

bool onAxis(const Point& x, const Point& c, std::size_t axis)
{
    double s = 0.0;
    for (std::size_t i = 0; i < x.dim(); ++i)
        if (i != axis) s += (x[i] - c[i]) * (x[i] - c[i]);
    return std::sqrt(s) <= 1e-12 * std::max(1.0, x.norm());
}

}  // namespace

// ---------------------------------------------------------------- annulus

bool Annulus::contains(const Point& x) const
{
    const double d = potkit::distance(x, center);
    return d >= rInner * (1.0 - 1e-12) && d <= rOuter * (1.0 + 1e-12);
}

double Annulus::distance(const Point& x) const
{
    const double d = potkit::distance(x, center);
    return std::max({0.0, rInner - d, d - rOuter});
}

// ---------------------------------------------------------------- set

ParametricSet ParametricSet::ball(const Point& c, double r)
{
    require(r > 0.0, "ball radius must be positive");
    return ParametricSet(c.dim()).add(BallPrimitive{c, r});
}

ParametricSet ParametricSet::box(const Box& b) { return ParametricSet(b.dim()).add(BoxPrimitive{b}); }

ParametricSet ParametricSet::sphere(const Point& c, double r)
{
    require(r > 0.0, "sphere radius must be positive");
    return ParametricSet(c.dim()).add(SpherePrimitive{c, r});
}

ParametricSet ParametricSet::segment(const Point& a, const Point& b)
{
    return ParametricSet(a.dim()).add(SegmentPrimitive{a, b});
}

ParametricSet ParametricSet::points(const std::vector<Point>& pts)
{
    require(!pts.empty(), "point list must not be empty");
    ParametricSet s(pts.front().dim());
    for (const auto& p : pts) s.add(PointPrimitive{p});
    return s;
}

ParametricSet ParametricSet::cusp(const Point& apex, const Point& axis, double length, double exponent, double width)
{
    require(length > 0.0 && exponent > 0.0 && width > 0.0, "cusp parameters must be positive");
    return ParametricSet(apex.dim()).add(CuspPrimitive{apex, normalized(axis), length, exponent, width});
}

ParametricSet ParametricSet::predicate(std::function<bool(const Point&)> f, const Box& bounds, std::string label)
{
    require(static_cast<bool>(f), "predicate must be callable");
    return ParametricSet(bounds.dim()).add(PredicatePrimitive{std::move(f), bounds, std::move(label)});
}

ParametricSet& ParametricSet::add(SetPrimitive prim)
{
    const std::size_t k = primitiveBounds(prim).lo.dim();
    if (n_ == 0) n_ = k;
    require(k == n_, "set primitives must share a dimension");
    require(n_ >= 2, "sets need n >= 2");
    prims_.push_back(std::move(prim));
    return *this;
}

ParametricSet ParametricSet::united(const ParametricSet& other) const
{
    require(!clip_ && !other.clip_, "union of clipped sets is not supported");
    ParametricSet out = *this;
    for (const auto& p : other.prims_) out.add(p);
    return out;
}

ParametricSet ParametricSet::clipped(const Annulus& a) const
{
    require(a.rOuter > a.rInner && a.rInner >= 0.0, "annulus radii must satisfy 0 <= rInner < rOuter");
    ParametricSet out = *this;
    out.clip_ = a;
    return out;
}

ParametricSet ParametricSet::scaled(double lambda) const
{
    require(lambda > 0.0, "scale factor must be positive");
    ParametricSet out(n_);
    for (const auto& p : prims_) {
        out.prims_.push_back(std::visit(
            overloaded{[&](const BallPrimitive& b) -> SetPrimitive { return BallPrimitive{b.center * lambda, b.radius * lambda}; },
                       [&](const BoxPrimitive& b) -> SetPrimitive { return BoxPrimitive{b.box.scaled(lambda)}; },
                       [&](const SpherePrimitive& s) -> SetPrimitive { return SpherePrimitive{s.center * lambda, s.radius * lambda}; },
                       [&](const SegmentPrimitive& s) -> SetPrimitive { return SegmentPrimitive{s.a * lambda, s.b * lambda}; },
                       [&](const PointPrimitive& q) -> SetPrimitive { return PointPrimitive{q.p * lambda}; },
                       [&](const CuspPrimitive& c) -> SetPrimitive {
                           // width*s^e scales to lambda*width*(s/lambda)^e.
                           return CuspPrimitive{c.apex * lambda, c.axis, c.length * lambda, c.exponent,
                                                c.width * std::pow(lambda, 1.0 - c.exponent)};
                       },
                       [&](const PredicatePrimitive& q) -> SetPrimitive {
                           auto f = q.contains;
                           return PredicatePrimitive{[f, lambda](const Point& x) { return f(x * (1.0 / lambda)); },
                                                     q.bounds.scaled(lambda), q.label};
                       }},
            p));
    }
    if (clip_) out.clip_ = Annulus{clip_->center * lambda, clip_->rInner * lambda, clip_->rOuter * lambda};
    return out;
}

bool ParametricSet::empty() const
{
    if (prims_.empty()) return true;
    if (!clip_) return false;
    // Each analytic primitive is connected, so it meets the annulus iff its distance range from the
    // clip center overlaps [rInner, rOuter].
    const Annulus& A = *clip_;
    auto overlaps = [&](double lo, double hi) { return hi >= A.rInner * (1 - 1e-12) && lo <= A.rOuter * (1 + 1e-12); };
    for (const auto& p : prims_) {
        const bool hit = std::visit(
            overloaded{[&](const BallPrimitive& b) {
                           const double d = potkit::distance(b.center, A.center);
                           return overlaps(std::max(0.0, d - b.radius), d + b.radius);
                       },
                       [&](const BoxPrimitive& b) {
                           double far = 0.0;
                           for (std::size_t i = 0; i < n_; ++i) {
                               const double d = std::max(std::abs(b.box.lo[i] - A.center[i]), std::abs(b.box.hi[i] - A.center[i]));
                               far += d * d;
                           }
                           return overlaps(boxDistance(b.box, A.center), std::sqrt(far));
                       },
                       [&](const SpherePrimitive& s) {
                           const double d = potkit::distance(s.center, A.center);
                           return overlaps(std::abs(d - s.radius), d + s.radius);
                       },
                       [&](const SegmentPrimitive& s) {
                           return overlaps(segmentDistance(s.a, s.b, A.center),
                                           std::max(potkit::distance(s.a, A.center), potkit::distance(s.b, A.center)));
                       },
                       [&](const PointPrimitive& q) { return A.contains(q.p); },
                       [&](const auto& other) {
                           std::vector<Point> pts;
                           primitiveSamples(other, std::max(primitiveBounds(other).diameter(), 1e-300) / 256.0, false, pts);
                           for (const auto& x : pts)
                               if (A.contains(x)) return true;
                           return false;
                       }},
            p);
        if (hit) return false;
    }
    return true;
}

bool ParametricSet::contains(const Point& x, double tol) const
{
    if (clip_ && clip_->distance(x) > tol) return false;
    for (const auto& p : prims_)
        if (primitiveContains(p, x, tol)) return true;
    return false;
}

double ParametricSet::distance(const Point& x) const
{
    double d = kInfinity;
    for (const auto& p : prims_) d = std::min(d, primitiveDistance(p, x));
    if (clip_) d = std::max(d, clip_->distance(x));
    return d;
}

Box ParametricSet::boundingBox() const
{
    require(!prims_.empty(), "bounding box of an empty set");
    Box bb = primitiveBounds(prims_.front());
    for (std::size_t k = 1; k < prims_.size(); ++k) {
        const Box b = primitiveBounds(prims_[k]);
        for (std::size_t i = 0; i < n_; ++i) {
            bb.lo[i] = std::min(bb.lo[i], b.lo[i]);
            bb.hi[i] = std::max(bb.hi[i], b.hi[i]);
        }
    }
    if (clip_) {
        for (std::size_t i = 0; i < n_; ++i) {
            bb.lo[i] = std::max(bb.lo[i], clip_->center[i] - clip_->rOuter);
            bb.hi[i] = std::min(bb.hi[i], clip_->center[i] + clip_->rOuter);
        }
    }
    return bb;
}

std::vector<Point> ParametricSet::samplePoints(double spacing, bool boundaryOnly) const
{
    require(spacing > 0.0, "sample spacing must be positive");
    std::vector<Point> raw;
    for (const auto& p : prims_) primitiveSamples(p, spacing, boundaryOnly, raw);
    if (clip_) {
        std::vector<Point> kept;
        for (auto& x : raw)
            if (clip_->contains(x)) kept.push_back(std::move(x));
        raw = std::move(kept);
    }
    return thinPoints(raw, 0.7 * spacing);
}

bool ParametricSet::segmentHits(const Point& origin, const Point& dir, double tmax) const
{
    require(tmax > 0.0, "segment length must be positive");
    const Point v = normalized(dir);
    std::vector<std::pair<double, double>> iv;
    for (const auto& p : prims_) primitiveIntervals(p, origin, v, tmax, iv);
    std::vector<std::pair<double, double>> allowed{{0.0, tmax}};
    if (clip_) {
        // t-range inside the outer ball minus the open inner ball.
        allowed.clear();
        const Point w = origin - clip_->center;
        const double B = dot(v, w), C = dot(w, w);
        auto roots = [&](double r) -> std::pair<double, double> {
            const double disc = B * B - (C - r * r);
            if (disc < 0.0) return {1.0, -1.0};
            const double sq = std::sqrt(disc);
            return {-B - sq, -B + sq};
        };
        auto [o1, o2] = roots(clip_->rOuter);
        if (o1 > o2) return false;
        o1 = std::max(o1, 0.0);
        o2 = std::min(o2, tmax);
        if (clip_->rInner > 0.0) {
            auto [i1, i2] = roots(clip_->rInner);
            if (i1 <= i2) {
                if (o1 <= std::min(i1, o2)) allowed.push_back({o1, std::min(i1, o2)});
                if (std::max(i2, o1) <= o2) allowed.push_back({std::max(i2, o1), o2});
            } else if (o1 <= o2) {
                allowed.push_back({o1, o2});
            }
        } else if (o1 <= o2) {
            allowed.push_back({o1, o2});
        }
    }
    for (const auto& [a, b] : iv)
        for (const auto& [c, d] : allowed) {
            const double lo = std::max(a, c), hi = std::min(b, d);
            // The segment is open at the origin.
            if (lo <= hi && hi > 0.0) return true;
        }
    return false;
}

std::size_t ParametricSet::boxCount(double eps) const
{
    require(eps > 0.0, "box scale must be positive");
    KeySet boxes;
    auto keyOf = [&](const Point& x) {
        std::vector<std::int64_t> k(n_);
        for (std::size_t i = 0; i < n_; ++i) k[i] = static_cast<std::int64_t>(std::floor(x[i] / eps));
        return k;
    };
    auto boxRange = [&](const Box& b, auto&& accept) {
        std::vector<std::int64_t> lo(n_), hi(n_), k(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            lo[i] = static_cast<std::int64_t>(std::floor(b.lo[i] / eps));
            hi[i] = static_cast<std::int64_t>(std::floor(b.hi[i] / eps));
        }
        k = lo;
        Box cell;
        cell.lo = Point(n_);
        cell.hi = Point(n_);
        while (true) {
            for (std::size_t i = 0; i < n_; ++i) {
                cell.lo[i] = static_cast<double>(k[i]) * eps;
                cell.hi[i] = static_cast<double>(k[i] + 1) * eps;
            }
            if (accept(cell) && (!clip_ || boxDistance(cell, clip_->center) <= clip_->rOuter)) boxes.insert(k);
            std::size_t axis = 0;
            while (axis < n_ && ++k[axis] > hi[axis]) {
                k[axis] = lo[axis];
                ++axis;
            }
            if (axis == n_) break;
        }
    };
    auto farDistance = [&](const Box& cell, const Point& c) {
        double s = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            const double d = std::max(std::abs(cell.lo[i] - c[i]), std::abs(cell.hi[i] - c[i]));
            s += d * d;
        }
        return std::sqrt(s);
    };
    for (const auto& p : prims_) {
        if (const auto* b = std::get_if<BallPrimitive>(&p)) {
            boxRange(Box::cube(b->center, b->radius), [&](const Box& cell) { return boxDistance(cell, b->center) <= b->radius; });
        } else if (const auto* s = std::get_if<SpherePrimitive>(&p)) {
            boxRange(Box::cube(s->center, s->radius), [&](const Box& cell) {
                return boxDistance(cell, s->center) <= s->radius && farDistance(cell, s->center) >= s->radius;
            });
        } else if (const auto* bx = std::get_if<BoxPrimitive>(&p)) {
            boxRange(bx->box, [](const Box&) { return true; });
        } else if (const auto* q = std::get_if<PointPrimitive>(&p)) {
            if (!clip_ || clip_->contains(q->p)) boxes.insert(keyOf(q->p));
        } else {
            std::vector<Point> pts;
            primitiveSamples(p, 0.25 * eps, false, pts);
            for (const auto& x : pts)
                if (!clip_ || clip_->contains(x)) boxes.insert(keyOf(x));
        }
    }
    return boxes.size();
}

bool ParametricSet::mirrorSymmetric(const Point& center, std::size_t axis) const
{
    if (clip_ && std::abs(clip_->center[axis] - center[axis]) > 1e-12 * std::max(1.0, center.norm())) return false;
    for (const auto& p : prims_) {
        if (std::holds_alternative<PredicatePrimitive>(p)) return false;
        const SetPrimitive r = reflect(p, center, axis);
        bool found = false;
        for (const auto& q : prims_)
            if (samePrimitive(r, q)) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

bool ParametricSet::axisymmetric(const Point& center, std::size_t axis) const
{
    if (clip_ && !onAxis(clip_->center, center, axis)) return false;
    for (const auto& p : prims_) {
        const bool ok = std::visit(
            overloaded{[&](const BallPrimitive& b) { return onAxis(b.center, center, axis); },
                       [&](const BoxPrimitive&) { return false; },
                       [&](const SpherePrimitive& s) { return onAxis(s.center, center, axis); },
                       [&](const SegmentPrimitive& s) { return onAxis(s.a, center, axis) && onAxis(s.b, center, axis); },
                       [&](const PointPrimitive& q) { return onAxis(q.p, center, axis); },
                       [&](const CuspPrimitive& c) {
                           return onAxis(c.apex, center, axis) && std::abs(std::abs(c.axis[axis]) - 1.0) <= 1e-12;
                       },
                       [&](const PredicatePrimitive&) { return false; }},
            p);
        if (!ok) return false;
    }
    return true;
}

Region Region::fromBox(const Box& b)
{
    Region r;
    r.kind = Kind::Box;
    r.box = b;
    r.center = b.center();
    return r;
}

Region Region::ball(const Point& c, double radius)
{
    require(radius > 0.0, "ball radius must be positive");
    Region r;
    r.kind = Kind::Ball;
    r.center = c;
    r.rOuter = radius;
    r.box = Box::cube(c, radius);
    return r;
}

Region Region::shell(const Point& c, double rInner, double rOuter)
{
    require(rInner >= 0.0 && rOuter > rInner, "shell radii must satisfy 0 <= rInner < rOuter");
    Region r = ball(c, rOuter);
    r.kind = Kind::Shell;
    r.rInner = rInner;
    return r;
}

std::size_t Region::dim() const { return box.dim(); }

bool Region::contains(const Point& x) const
{
    switch (kind) {
    case Kind::Box:
        for (std::size_t i = 0; i < x.dim(); ++i)
            if (!(x[i] > box.lo[i] && x[i] < box.hi[i])) return false;
        return true;
    case Kind::Ball:
        return distance(x, center) < rOuter;
    case Kind::Shell: {
        const double d = distance(x, center);
        return d > rInner && d < rOuter;
    }
    }
    return false;
}

Box Region::boundingBox() const { return box; }

double Region::diameter() const { return kind == Kind::Box ? box.diameter() : 2.0 * rOuter; }

Region Region::scaled(double lambda) const
{
    require(lambda > 0.0, "scale factor must be positive");
    Region r = *this;
    r.box = box.scaled(lambda);
    r.center = center * lambda;
    r.rInner *= lambda;
    r.rOuter *= lambda;
    return r;
}

bool Region::mirrorSymmetric(const Point& c, std::size_t axis) const
{
    const double tol = 1e-12 * std::max(1.0, diameter());
    if (kind != Kind::Box) return std::abs(center[axis] - c[axis]) <= tol;
    return std::abs(box.lo[axis] + box.hi[axis] - 2.0 * c[axis]) <= tol;
}

bool Region::axisymmetric(const Point& c, std::size_t axis) const
{
    if (kind == Kind::Box) return false;
    return onAxis(center, c, axis);
}

std::vector<Point> thinPoints(const std::vector<Point>& pts, double minSep)
{
    if (pts.empty()) return {};
    const std::size_t n = pts.front().dim();
    std::unordered_map<std::vector<std::int64_t>, std::vector<std::size_t>, KeyHash> buckets;
    std::vector<Point> out;
    const double sep2 = minSep * minSep;
    std::vector<std::int64_t> key(n), probe(n);
    for (const auto& x : pts) {
        for (std::size_t i = 0; i < n; ++i) key[i] = static_cast<std::int64_t>(std::floor(x[i] / minSep));
        bool clash = false;
        // Scan the 3^n neighbouring buckets.
        const std::size_t total = static_cast<std::size_t>(std::pow(3, n));
        for (std::size_t m = 0; m < total && !clash; ++m) {
            std::size_t r = m;
            for (std::size_t i = 0; i < n; ++i) {
                probe[i] = key[i] + static_cast<std::int64_t>(r % 3) - 1;
                r /= 3;
            }
            auto it = buckets.find(probe);
            if (it == buckets.end()) continue;
            for (std::size_t idx : it->second)
                if (distanceSquared(out[idx], x) < sep2) {
                    clash = true;
                    break;
                }
        }
        if (!clash) {
            buckets[key].push_back(out.size());
            out.push_back(x);
        }
    }
    return out;
}

}  // namespace potkit
