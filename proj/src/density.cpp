#include "potkit/density.hpp"

#include "potkit/asymptotic.hpp"

#include <algorithm>
#include <cmath>

namespace potkit {

std::vector<double> geometricLadder(double r0, double q, int count)
{
    require(r0 > 0.0 && q > 0.0 && q < 1.0 && count >= 1, "ladder needs r0 > 0, q in (0, 1)");
    std::vector<double> r(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) r[static_cast<std::size_t>(k)] = r0 * std::pow(q, k);
    return r;
}

DensityProfile upperDensity(const Measure& mu, const Point& x, double d, const std::vector<double>& ladder, double growthTol)
{
    const double n = static_cast<double>(x.dim());
    require(d >= 0.0 && d <= n, "d must lie in [0, n]");
    require(ladder.size() >= 10, "the ladder needs at least 10 rungs");
    for (std::size_t k = 0; k < ladder.size(); ++k) {
        require(ladder[k] > 0.0, "ladder radii must be positive");
        require(k == 0 || ladder[k] < ladder[k - 1], "ladder radii must decrease strictly");
    }
    DensityProfile prof;
    prof.x = x;
    prof.d = d;
    prof.radii = ladder;
    for (double r : ladder) prof.values.push_back(std::pow(r, -d) * ballMass(mu, x, r));

    const std::size_t N = ladder.size(), start = N / 2;
    std::vector<double> lx, ly;
    double cap = 0.0;
    for (std::size_t k = start; k < N; ++k) {
        cap = std::max(cap, prof.values[k]);
        if (prof.values[k] > 0.0) {
            lx.push_back(std::log(1.0 / ladder[k]));
            ly.push_back(std::log(prof.values[k]));
        }
    }
    if (lx.size() >= 3) prof.trend = linearFit(lx, ly).first;
    // Growth must persist to the last rung: an increasing trend with the final value at the maximum.
    const bool growing = lx.size() == N - start && prof.trend > growthTol && prof.values.back() >= cap;
    prof.limsupEstimate = growing ? kInfinity : cap;
    return prof;
}

BoxCountReport boxCountingDimension(const ParametricSet& E, const std::vector<double>& scales)
{
    if (E.empty()) fail(ErrorKind::Degenerate, "box counting needs a nonempty set");
    require(scales.size() >= 2, "box counting needs at least two scales");
    BoxCountReport rep;
    rep.scales = scales;
    std::vector<double> lx, ly;
    for (double eps : scales) {
        const double c = static_cast<double>(E.boxCount(eps));
        rep.counts.push_back(c);
        lx.push_back(std::log(eps));
        ly.push_back(std::log(std::max(c, 1.0)));
    }
    rep.dimension = -linearFit(lx, ly).first;
    return rep;
}

ParametricSet cantorSet(const Point& a, std::size_t axis, double length, int depth)
{
    require(axis < a.dim() && length > 0.0 && depth >= 0 && depth <= 20, "Cantor set needs a valid axis, length and depth <= 20");
    std::vector<double> lo{0.0};
    double w = 1.0;
    for (int j = 0; j < depth; ++j) {
        w /= 3.0;
        std::vector<double> next;
        next.reserve(2 * lo.size());
        for (double s : lo) {
            next.push_back(s);
            next.push_back(s + 2.0 * w);
        }
        lo = std::move(next);
    }
    ParametricSet E(a.dim());
    for (double s : lo) {
        Point p = a, q = a;
        p[axis] += length * s;
        q[axis] += length * (s + w);
        E.add(SegmentPrimitive{p, q});
    }
    return E;
}

}  // namespace potkit
