#pragma once

#include "potkit/common.hpp"
#include "potkit/grid.hpp"

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace potkit {

struct BallPrimitive {
    Point center;
    double radius = 0.0;
};
struct BoxPrimitive {
    Box box;
};
struct SpherePrimitive {
    Point center;
    double radius = 0.0;
};
struct SegmentPrimitive {
    Point a, b;
};
struct PointPrimitive {
    Point p;
};
/// Horn {apex + s*axis + w : 0 <= s <= length, w orthogonal to axis, |w| <= width * s^exponent}.
struct CuspPrimitive {
    Point apex;
    Point axis;
    double length = 0.0;
    double exponent = 1.0;
    double width = 0.0;
};
/// Membership predicate evaluated pointwise inside its bounds.
struct PredicatePrimitive {
    std::function<bool(const Point&)> contains;
    Box bounds;
    std::string label;
};

using SetPrimitive = std::variant<BallPrimitive, BoxPrimitive, SpherePrimitive, SegmentPrimitive, PointPrimitive,
                                  CuspPrimitive, PredicatePrimitive>;

/// Closed annulus {rInner <= |x - center| <= rOuter}; rInner may be 0.
struct Annulus {
    Point center;
    double rInner = 0.0;
    double rOuter = 0.0;

    bool contains(const Point& x) const;
    double distance(const Point& x) const;
};

/// A compact set given as a finite union of primitives, optionally clipped to an annulus.
class ParametricSet {
public:
    ParametricSet() = default;
    explicit ParametricSet(std::size_t n) : n_(n) {}

    static ParametricSet ball(const Point& c, double r);
    static ParametricSet box(const Box& b);
    static ParametricSet sphere(const Point& c, double r);
    static ParametricSet segment(const Point& a, const Point& b);
    static ParametricSet points(const std::vector<Point>& pts);
    static ParametricSet cusp(const Point& apex, const Point& axis, double length, double exponent, double width);
    static ParametricSet predicate(std::function<bool(const Point&)> f, const Box& bounds, std::string label);

    ParametricSet& add(SetPrimitive prim);
    ParametricSet united(const ParametricSet& other) const;
    /// E intersected with a closed annulus (nested clips keep the innermost).
    ParametricSet clipped(const Annulus& a) const;
    /// Image under y -> lambda * y.
    ParametricSet scaled(double lambda) const;

    std::size_t dim() const { return n_; }
    bool empty() const;
    const std::vector<SetPrimitive>& primitives() const { return prims_; }
    const std::optional<Annulus>& clip() const { return clip_; }

    bool contains(const Point& x, double tol = 0.0) const;
    /// Distance to E; with a clip this is max(dist to union, dist to annulus), a lower bound that is exact off the clip edge.
    double distance(const Point& x) const;
    Box boundingBox() const;

    /// Roughly uniform samples at the given spacing; boundaryOnly drops interiors of solids.
    std::vector<Point> samplePoints(double spacing, bool boundaryOnly) const;
    /// Whether the half-open segment {origin + t*dir : 0 < t <= tmax} meets E.
    bool segmentHits(const Point& origin, const Point& dir, double tmax) const;
    /// Number of half-open boxes [k*eps, (k+1)*eps)^n meeting E.
    std::size_t boxCount(double eps) const;

    bool mirrorSymmetric(const Point& center, std::size_t axis) const;
    bool axisymmetric(const Point& center, std::size_t axis) const;

private:
    std::size_t n_ = 0;
    std::vector<SetPrimitive> prims_;
    std::optional<Annulus> clip_;
};

/// Open domain: a box interior, a ball, or a shell {rInner < |x - center| < rOuter}.
struct Region {
    enum class Kind { Box, Ball, Shell };
    Kind kind = Kind::Box;
    Box box;
    Point center;
    double rInner = 0.0;
    double rOuter = 0.0;

    static Region fromBox(const Box& b);
    static Region ball(const Point& c, double r);
    static Region shell(const Point& c, double rInner, double rOuter);

    std::size_t dim() const;
    bool contains(const Point& x) const;
    Box boundingBox() const;
    double diameter() const;
    Region scaled(double lambda) const;
    /// Whether reflection through `center` along `axis` (or rotation about that axis) maps the region to itself.
    bool mirrorSymmetric(const Point& c, std::size_t axis) const;
    bool axisymmetric(const Point& c, std::size_t axis) const;
};

/// Greedy thinning keeping points at least `minSep` apart (deterministic, order-preserving).
std::vector<Point> thinPoints(const std::vector<Point>& pts, double minSep);

}  // namespace potkit
