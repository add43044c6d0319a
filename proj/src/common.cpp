#include "potkit/common.hpp"

#include <numbers>

namespace potkit {

const char* errorKindName(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::RepresentationLimit: return "representation-limit";
    case ErrorKind::PathTooShort: return "path-too-short";
    case ErrorKind::HypothesisViolated: return "hypothesis-violated";
    case ErrorKind::NonConvergence: return "nonconvergence";
    case ErrorKind::ResolutionTooCoarse: return "resolution-too-coarse";
    case ErrorKind::NoSignChange: return "no-sign-change";
    case ErrorKind::DegenerateCone: return "degenerate-cone";
    case ErrorKind::SampleViolation: return "sample-violation";
    case ErrorKind::WindowEmpty: return "window-empty";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::Schema: return "schema";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(errorKindName(kind)) + ": " + message), kind_(kind)
{
}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

bool Point::finite() const
{
    for (double v : c_)
        if (!std::isfinite(v)) return false;
    return true;
}

double Point::norm() const
{
    double s = 0.0;
    for (double v : c_) s += v * v;
    return std::sqrt(s);
}

Point& Point::operator+=(const Point& o)
{
    require(o.dim() == dim(), "point dimension mismatch");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Point& Point::operator-=(const Point& o)
{
    require(o.dim() == dim(), "point dimension mismatch");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Point& Point::operator*=(double s)
{
    for (double& v : c_) v *= s;
    return *this;
}

double dot(const Point& a, const Point& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

double distanceSquared(const Point& a, const Point& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double distance(const Point& a, const Point& b) { return std::sqrt(distanceSquared(a, b)); }

Point unitVector(std::size_t n, std::size_t axis)
{
    Point e(n);
    e[axis] = 1.0;
    return e;
}

Point normalized(const Point& v)
{
    const double len = v.norm();
    require(len > 0.0, "cannot normalize a zero vector");
    return v * (1.0 / len);
}

double unitSphereArea(int n)
{
    return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

double unitBallVolume(int n) { return unitSphereArea(n) / n; }

}  // namespace potkit
