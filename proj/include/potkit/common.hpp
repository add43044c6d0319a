#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace potkit {

/// Extended-real sentinel used for potentials that blow up (never clamped).
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

inline bool isInfinite(double v) { return std::isinf(v) && v > 0; }

enum class ErrorKind {
    InvalidArgument,
    RepresentationLimit,
    PathTooShort,
    HypothesisViolated,
    NonConvergence,
    ResolutionTooCoarse,
    NoSignChange,
    DegenerateCone,
    SampleViolation,
    WindowEmpty,
    Degenerate,
    Schema,
};

const char* errorKindName(ErrorKind kind);

/// Single exception type for the library; `kind()` carries the contract-level category.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

inline void require(bool condition, const std::string& message)
{
    if (!condition) fail(ErrorKind::InvalidArgument, message);
}

/// A point of R^n in model units.
class Point {
public:
    Point() = default;
    explicit Point(std::size_t n, double fill = 0.0) : c_(n, fill) {}
    Point(std::initializer_list<double> coords) : c_(coords) {}
    explicit Point(std::vector<double> coords) : c_(std::move(coords)) {}

    std::size_t dim() const noexcept { return c_.size(); }
    double& operator[](std::size_t i) { return c_[i]; }
    double operator[](std::size_t i) const { return c_[i]; }
    std::span<const double> coords() const noexcept { return c_; }
    const std::vector<double>& vec() const noexcept { return c_; }

    bool finite() const;
    double norm() const;

    Point& operator+=(const Point& o);
    Point& operator-=(const Point& o);
    Point& operator*=(double s);

    friend Point operator+(Point a, const Point& b) { return a += b; }
    friend Point operator-(Point a, const Point& b) { return a -= b; }
    friend Point operator*(Point a, double s) { return a *= s; }
    friend Point operator*(double s, Point a) { return a *= s; }
    friend bool operator==(const Point&, const Point&) = default;

private:
    std::vector<double> c_;
};

double dot(const Point& a, const Point& b);
double distance(const Point& a, const Point& b);
double distanceSquared(const Point& a, const Point& b);
Point unitVector(std::size_t n, std::size_t axis);
Point normalized(const Point& v);

/// |S^{n-1}|, the surface area of the unit sphere in R^n.
double unitSphereArea(int n);
/// Volume of the unit ball in R^n.
double unitBallVolume(int n);

/// Closed-ball membership with the shared relative tolerance for boundary atoms.
inline bool withinClosedBall(double dist, double t) { return dist <= t * (1.0 + 1e-12); }

}  // namespace potkit
