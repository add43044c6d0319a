#pragma once

#include "potkit/common.hpp"
#include "potkit/grid.hpp"

#include <memory>
#include <utility>
#include <variant>
#include <vector>

namespace potkit {

struct Atom {
    Point location;
    double mass = 0.0;
};

/// Finite sum of point masses.
class AtomicMeasure {
public:
    AtomicMeasure() = default;
    explicit AtomicMeasure(std::vector<Atom> atoms);

    const std::vector<Atom>& atoms() const { return atoms_; }
    double totalMass() const;
    double ballMass(const Point& x, double t) const;
    /// Mass sitting exactly at x (within the shared boundary tolerance).
    double massAt(const Point& x) const;

private:
    std::vector<Atom> atoms_;
};

/// Radial cumulative mass t -> mu(B(center, t)), saturating at the support radius.
class RadialProfile {
public:
    enum class Form { Power, AtomPlusPower, Table };

    static RadialProfile power(double c, double m, double radius);
    static RadialProfile atomPlusPower(double a, double c, double m, double radius);
    /// Right-continuous steps: value v_k holds on [t_k, t_{k+1}). t_0 may be 0 to encode an atom.
    static RadialProfile table(std::vector<std::pair<double, double>> steps);

    Form form() const { return form_; }
    double atom() const { return a_; }
    double coefficient() const { return c_; }
    double exponent() const { return m_; }
    double radius() const { return radius_; }
    const std::vector<std::pair<double, double>>& steps() const { return steps_; }

    double operator()(double t) const;
    double total() const { return (*this)(radius_); }
    /// Same profile, cut at r (mass beyond r removed).
    RadialProfile truncated(double r) const;

private:
    Form form_ = Form::Power;
    double a_ = 0.0, c_ = 0.0, m_ = 0.0;
    double radius_ = 0.0;
    std::vector<std::pair<double, double>> steps_;
};

class RadialProfileMeasure {
public:
    RadialProfileMeasure(Point center, RadialProfile profile);

    const Point& center() const { return center_; }
    const RadialProfile& profile() const { return profile_; }
    double totalMass() const { return profile_.total(); }
    double ballMass(const Point& x, double t) const;

private:
    Point center_;
    RadialProfile profile_;
};

/// Piecewise-constant density on the cells of a grid.
class GridMeasure {
public:
    GridMeasure(EvaluationGrid grid, std::vector<double> density);

    const EvaluationGrid& grid() const { return grid_; }
    const std::vector<double>& density() const { return density_; }
    double cellMass(std::size_t cell) const { return density_[cell] * grid_.cellVolume(); }
    double totalMass() const;
    double ballMass(const Point& x, double t) const;

private:
    EvaluationGrid grid_;
    std::vector<double> density_;
};

using MeasureComponent = std::variant<AtomicMeasure, RadialProfileMeasure, GridMeasure>;

/// A finite sum of components; a plain component is a one-term sum.
class Measure {
public:
    Measure() = default;
    Measure(AtomicMeasure m);
    Measure(RadialProfileMeasure m);
    Measure(GridMeasure m);

    static Measure sum(const std::vector<Measure>& parts);

    const std::vector<MeasureComponent>& components() const { return parts_; }
    std::size_t dim() const;
    bool empty() const { return parts_.empty(); }

    double totalMass() const;
    double ballMass(const Point& x, double t) const;
    /// Atom mass at x summed over components (radial profiles contribute their atom at the center).
    double pointMass(const Point& x) const;
    /// Radius of a ball about `center` containing the support.
    double supportRadius(const Point& center) const;

private:
    std::vector<MeasureComponent> parts_;
};

double ballMass(const Measure& mu, const Point& x, double t);
double totalMass(const Measure& mu);
Measure restrict(const Measure& mu, const Point& center, double radius);

/// Uniform density on the ball B(center, radius) sampled on a grid (cell-center inclusion).
GridMeasure uniformBallGrid(const Point& center, double radius, double density, double h, double halfWidth);

/// Fraction of the sphere |y - c| = s lying in the closed ball B(x, t), with d = |x - c|.
double sphereFractionInBall(int n, double s, double d, double t);

}  // namespace potkit
