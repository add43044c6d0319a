#pragma once

#include "potkit/asymptotic.hpp"
#include "potkit/measures.hpp"

#include <string>
#include <vector>

namespace potkit {

enum class WolffQuadrature { ExactPiecewise, LogGrid };

struct WolffParams {
    double p = 2.0;
    double r = 1.0;
    WolffQuadrature quadrature = WolffQuadrature::ExactPiecewise;
    int pointsPerDecade = 64;

    void validate(int n) const;
    double gamma(int n) const { return (n - p) / (p - 1.0); }
};

/// One interval of the t-integral with the method used on it.
struct WolffPiece {
    double t0 = 0.0;
    double t1 = 0.0;
    double massAtStart = 0.0;
    std::string method;  ///< "constant", "power", "log" or "quadrature"
    double value = 0.0;
};

struct WolffResult {
    double value = 0.0;
    std::vector<WolffPiece> pieces;
};

/// W(x, r) = int_0^r (mu(B(x,t)) / t^(n-p))^(1/(p-1)) dt/t with per-piece audit trail.
WolffResult wolffPotentialDetailed(const Measure& mu, const WolffParams& params, const Point& x);
double wolffPotential(const Measure& mu, const WolffParams& params, const Point& x);

/// Closed form for a single atom of mass a at distance d < r.
double wolffSingleAtom(int n, double p, double a, double d, double r);

/// Predicted limit of the scaled potential for an atom of mass a: a^(1/(p-1))/gamma, or a^(1/(n-1)) when p = n.
double wolffAtomLimit(int n, double p, double a);

/// Scaled samples |x-x0|^gamma W (or W/log(1/|x-x0|) when p = n) and their fitted limit.
AsymptoticReport wolffAsymptoticReport(const Measure& mu, const WolffParams& params, const Point& x0,
                                       const ApproachPath& path);

struct WolffDecayReport {
    std::vector<double> radii;
    std::vector<double> values;
    double bound = 0.0;             ///< (n-p-m+eps)/(p-1)
    double slope = 0.0;             ///< measured growth exponent
    double smallestConstant = 0.0;  ///< smallest C with W <= C |x-x0|^-bound on the path
    bool withinBound = false;
};

/// Growth check for a profile with mu(B(x0,t)) <= C t^m, 0 < m < n-p, along an approach path to its center.
WolffDecayReport wolffDecayCheck(const RadialProfileMeasure& mu, double C, double m, const WolffParams& params,
                                 double epsilon, const ApproachPath& path);

}  // namespace potkit
