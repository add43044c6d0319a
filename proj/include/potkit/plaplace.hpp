#pragma once

#include "potkit/asymptotic.hpp"
#include "potkit/measures.hpp"
#include "potkit/penergy.hpp"

#include <functional>
#include <vector>

namespace potkit {

/// m G_p(x, x0) with G_p = |x - x0|^(-(n-p)/(p-1)) for p < n and -log|x - x0| for p = n.
struct FundamentalSolution {
    int n = 3;
    double p = 2.0;
    double m = 1.0;
    Point x0;

    /// Coefficient making -Delta_p(m G_p) the unit point mass: ((p-1)/(n-p)) |S^(n-1)|^(-1/(p-1)), or |S^(n-1)|^(-1/(n-1)).
    static double unitMassCoefficient(int n, double p);
    static FundamentalSolution unitMass(const Point& x0, double p);

    double profile(double r) const;  ///< G_p at distance r
    double operator()(const Point& x) const { return m * profile(distance(x, x0)); }
    double exponent() const { return (n - p) / (p - 1.0); }
};

struct PDirichletOptions {
    LatticeEmbedding embedding;        ///< Cartesian when ambientDim is 0
    std::vector<bool> mirrorLow;
    double energyTol = 1e-8;
    double gradTol = 1e-10;
    int maxNewton = 200;
    bool continuation = true;
};

/// Minimize (1/p) sum |grad_h u|^p - sum u mu_h with u = g on the lattice boundary (natural on the axis and mirror faces).
PSolution solvePDirichlet(const EvaluationGrid& grid, const Measure& mu, double p,
                          const std::function<double(const Point&)>& boundary, const PDirichletOptions& options = {});

/// Flux of |grad u|^(p-2) d_nu u through the sphere of radius rho for u = m G_p with the unit-mass m,
/// using centered differences of pitch h and a cubed-sphere rule of the same pitch.
double fluxNormalization(double p, int n, double rho, double h);

struct EnvelopeSample {
    Point x;
    double r = 0.0;
    double u = 0.0;
    double wolffR = 0.0;
    double wolff2R = 0.0;
    double infU = 0.0;
    double lowerRatio = 0.0;   ///< u / W(x, r); NaN when W = 0
    double upperRatio = 0.0;   ///< u / (inf_B(x,r) u + W(x, 2r))
    bool hasLower = false;
};

struct EnvelopeReport {
    std::vector<EnvelopeSample> samples;
    double c1 = kInfinity;     ///< smallest lower ratio
    double c2 = 0.0;           ///< largest upper ratio
};

/// Empirical constants in c1 W(x, r) <= u(x) <= c2 (inf_B(x,r) u + W(x, 2r)).
EnvelopeSample envelopeSample(const PSolution& solution, const Measure& mu, double p, const Point& x, double r);
EnvelopeReport envelopeCheck(const PSolution& solution, const Measure& mu, double p, const std::vector<Point>& xs,
                             const std::vector<double>& rs);

struct SuperAsymptoticReport {
    AsymptoticReport asymptotic;
    double m = 0.0;               ///< predicted coefficient
    double c0 = 0.0;              ///< smallest c0 with u >= m G_p - c0 on the window
    double ratioMin = 0.0;
    double ratioMax = 0.0;
    double maxRelDeviation = 0.0; ///< max |u / G_p - m| / m on the window
    double windowLo = 0.0;
    double windowHi = 0.0;
};

/// u / G_p along the path restricted to [windowLo, windowHi], with its fitted limit.
SuperAsymptoticReport superAsymptoticReport(const std::function<double(const Point&)>& u, int n, double p, double m,
                                            const Point& x0, const ApproachPath& path, double windowLo,
                                            double windowHi);

}  // namespace potkit
