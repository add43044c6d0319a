#pragma once

#include "potkit/asymptotic.hpp"
#include "potkit/measures.hpp"

#include <optional>

namespace potkit {

struct RieszParams {
    double alpha = 2.0;
    /// Diameter D of the domain; only used by the logarithmic kernel (alpha = n).
    double diameter = 0.0;

    void validate(int n) const;
    bool logarithmic(int n) const { return alpha == static_cast<double>(n); }
};

/// k(r) = r^(alpha-n), or log(D/r) when alpha = n.
double rieszKernel(int n, const RieszParams& params, double r);

/// Mean of the kernel over the sphere |y| = s seen from a point at distance d from its center.
double sphericalMeanKernel(int n, const RieszParams& params, double s, double d);

/// R_mu(x); returns kInfinity at atoms and wherever the integral diverges.
double rieszPotential(const Measure& mu, const RieszParams& params, const Point& x);

/// Ratios R(x_k)/|x_k-p|^(alpha-n) (or /log(1/|x_k-p|) when alpha = n) and their fitted limit.
AsymptoticReport rieszAsymptoticReport(const Measure& mu, const RieszParams& params, const Point& p,
                                       const ApproachPath& path);

struct RieszDecayReport {
    std::vector<double> radii;
    std::vector<double> potentials;
    std::vector<double> massRatios;  ///< mu(B(p,r))/r^d along the path
    double growthConstant = 0.0;     ///< C in mu(B(p,t)) <= C t^d (given or estimated)
    double exponentBound = 0.0;      ///< n - alpha - d
    double slope = 0.0;              ///< measured growth exponent -dlog R/dlog r
    double smallestConstant = 0.0;   ///< smallest C' with R(x_k) <= C' r_k^-(n-alpha-d)
    bool withinBound = false;
};

RieszDecayReport rieszDecayCheck(const Measure& mu, const RieszParams& params, const Point& p, double d,
                                 const ApproachPath& path, std::optional<double> growthConstant = std::nullopt,
                                 double tol = 0.05);

}  // namespace potkit
