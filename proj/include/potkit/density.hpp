#pragma once

#include "potkit/measures.hpp"
#include "potkit/sets.hpp"

#include <vector>

namespace potkit {

/// Samples of r^-d mu(B_r(x)) on a decreasing ladder.
struct DensityProfile {
    Point x;
    double d = 0.0;
    std::vector<double> radii;
    std::vector<double> values;
    double trend = 0.0;            ///< fitted slope of log value against log(1/r) on the trailing half
    double limsupEstimate = 0.0;   ///< infinity when the trailing values keep growing
};

/// r0 q^k for k = 0..count-1.
std::vector<double> geometricLadder(double r0, double q, int count);

DensityProfile upperDensity(const Measure& mu, const Point& x, double d, const std::vector<double>& ladder,
                            double growthTol = 0.05);

struct BoxCountReport {
    std::vector<double> scales;
    std::vector<double> counts;
    double dimension = 0.0;        ///< -slope of log count against log scale
};

BoxCountReport boxCountingDimension(const ParametricSet& E, const std::vector<double>& scales);

/// Middle-thirds Cantor set on [a, a + length e_axis], as 2^depth closed segments.
ParametricSet cantorSet(const Point& a, std::size_t axis, double length, int depth);

}  // namespace potkit
