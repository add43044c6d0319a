#pragma once

#include "potkit/common.hpp"

#include <vector>

namespace potkit {

/// Straight approach x_k = target + r_k * direction with prescribed distances r_k.
struct ApproachPath {
    Point direction;
    std::vector<double> radii;

    /// r_k = r0 * q^k for k = 0..count-1.
    static ApproachPath geometric(const Point& direction, double r0, double q, int count);
    Point at(const Point& target, std::size_t k) const;
    void validate(std::size_t n) const;
};

/// How the correction term behaves as r -> 0: a power of r, or a power of 1/log(1/r).
enum class CorrectionScale { Power, InverseLog };

struct LimitFit {
    double limit = 0.0;
    double exponent = 0.0;   ///< fitted correction exponent s (0 when the series is flat)
    double tail = 0.0;       ///< |limit - last sample|
    std::vector<double> residuals;
};

/// Extrapolate ratio_k -> limit using the last third of the samples, model ratio = L + c * xi^s.
LimitFit fitLimit(const std::vector<double>& radii, const std::vector<double>& ratios, CorrectionScale scale);

struct AsymptoticReport {
    std::vector<double> radii;
    std::vector<double> ratios;      ///< the normalized quantity whose limit is sought
    std::vector<double> potentials;  ///< raw values at the samples
    LimitFit fit;
    /// Optional second normalization (e.g. log(D/r) instead of log(1/r)).
    std::vector<double> altRatios;
    LimitFit altFit;
    bool hasAlt = false;
};

/// Least-squares slope and intercept of y against x.
std::pair<double, double> linearFit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace potkit
