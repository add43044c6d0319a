#pragma once

#include "potkit/capacity.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace potkit {

enum class WienerWeighting {
    RieszAlpha,  ///< C^alpha ratios for alpha < n, i * C^n(E meet omega_i, Omega_i) for alpha = n
    CapP,        ///< cap_p ratios, p < n
    CapN,        ///< i^(n-1) cap_n(E meet omega_i, Omega_i)
};

struct WienerOptions {
    AnnulusOptions annulus;
    double floorFactor = 4.0;  ///< terms at or below floorFactor times the single-node floor count as zero
    int jobs = 1;
};

struct WienerTerm {
    int i = 0;
    double term = 0.0;      ///< weighted series term after flooring
    double raw = 0.0;       ///< weighted term before flooring
    double numerator = 0.0;
    double denominator = 0.0;
    bool belowFloor = false;
};

struct WienerSeries {
    std::vector<WienerTerm> terms;
    double floor = 0.0;     ///< weighted term of a single lattice node at the same relative pitch
    std::vector<double> values() const;
};

/// First I Wiener-type terms of E at x0 over dyadic annuli of scale delta.
WienerSeries wienerTerms(const ParametricSet& E, const Point& x0, double param, int I, WienerWeighting weighting,
                         const WienerOptions& options = {});

enum class Verdict { Thin, NotThin, Inconclusive };
const char* verdictName(Verdict v);

struct TailModel {
    std::string kind = "none";  ///< "none", "zero", "power" or "geometric"
    double rate = 0.0;          ///< power exponent b in c i^-b, or ratio r in c r^i
    double coefficient = 0.0;
    double bound = 0.0;         ///< estimate of sum over i > I (infinite when not summable)
};

struct ThinnessReport {
    std::vector<double> terms;
    std::vector<double> partialSums;
    double partialSum = 0.0;
    TailModel tail;
    double lastQuarterIncrement = 0.0;
    double trailingMin = 0.0;
    Verdict verdict = Verdict::Inconclusive;
    std::string evidence;
};

struct ClassifyOptions {
    double cauchyTol = 0.05;  ///< last-quarter increment relative to the partial sum
    double summableMargin = 0.05;  ///< power exponents must exceed 1 + margin
};

ThinnessReport classifyThin(const std::vector<double>& terms, const ClassifyOptions& options = {});

/// Deterministic low-discrepancy search for a direction v with {x0 + t v : 0 < t <= delta} missing E.
std::optional<Point> escapingRay(const ParametricSet& E, const Point& x0, double delta, std::size_t directions,
                                 std::uint64_t seed = 0);

/// Unit directions from a Halton sequence pushed through the inverse normal CDF.
std::vector<Point> sphereDirections(std::size_t n, std::size_t count, std::uint64_t seed);

/// Union of balls B(2^-i e_1, 2^-i i^-s) for i = first..last around x0 along axis 0.
ParametricSet ballFamily(const Point& x0, double s, int first, int last);

}  // namespace potkit
