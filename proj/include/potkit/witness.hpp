#pragma once

#include "potkit/thinness.hpp"
#include "potkit/wolff.hpp"

#include <optional>
#include <string>
#include <vector>

namespace potkit {

struct WitnessOptions {
    int n = 3;
    int first = 2;                ///< first ball index; the i = 1 ball touches x0 and would never be thin
    int annuli = 10;              ///< Wiener terms computed
    int atoms = 60;               ///< atoms placed (i = first..first+atoms-1)
    double r = 1.0;               ///< Wolff upper limit
    std::size_t directions = 4096;
    std::uint64_t seed = 0;
    WienerOptions wiener;
};

/// Per-atom samples of the scaled potential |x|^gamma W(x, r).
struct WitnessAtomSample {
    int i = 0;
    double mass = 0.0;
    double centerScaled = 0.0;     ///< at the atom itself (+infinity)
    double claimedBound = 0.0;     ///< ((p-1)/(n-p)) i
    double probeScaled = 0.0;      ///< at x_i + rho_i/2 e_perp, inside the i-th ball
};

struct WitnessReport {
    int n = 3;
    double p = 0.0;
    double s = 0.0;
    double gamma = 0.0;
    Measure mu;
    ParametricSet E;
    double totalMass = 0.0;
    WienerSeries series;
    ThinnessReport thinness;
    std::vector<WitnessAtomSample> atoms;
    bool centersDiverge = false;   ///< centerScaled >= claimedBound for every sampled atom
    std::optional<Point> ray;
    std::vector<double> rayRadii;
    std::vector<double> rayScaled;
    bool rayDecays = false;        ///< trailing ray values decrease to below 1% of the largest
};

/// Atoms a_i = 2^(-i(n-p)) i^(p-1) at 2^-i e_1 with the ball family E_s, checked for thinness, blow-up and escape.
WitnessReport thinWitnessBlowup(double s, double p, const WitnessOptions& options = {});

/// Witness atoms only (no capacity work).
AtomicMeasure witnessMeasure(int n, double p, int first, int count);

}  // namespace potkit
