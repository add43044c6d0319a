#pragma once

#include "potkit/penergy.hpp"
#include "potkit/sets.hpp"

#include <string>

namespace potkit {

struct CapacityEstimate {
    double value = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    bool hasCertificate = false;
    std::string method;     ///< "lp-discrete", "grid-variational" or "closed-form"
    double h = 0.0;         ///< pitch actually used
    int iterations = 0;
    std::size_t unknowns = 0;
};

struct RieszCapacityOptions {
    std::size_t maxSites = 6000;      ///< sites on E; the pitch is coarsened beyond this
    std::size_t maxCandidates = 1500; ///< interior candidate sites off E (alpha > 2 only)
    int maxIterations = 200;
};

/// Least total mass on Omega whose Riesz potential is >= 1 on E, discretized by patch collocation on E.
CapacityEstimate rieszCapacity(const ParametricSet& E, const Region& omega, double alpha, double h,
                               const RieszCapacityOptions& options = {});

/// Mean of |tau e - y|^beta (or log(1/|tau e - y|) when logarithmic) over the unit k-ball of R^k.
double patchKernel(int k, double beta, bool logarithmic, double tau);

enum class SymmetryMode { Auto, None };

struct PCapacityOptions {
    SymmetryMode symmetry = SymmetryMode::Auto;
    bool continuation = true;
    double energyTol = 1e-8;
};

/// Discrete condenser energy: min sum |grad u|^p over lattice functions with u = 1 within h/2 of K, u = 0 off Omega.
CapacityEstimate pCapacity(const ParametricSet& K, const Region& omega, double p, double h,
                           const PCapacityOptions& options = {});

/// Grid p-energy problem behind pCapacity (exposed so callers can inspect the lattice and symmetry choice).
PProblem pCapacityProblem(const ParametricSet& K, const Region& omega, double p, double h,
                          const PCapacityOptions& options = {});

/// cap_p of the closed ball B(r) in B(R): |S^(n-1)| gamma^(p-1) (r^-gamma - R^-gamma)^(1-p), or |S^(n-1)| log(R/r)^(1-n) at p = n.
double radialCondenserCapacity(int n, double p, double r, double R);

enum class CapacityKind { Riesz, Variational };

struct AnnulusOptions {
    double delta = 1.0;
    double hRel = 1.0 / 64.0;          ///< pitch as a fraction of 2^-i delta
    RieszCapacityOptions riesz;
    PCapacityOptions variational;
};

struct AnnulusRatio {
    int i = 0;
    double numerator = 0.0;   ///< capacity of E meet omega_i relative to Omega_i
    double denominator = 0.0; ///< capacity of the sphere of radius 2^-i delta relative to B(x0, 2^(1-i) delta)
    double ratio = 0.0;
    double h = 0.0;
};

/// Capacity of the reference condenser (sphere of radius 2^-i delta in the doubled ball) at the matched pitch.
double annulusDenominator(std::size_t n, int i, CapacityKind kind, double param, const AnnulusOptions& options);

/// i-th Wiener ratio with both capacities at the pitch hRel 2^-i delta.
AnnulusRatio annulusCapacityRatio(const ParametricSet& E, const Point& x0, int i, CapacityKind kind, double param,
                                  const AnnulusOptions& options = {});

/// Closed annulus omega_i and open shell Omega_i around x0.
Annulus dyadicAnnulus(const Point& x0, int i, double delta);
Region dyadicShell(const Point& x0, int i, double delta);

}  // namespace potkit
