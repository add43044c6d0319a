#pragma once

#include "potkit/common.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace potkit {

using Eigenvalues = std::vector<double>;

/// Symmetric cone in eigenvalue space.
struct ConeSpec {
    enum class Kind { A, R, Gamma, Custom };
    Kind kind = Kind::Gamma;
    double parameter = 1.0;                             ///< p for A, r for R, k for Gamma
    std::function<double(const Eigenvalues&)> F;        ///< Custom only: cone = {F >= 0}
    double degree = 1.0;                                ///< homogeneity degree of F

    static ConeSpec A(double p);
    static ConeSpec R(int r);
    static ConeSpec Gamma(int k);
    static ConeSpec custom(std::function<double(const Eigenvalues&)> F, double degree);

    /// Checks the parameter against the dimension; custom F is spot-checked for symmetry.
    void validate(std::size_t n) const;
    std::string name() const;
};

/// Elementary symmetric functions sigma_0..sigma_k from the coefficients of prod (1 + lambda_i x).
std::vector<double> elementarySymmetric(const Eigenvalues& lambda, int k);

/// min_k {(p - 2) lambda_k + sum lambda}.
double aCone(const Eigenvalues& lambda, double p);
/// Sorted-ascending (n - r) sum_{i<=r} lambda_i + r sum_{i>r} lambda_i.
double rCone(const Eigenvalues& lambda, int r);

bool memberA(const Eigenvalues& lambda, double p);
bool memberR(const Eigenvalues& lambda, int r);
bool memberGamma(const Eigenvalues& lambda, int k);
bool member(const Eigenvalues& lambda, const ConeSpec& cone);

/// Defining function of the cone; for Gamma the binding sigma_k.
double coneFunction(const Eigenvalues& lambda, const ConeSpec& cone);

struct InclusionOptions {
    std::size_t samples = 100000;
    std::uint64_t seed = 0;
    std::size_t raySteps = 1000;      ///< points on the (-a, 1, ..., 1) family inside the inner cone
    std::size_t keep = 16;            ///< counterexamples kept verbatim
};

struct InclusionReport {
    std::string inner;
    std::string outer;
    std::size_t n = 0;
    std::size_t drawn = 0;            ///< random sphere points drawn
    std::size_t tested = 0;           ///< points of the inner cone tested against the outer
    std::size_t counterexampleCount = 0;
    std::vector<Eigenvalues> counterexamples;
    double innerRay = 0.0;            ///< a* with (-a*, 1, ..., 1) on the inner boundary
    bool holds() const { return counterexampleCount == 0; }
};

InclusionReport inclusionCheck(std::size_t n, const ConeSpec& inner, const ConeSpec& outer,
                               const InclusionOptions& options = {});

/// Largest a in (0, n - 1] with (-a, 1, ..., 1) in the cone, to machine precision; infinity when the whole range is inside.
double boundaryRay(std::size_t n, const ConeSpec& cone);

/// p with (-(n-1)/(p-1), 1, ..., 1) on the cone boundary; infinity when F(-a, 1, ..., 1) has no sign change on (0, n - 1].
double pGamma(std::size_t n, const ConeSpec& cone);

/// n(k - 1)/(n - k) + 2.
double pGammaK(int n, int k);

struct BridgeReport {
    double pGamma = 0.0;
    bool logProfile = false;
    double exponent = 0.0;            ///< u ~ |x - x0|^exponent when not logarithmic
    std::size_t checked = 0;
};

/// Checks -lambda(D^2 u) against the cone on every sample and returns the predicted singular profile.
BridgeReport fullyNonlinearBridge(const std::vector<Eigenvalues>& hessianEigenvalues, const ConeSpec& cone);

}  // namespace potkit
