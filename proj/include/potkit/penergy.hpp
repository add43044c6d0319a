#pragma once

#include "potkit/common.hpp"
#include "potkit/grid.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace potkit {

/// Maps ambient points to lattice coordinates. Axisymmetric lattices are (z, rho) half-planes.
struct LatticeEmbedding {
    enum class Kind { Cartesian, Axisymmetric };
    Kind kind = Kind::Cartesian;
    int ambientDim = 0;
    Point center;        ///< axisymmetric: a point on the symmetry axis
    std::size_t axis = 0;

    static LatticeEmbedding cartesian(int n);
    static LatticeEmbedding axisymmetric(const Point& center, std::size_t axis);

    Point toLattice(const Point& x) const;
    Point toAmbient(const Point& latticePt) const;
    int latticeDim() const { return kind == Kind::Cartesian ? ambientDim : 2; }
};

struct PSource {
    Point latticePoint;
    double mass = 0.0;
};

/// Discrete problem: minimize (1/p) A(u) - <f, u> over lattice functions with the given Dirichlet nodes.
struct PProblem {
    EvaluationGrid grid;                 ///< lattice (in lattice coordinates)
    LatticeEmbedding embedding;
    double p = 2.0;
    /// Fixed value at a node, or nullopt for a free (natural-boundary) node. Receives the node's lattice point.
    std::function<std::optional<double>(const Point&)> dirichlet;
    std::vector<PSource> sources;
    std::vector<bool> mirrorLow;         ///< per lattice axis: low face is a reflection plane
    double energyTol = 1e-8;             ///< relative energy change
    double gradTol = 1e-10;              ///< relative to the initial gradient
    int maxNewton = 200;
    bool continuation = true;            ///< coarse-to-fine warm start
};

class PSolution {
public:
    EvaluationGrid grid;
    LatticeEmbedding embedding;
    std::vector<bool> mirrorLow;
    std::vector<double> u;
    std::vector<char> fixed;
    std::vector<double> source;          ///< nodal source weights actually used
    double p = 2.0;
    double energy = 0.0;                 ///< integral of |grad u|^p over the full (unreduced) domain
    double functional = 0.0;             ///< (1/p) energy - <mu, u>, full domain
    double residual = 0.0;               ///< max-norm of the free-node gradient of the reduced functional
    int iterations = 0;
    int levels = 1;

    /// Multilinear interpolation at an ambient point (mirror images folded back).
    double valueAt(const Point& x) const;
    /// Minimum of nodal values over lattice nodes inside the ambient ball (plus the center value).
    double minOverBall(const Point& center, double radius) const;
    /// <D(A/p)(u), phi> for a nodal test function on the reduced lattice.
    double pairing(const std::vector<double>& phi) const;
    /// Ambient point of lattice node i.
    Point nodePoint(std::size_t i) const { return embedding.toAmbient(grid.node(i)); }
};

PSolution solvePEnergy(const PProblem& problem);

/// Reduced-lattice value of (1/p) A(u) - <f, u> and its gradient for given nodal values (exposed for tests).
double pFunctional(const PProblem& problem, const std::vector<double>& u, std::vector<double>* gradient);

}  // namespace potkit
