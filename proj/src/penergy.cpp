#include "potkit/penergy.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

namespace potkit {

// ---------------------------------------------------------------- embedding

LatticeEmbedding LatticeEmbedding::cartesian(int n)
{
    LatticeEmbedding e;
    e.kind = Kind::Cartesian;
    e.ambientDim = n;
    e.center = Point(static_cast<std::size_t>(n));
    return e;
}

LatticeEmbedding LatticeEmbedding::axisymmetric(const Point& center, std::size_t axis)
{
    require(center.dim() >= 3, "axisymmetric lattices need n >= 3");
    require(axis < center.dim(), "symmetry axis out of range");
    LatticeEmbedding e;
    e.kind = Kind::Axisymmetric;
    e.ambientDim = static_cast<int>(center.dim());
    e.center = center;
    e.axis = axis;
    return e;
}

Point LatticeEmbedding::toLattice(const Point& x) const
{
    if (kind == Kind::Cartesian) return x;
    const Point v = x - center;
    const double z = v[axis];
    double r2 = 0.0;
    for (std::size_t i = 0; i < v.dim(); ++i)
        if (i != axis) r2 += v[i] * v[i];
    return Point{z, std::sqrt(r2)};
}

Point LatticeEmbedding::toAmbient(const Point& q) const
{
    if (kind == Kind::Cartesian) return q;
    Point x = center;
    x[axis] += q[0];
    const std::size_t other = axis == 0 ? 1 : 0;
    x[other] += q[1];
    return x;
}

namespace {

using Vec = std::vector<double>;

/// One lattice level with its cell bookkeeping and the reduced functional.
class Level {
public:
    Level(const PProblem& prob, const EvaluationGrid& grid) : prob_(prob), grid_(grid)
    {
        d_ = grid_.dim();
        N_ = grid_.nodeCount();
        h_ = grid_.pitch();
        nc_ = 1 << d_;
        corner_.resize(nc_);
        for (int c = 0; c < nc_; ++c) {
            std::size_t off = 0;
            for (int j = 0; j < d_; ++j)
                if (c & (1 << j)) off += grid_.nodeStride()[j];
            corner_[c] = off;
        }
        // Cells and their weights.
        const auto& cells = grid_.cellsPerAxis();
        const double base = std::pow(h_, d_) / nc_;
        const bool axisym = prob_.embedding.kind == LatticeEmbedding::Kind::Axisymmetric;
        const int n = prob_.embedding.ambientDim;
        const double ring = axisym ? unitSphereArea(n - 1) : 1.0;
        cellBase_.reserve(grid_.cellCount());
        cellWeight_.reserve(grid_.cellCount());
        std::vector<std::int64_t> k(d_, 0);
        for (std::size_t c = 0; c < grid_.cellCount(); ++c) {
            std::size_t b = 0;
            for (int j = 0; j < d_; ++j) b += static_cast<std::size_t>(k[j]) * grid_.nodeStride()[j];
            cellBase_.push_back(b);
            double w = base;
            if (axisym) {
                const double rho = grid_.box().lo[1] + (static_cast<double>(k[1]) + 0.5) * h_;
                w *= ring * std::pow(rho, n - 2);
            }
            cellWeight_.push_back(w);
            int axis = 0;
            while (axis < d_ && ++k[axis] >= cells[axis]) {
                k[axis] = 0;
                ++axis;
            }
        }
        // Dirichlet nodes.
        fixed_.assign(N_, 0);
        fixedVal_.assign(N_, 0.0);
        for (std::size_t i = 0; i < N_; ++i) {
            if (!prob_.dirichlet) break;
            if (auto v = prob_.dirichlet(grid_.node(i))) {
                fixed_[i] = 1;
                fixedVal_[i] = *v;
            }
        }
        // Sources at nearest nodes, weighted by the mirror planes they lie on.
        f_.assign(N_, 0.0);
        for (const auto& s : prob_.sources) {
            const std::size_t i = grid_.nearestNode(s.latticePoint);
            const auto multi = grid_.nodeMulti(i);
            double w = 1.0;
            for (int j = 0; j < d_; ++j)
                if (j < static_cast<int>(prob_.mirrorLow.size()) && prob_.mirrorLow[j] && multi[j] == 0) w *= 0.5;
            if (fixed_[i]) fail(ErrorKind::InvalidArgument, "source mass sits on a Dirichlet node");
            f_[i] += w * s.mass;
        }
        nFree_ = 0;
        for (char c : fixed_)
            if (!c) ++nFree_;
        // Stencil offsets in {-1,0,1}^d.
        ns_ = 1;
        for (int j = 0; j < d_; ++j) ns_ *= 3;
        stencilOff_.resize(ns_);
        for (int s = 0; s < ns_; ++s) {
            long long off = 0;
            int r = s;
            for (int j = 0; j < d_; ++j) {
                off += static_cast<long long>(r % 3 - 1) * static_cast<long long>(grid_.nodeStride()[j]);
                r /= 3;
            }
            stencilOff_[s] = off;
        }
    }

    std::size_t nodes() const { return N_; }
    std::size_t freeCount() const { return nFree_; }
    const std::vector<char>& fixed() const { return fixed_; }
    const Vec& fixedValues() const { return fixedVal_; }
    const Vec& sources() const { return f_; }
    const EvaluationGrid& grid() const { return grid_; }

    void applyDirichlet(Vec& u) const
    {
        for (std::size_t i = 0; i < N_; ++i)
            if (fixed_[i]) u[i] = fixedVal_[i];
    }

    /// A(u) = sum_cells w sum_corners |g|^p; returns (1/p)A - <f,u>; optional gradient of that.
    double functional(const Vec& u, double p, Vec* grad, double* energyOut = nullptr) const
    {
        if (grad) grad->assign(N_, 0.0);
        double A = 0.0;
        double vals[16];
        double g[4];
        const double ih = 1.0 / h_;
        for (std::size_t c = 0; c < cellBase_.size(); ++c) {
            const std::size_t b = cellBase_[c];
            const double W = cellWeight_[c];
            for (int k = 0; k < nc_; ++k) vals[k] = u[b + corner_[k]];
            double cellA = 0.0;
            for (int k = 0; k < nc_; ++k) {
                double s = 0.0;
                for (int j = 0; j < d_; ++j) {
                    g[j] = (vals[k | (1 << j)] - vals[k & ~(1 << j)]) * ih;
                    s += g[j] * g[j];
                }
                if (s == 0.0) continue;
                const double sp = std::pow(s, 0.5 * (p - 2.0));
                cellA += sp * s;
                if (grad) {
                    const double coef = W * sp * ih;
                    for (int j = 0; j < d_; ++j) {
                        (*grad)[b + corner_[k | (1 << j)]] += coef * g[j];
                        (*grad)[b + corner_[k & ~(1 << j)]] -= coef * g[j];
                    }
                }
            }
            A += W * cellA;
        }
        double src = 0.0;
        for (std::size_t i = 0; i < N_; ++i)
            if (f_[i] != 0.0) src += f_[i] * u[i];
        if (grad) {
            for (std::size_t i = 0; i < N_; ++i) {
                (*grad)[i] -= f_[i];
                if (fixed_[i]) (*grad)[i] = 0.0;
            }
        }
        if (energyOut) *energyOut = A;
        return A / p - src;
    }

    /// Regularized Hessian of (1/p)A on free nodes, stored as a 3^d stencil per node.
    void hessian(const Vec& u, double p, double eps2, Vec& S) const
    {
        S.assign(N_ * static_cast<std::size_t>(ns_), 0.0);
        double vals[16];
        double g[4];
        double M[4][4];
        const double ih2 = 1.0 / (h_ * h_);
        const double ih = 1.0 / h_;
        // Stencil slot for the offset from local corner a to local corner c.
        int slot[16][16];
        for (int a = 0; a < nc_; ++a)
            for (int c = 0; c < nc_; ++c) {
                int s = 0, mult = 1;
                for (int j = 0; j < d_; ++j) {
                    const int o = ((c >> j) & 1) - ((a >> j) & 1);
                    s += (o + 1) * mult;
                    mult *= 3;
                }
                slot[a][c] = s;
            }
        for (std::size_t c = 0; c < cellBase_.size(); ++c) {
            const std::size_t b = cellBase_[c];
            const double W = cellWeight_[c];
            for (int k = 0; k < nc_; ++k) vals[k] = u[b + corner_[k]];
            for (int k = 0; k < nc_; ++k) {
                double s = 0.0;
                for (int j = 0; j < d_; ++j) {
                    g[j] = (vals[k | (1 << j)] - vals[k & ~(1 << j)]) * ih;
                    s += g[j] * g[j];
                }
                const double se = s + eps2;
                const double phi = W * std::pow(se, 0.5 * (p - 2.0)) * ih2;
                const double beta = (p - 2.0) / se;
                for (int j = 0; j < d_; ++j)
                    for (int l = 0; l < d_; ++l) M[j][l] = phi * ((j == l ? 1.0 : 0.0) + beta * g[j] * g[l]);
                for (int j = 0; j < d_; ++j) {
                    const int jp = k | (1 << j), jm = k & ~(1 << j);
                    for (int l = 0; l < d_; ++l) {
                        const double m = M[j][l];
                        if (m == 0.0) continue;
                        const int lp = k | (1 << l), lm = k & ~(1 << l);
                        add(S, b, jp, lp, m, slot);
                        add(S, b, jp, lm, -m, slot);
                        add(S, b, jm, lp, -m, slot);
                        add(S, b, jm, lm, m, slot);
                    }
                }
            }
        }
    }

    void matvec(const Vec& S, const Vec& x, Vec& y) const
    {
        y.assign(N_, 0.0);
        for (std::size_t i = 0; i < N_; ++i) {
            if (fixed_[i]) continue;
            const double* row = &S[i * ns_];
            double s = 0.0;
            for (int o = 0; o < ns_; ++o)
                if (row[o] != 0.0) s += row[o] * x[static_cast<std::size_t>(static_cast<long long>(i) + stencilOff_[o])];
            y[i] = s;
        }
    }

    /// Symmetric Gauss-Seidel preconditioner.
    void ssor(const Vec& S, const Vec& r, Vec& z) const
    {
        const int center = (ns_ - 1) / 2;
        z.assign(N_, 0.0);
        for (std::size_t i = 0; i < N_; ++i) {
            if (fixed_[i]) continue;
            const double* row = &S[i * ns_];
            double s = r[i];
            for (int o = 0; o < center; ++o)
                if (row[o] != 0.0) s -= row[o] * z[static_cast<std::size_t>(static_cast<long long>(i) + stencilOff_[o])];
            z[i] = s / row[center];
        }
        for (std::size_t i = N_; i-- > 0;) {
            if (fixed_[i]) continue;
            const double* row = &S[i * ns_];
            double s = 0.0;
            for (int o = center + 1; o < ns_; ++o)
                if (row[o] != 0.0) s += row[o] * z[static_cast<std::size_t>(static_cast<long long>(i) + stencilOff_[o])];
            z[i] -= s / row[center];
        }
    }

    /// Solve S x = b on free nodes; returns iterations (0 for the direct path).
    int solve(const Vec& S, const Vec& b, Vec& x, double relTol) const
    {
        if (d_ <= 2 && nFree_ <= 400000) return solveDirect(S, b, x);
        return solvePcg(S, b, x, relTol);
    }

private:
    void add(Vec& S, std::size_t base, int a, int c, double v, int slot[16][16]) const
    {
        const std::size_t row = base + corner_[a];
        const std::size_t col = base + corner_[c];
        if (fixed_[row] || fixed_[col]) return;
        S[row * ns_ + slot[a][c]] += v;
    }

    int solveDirect(const Vec& S, const Vec& b, Vec& x) const
    {
        if (index_.empty()) {
            index_.assign(N_, -1);
            int k = 0;
            for (std::size_t i = 0; i < N_; ++i)
                if (!fixed_[i]) index_[i] = k++;
        }
        using SpMat = Eigen::SparseMatrix<double>;
        std::vector<Eigen::Triplet<double>> trip;
        trip.reserve(nFree_ * ns_);
        for (std::size_t i = 0; i < N_; ++i) {
            if (fixed_[i]) continue;
            const double* row = &S[i * ns_];
            for (int o = 0; o < ns_; ++o) {
                if (row[o] == 0.0) continue;
                const auto j = static_cast<std::size_t>(static_cast<long long>(i) + stencilOff_[o]);
                trip.emplace_back(index_[i], index_[j], row[o]);
            }
        }
        SpMat A(static_cast<Eigen::Index>(nFree_), static_cast<Eigen::Index>(nFree_));
        A.setFromTriplets(trip.begin(), trip.end());
        Eigen::VectorXd rhs(static_cast<Eigen::Index>(nFree_));
        for (std::size_t i = 0; i < N_; ++i)
            if (!fixed_[i]) rhs[index_[i]] = b[i];
        Eigen::SimplicialLDLT<SpMat> ldlt;
        ldlt.compute(A);
        if (ldlt.info() != Eigen::Success) fail(ErrorKind::NonConvergence, "Hessian factorization failed");
        const Eigen::VectorXd sol = ldlt.solve(rhs);
        x.assign(N_, 0.0);
        for (std::size_t i = 0; i < N_; ++i)
            if (!fixed_[i]) x[i] = sol[index_[i]];
        return 0;
    }

    int solvePcg(const Vec& S, const Vec& b, Vec& x, double relTol) const
    {
        x.assign(N_, 0.0);
        Vec r = b, z, q, Ap;
        for (std::size_t i = 0; i < N_; ++i)
            if (fixed_[i]) r[i] = 0.0;
        const double bnorm = std::sqrt(std::inner_product(r.begin(), r.end(), r.begin(), 0.0));
        if (bnorm == 0.0) return 0;
        ssor(S, r, z);
        q = z;
        double rz = std::inner_product(r.begin(), r.end(), z.begin(), 0.0);
        const int maxIt = 20000;
        for (int it = 1; it <= maxIt; ++it) {
            matvec(S, q, Ap);
            const double qAq = std::inner_product(q.begin(), q.end(), Ap.begin(), 0.0);
            if (!(qAq > 0.0)) return it;
            const double alpha = rz / qAq;
            double rr = 0.0;
            for (std::size_t i = 0; i < N_; ++i) {
                x[i] += alpha * q[i];
                r[i] -= alpha * Ap[i];
                rr += r[i] * r[i];
            }
            if (std::sqrt(rr) <= relTol * bnorm) return it;
            ssor(S, r, z);
            const double rzNew = std::inner_product(r.begin(), r.end(), z.begin(), 0.0);
            const double beta = rzNew / rz;
            rz = rzNew;
            for (std::size_t i = 0; i < N_; ++i) q[i] = z[i] + beta * q[i];
        }
        return maxIt;
    }

    const PProblem& prob_;
    EvaluationGrid grid_;
    int d_ = 0;
    std::size_t N_ = 0;
    double h_ = 0.0;
    int nc_ = 0;
    int ns_ = 0;
    std::vector<std::size_t> corner_;
    std::vector<std::size_t> cellBase_;
    Vec cellWeight_;
    std::vector<char> fixed_;
    Vec fixedVal_;
    Vec f_;
    std::size_t nFree_ = 0;
    std::vector<long long> stencilOff_;
    mutable std::vector<int> index_;
};

double maxAbs(const Vec& v)
{
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

struct NewtonStats {
    int iterations = 0;
    double residual = 0.0;
};

/// Damped Newton on the reduced functional with the true energy in the line search.
NewtonStats newton(const Level& L, double p, Vec& u, double energyTol, double gradTol, int maxIt)
{
    NewtonStats st;
    L.applyDirichlet(u);
    Vec grad, S, step, trial, gtrial;
    double J = L.functional(u, p, &grad);
    const double g0 = std::max(maxAbs(grad), 1e-300);
    double scaleU = 0.0;
    for (std::size_t i = 0; i < L.nodes(); ++i) scaleU = std::max(scaleU, std::abs(u[i]));
    const double diam = L.grid().box().diameter();
    const double floorEps2 = std::pow(1e-9 * std::max(scaleU, 1e-300) / diam, 2);
    for (int it = 0; it < maxIt; ++it) {
        st.residual = maxAbs(grad);
        if (st.residual <= gradTol * g0 || st.residual == 0.0) break;
        // Regularization scale from the current mean squared gradient.
        double meanS = 0.0;
        {
            Vec tmp;
            const double ih = 1.0 / L.grid().pitch();
            std::size_t cnt = 0;
            for (std::size_t i = 0; i < L.nodes(); ++i) {
                const auto& stride = L.grid().nodeStride();
                for (std::size_t j = 0; j < stride.size(); ++j) {
                    const std::size_t k = i + stride[j];
                    if (k < L.nodes() && L.grid().nodeMulti(i)[j] + 1 < static_cast<std::int64_t>(L.grid().nodesAlong(j))) {
                        const double gj = (u[k] - u[i]) * ih;
                        meanS += gj * gj;
                        ++cnt;
                    }
                }
                if (cnt > 20000) break;
            }
            meanS = cnt ? meanS / static_cast<double>(cnt) : 0.0;
        }
        const double eps2 = std::max(1e-10 * meanS, floorEps2);
        L.hessian(u, p, eps2, S);
        Vec rhs(grad.size());
        for (std::size_t i = 0; i < grad.size(); ++i) rhs[i] = -grad[i];
        const double forcing = std::min(1e-2, std::sqrt(st.residual / g0));
        L.solve(S, rhs, step, std::max(forcing, 1e-12));
        double slope = 0.0;
        for (std::size_t i = 0; i < step.size(); ++i) slope += grad[i] * step[i];
        if (!(slope < 0.0)) {
            for (std::size_t i = 0; i < step.size(); ++i) step[i] = -grad[i];
            slope = -std::inner_product(grad.begin(), grad.end(), grad.begin(), 0.0);
        }
        double t = 1.0;
        double Jt = 0.0;
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            trial = u;
            for (std::size_t i = 0; i < u.size(); ++i) trial[i] += t * step[i];
            Jt = L.functional(trial, p, &gtrial);
            if (Jt <= J + 1e-4 * t * slope) {
                accepted = true;
                break;
            }
            // Near convergence energy differences drown in rounding; accept a step that reduces the gradient.
            if (std::abs(Jt - J) <= 1e-14 * std::max(1.0, std::abs(J)) && maxAbs(gtrial) < st.residual) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        ++st.iterations;
        if (!accepted) break;
        const double dJ = std::abs(J - Jt);
        u.swap(trial);
        grad.swap(gtrial);
        const double Jold = J;
        J = Jt;
        st.residual = maxAbs(grad);
        // Rounding floor: the energy no longer moves and the gradient is already small.
        if (dJ <= energyTol * 1e-7 * std::max(std::abs(Jold), 1e-300) && st.residual <= 1e-7 * g0) break;
    }
    st.residual = maxAbs(grad);
    return st;
}

Vec prolongate(const EvaluationGrid& coarse, const Vec& uc, const EvaluationGrid& fine)
{
    Vec uf(fine.nodeCount(), 0.0);
    const int d = fine.dim();
    for (std::size_t i = 0; i < fine.nodeCount(); ++i) {
        const auto K = fine.nodeMulti(i);
        std::vector<int> odd;
        std::vector<std::int64_t> base(d);
        for (int j = 0; j < d; ++j) {
            base[j] = K[j] / 2;
            if (K[j] % 2) odd.push_back(j);
        }
        double s = 0.0;
        const int m = 1 << odd.size();
        for (int mask = 0; mask < m; ++mask) {
            auto c = base;
            for (std::size_t q = 0; q < odd.size(); ++q)
                if (mask & (1 << q)) c[odd[q]] += 1;
            s += uc[coarse.nodeIndex(c)];
        }
        uf[i] = s / m;
    }
    return uf;
}

}  // namespace

double pFunctional(const PProblem& problem, const std::vector<double>& u, std::vector<double>* gradient)
{
    Level L(problem, problem.grid);
    return L.functional(u, problem.p, gradient);
}

PSolution solvePEnergy(const PProblem& prob)
{
    require(prob.p > 1.0 && std::isfinite(prob.p), "p must exceed 1");
    require(static_cast<bool>(prob.dirichlet), "a Dirichlet rule is required");
    const int d = prob.grid.dim();
    require(prob.embedding.latticeDim() == d, "lattice dimension does not match the embedding");
    if (prob.embedding.kind == LatticeEmbedding::Kind::Axisymmetric) {
        require(prob.grid.box().lo[1] >= -1e-12, "axisymmetric lattices need rho >= 0");
        for (const auto& s : prob.sources)
            require(std::abs(s.latticePoint[1]) <= 1e-12, "axisymmetric sources must sit on the axis");
    }

    // Level hierarchy by repeated halving.
    std::vector<EvaluationGrid> grids{prob.grid};
    if (prob.continuation) {
        while (grids.size() < 4) {
            const auto& g = grids.back();
            bool ok = true;
            for (auto c : g.cellsPerAxis())
                if (c % 2 != 0 || c < 16) ok = false;
            if (!ok) break;
            grids.emplace_back(g.box(), 2.0 * g.pitch());
        }
    }
    std::reverse(grids.begin(), grids.end());

    Vec u;
    int totalIt = 0;
    double residual = 0.0;
    std::unique_ptr<Level> last;
    for (std::size_t lev = 0; lev < grids.size(); ++lev) {
        auto L = std::make_unique<Level>(prob, grids[lev]);
        if (lev == 0) {
            u.assign(L->nodes(), 0.0);
            double mean = 0.0;
            std::size_t cnt = 0;
            for (std::size_t i = 0; i < L->nodes(); ++i)
                if (L->fixed()[i]) {
                    mean += L->fixedValues()[i];
                    ++cnt;
                }
            if (cnt) std::fill(u.begin(), u.end(), mean / static_cast<double>(cnt));
            // Linear (p = 2) solve as the starting point.
            if (prob.p != 2.0) {
                const auto st = newton(*L, 2.0, u, 1e-12, 1e-10, 5);
                totalIt += st.iterations;
            }
        } else {
            u = prolongate(grids[lev - 1], u, grids[lev]);
        }
        const bool finest = lev + 1 == grids.size();
        const auto st = newton(*L, prob.p, u, finest ? prob.energyTol : 1e-6,
                               finest ? prob.gradTol : 1e-6, prob.maxNewton);
        totalIt += st.iterations;
        residual = st.residual;
        last = std::move(L);
    }

    Vec grad;
    double A = 0.0;
    const double J = last->functional(u, prob.p, &grad, &A);
    double g0 = 0.0;
    {
        // Reference scale: gradient of the functional at the Dirichlet-only start.
        Vec u0(u.size(), 0.0), g0v;
        last->applyDirichlet(u0);
        last->functional(u0, prob.p, &g0v);
        g0 = maxAbs(g0v);
    }
    residual = maxAbs(grad);
    if (!(residual <= std::max(1e-6 * g0, 1e-13)) || !std::isfinite(J))
        fail(ErrorKind::NonConvergence, "p-energy descent did not reach first-order stationarity");

    PSolution sol;
    sol.grid = last->grid();
    sol.embedding = prob.embedding;
    sol.mirrorLow = prob.mirrorLow;
    sol.mirrorLow.resize(d, false);
    sol.u = std::move(u);
    sol.fixed = last->fixed();
    sol.source = last->sources();
    sol.p = prob.p;
    double mult = 1.0;
    for (bool m : sol.mirrorLow)
        if (m) mult *= 2.0;
    sol.energy = A * mult;
    sol.functional = J * mult;
    sol.residual = residual;
    sol.iterations = totalIt;
    sol.levels = static_cast<int>(grids.size());
    return sol;
}

// ---------------------------------------------------------------- solution queries

namespace {

Point foldToLattice(const PSolution& s, const Point& x)
{
    Point q = s.embedding.toLattice(x);
    const Box& b = s.grid.box();
    for (std::size_t j = 0; j < q.dim(); ++j)
        if (j < s.mirrorLow.size() && s.mirrorLow[j] && q[j] < b.lo[j]) q[j] = 2.0 * b.lo[j] - q[j];
    return q;
}

}  // namespace

double PSolution::valueAt(const Point& x) const
{
    const Point q = foldToLattice(*this, x);
    const Box& b = grid.box();
    const int d = grid.dim();
    const double h = grid.pitch();
    require(b.contains(q, 1e-9 * h), "evaluation point lies outside the lattice");
    std::vector<std::int64_t> base(d);
    std::vector<double> frac(d);
    for (int j = 0; j < d; ++j) {
        const double t = std::clamp((q[j] - b.lo[j]) / h, 0.0, static_cast<double>(grid.cellsPerAxis()[j]));
        auto k = static_cast<std::int64_t>(std::floor(t));
        k = std::min<std::int64_t>(k, grid.cellsPerAxis()[j] - 1);
        base[j] = k;
        frac[j] = t - static_cast<double>(k);
    }
    double s = 0.0;
    for (int mask = 0; mask < (1 << d); ++mask) {
        double w = 1.0;
        auto c = base;
        for (int j = 0; j < d; ++j) {
            if (mask & (1 << j)) {
                c[j] += 1;
                w *= frac[j];
            } else {
                w *= 1.0 - frac[j];
            }
        }
        if (w != 0.0) s += w * u[grid.nodeIndex(c)];
    }
    return s;
}

double PSolution::minOverBall(const Point& center, double radius) const
{
    const Point q = foldToLattice(*this, center);
    const int d = grid.dim();
    const double h = grid.pitch();
    const Box& b = grid.box();
    std::vector<std::int64_t> lo(d), hi(d), k(d);
    for (int j = 0; j < d; ++j) {
        lo[j] = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil((q[j] - radius - b.lo[j]) / h)));
        hi[j] = std::min<std::int64_t>(grid.cellsPerAxis()[j], static_cast<std::int64_t>(std::floor((q[j] + radius - b.lo[j]) / h)));
    }
    double m = valueAt(center);
    for (int j = 0; j < d; ++j)
        if (lo[j] > hi[j]) return m;
    k = lo;
    while (true) {
        const std::size_t i = grid.nodeIndex(k);
        if (distance(grid.node(i), q) <= radius) m = std::min(m, u[i]);
        int axis = 0;
        while (axis < d && ++k[axis] > hi[axis]) {
            k[axis] = lo[axis];
            ++axis;
        }
        if (axis == d) break;
    }
    return m;
}

double PSolution::pairing(const std::vector<double>& phi) const
{
    require(phi.size() == u.size(), "test function must live on the lattice nodes");
    PProblem prob;
    prob.grid = grid;
    prob.embedding = embedding;
    prob.p = p;
    prob.mirrorLow = mirrorLow;
    const auto& fx = fixed;
    const auto& uu = u;
    const EvaluationGrid& g = grid;
    prob.dirichlet = [&](const Point& lp) -> std::optional<double> {
        const std::size_t i = g.nearestNode(lp);
        if (fx[i]) return uu[i];
        return std::nullopt;
    };
    Level L(prob, grid);
    Vec grad;
    L.functional(u, p, &grad);
    double s = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) s += grad[i] * phi[i];
    return s;
}

}  // namespace potkit
