#include "potkit/grid.hpp"

#include <algorithm>
#include <cmath>

namespace potkit {

Box::Box(Point lo_, Point hi_) : lo(std::move(lo_)), hi(std::move(hi_))
{
    require(lo.dim() == hi.dim() && lo.dim() >= 1, "box corners must share a dimension");
    require(lo.finite() && hi.finite(), "box corners must be finite");
    for (std::size_t i = 0; i < lo.dim(); ++i) require(lo[i] < hi[i], "box must have positive extent");
}

Box Box::cube(const Point& center, double halfWidth)
{
    Point lo = center, hi = center;
    for (std::size_t i = 0; i < center.dim(); ++i) {
        lo[i] -= halfWidth;
        hi[i] += halfWidth;
    }
    return Box(lo, hi);
}

bool Box::contains(const Point& x, double slack) const
{
    for (std::size_t i = 0; i < dim(); ++i)
        if (x[i] < lo[i] - slack || x[i] > hi[i] + slack) return false;
    return true;
}

double Box::diameter() const { return distance(lo, hi); }

Point Box::center() const { return (lo + hi) * 0.5; }

Box Box::scaled(double lambda) const { return Box(lo * lambda, hi * lambda); }

EvaluationGrid::EvaluationGrid(Box box, double h) : box_(std::move(box)), h_(h)
{
    const int n = dim();
    require(n >= 2 && n <= 4, "evaluation grids support n in {2,3,4}");
    require(h > 0.0 && std::isfinite(h), "grid pitch must be positive");
    cells_.resize(n);
    nodeStride_.resize(n);
    cellCount_ = 1;
    nodeCount_ = 1;
    for (int i = 0; i < n; ++i) {
        const double span = (box_.hi[i] - box_.lo[i]) / h;
        const double rounded = std::round(span);
        require(rounded >= 1 && std::abs(span - rounded) <= 1e-9 * std::max(1.0, span),
                "grid pitch must divide the box evenly");
        cells_[i] = static_cast<std::int64_t>(rounded);
        nodeStride_[i] = nodeCount_;
        cellCount_ *= static_cast<std::size_t>(cells_[i]);
        nodeCount_ *= static_cast<std::size_t>(cells_[i] + 1);
    }
}

double EvaluationGrid::cellVolume() const { return std::pow(h_, dim()); }

Point EvaluationGrid::cellCenter(std::size_t index) const
{
    Point x(dim());
    for (int i = 0; i < dim(); ++i) {
        const auto k = static_cast<std::int64_t>(index % cells_[i]);
        index /= cells_[i];
        x[i] = box_.lo[i] + (static_cast<double>(k) + 0.5) * h_;
    }
    return x;
}

std::size_t EvaluationGrid::cellIndex(const std::vector<std::int64_t>& multi) const
{
    std::size_t idx = 0, stride = 1;
    for (int i = 0; i < dim(); ++i) {
        idx += static_cast<std::size_t>(multi[i]) * stride;
        stride *= static_cast<std::size_t>(cells_[i]);
    }
    return idx;
}

std::size_t EvaluationGrid::locateCell(const Point& x) const
{
    std::vector<std::int64_t> multi(dim());
    for (int i = 0; i < dim(); ++i) {
        auto k = static_cast<std::int64_t>(std::floor((x[i] - box_.lo[i]) / h_));
        multi[i] = std::clamp<std::int64_t>(k, 0, cells_[i] - 1);
    }
    return cellIndex(multi);
}

Point EvaluationGrid::node(std::size_t index) const
{
    Point x(dim());
    for (int i = 0; i < dim(); ++i) {
        const auto k = static_cast<std::int64_t>(index % (cells_[i] + 1));
        index /= (cells_[i] + 1);
        // Interpolating from both ends keeps nodes on the far face exact.
        const double t = static_cast<double>(k) / static_cast<double>(cells_[i]);
        x[i] = box_.lo[i] * (1.0 - t) + box_.hi[i] * t;
    }
    return x;
}

std::vector<std::int64_t> EvaluationGrid::nodeMulti(std::size_t index) const
{
    std::vector<std::int64_t> multi(dim());
    for (int i = 0; i < dim(); ++i) {
        multi[i] = static_cast<std::int64_t>(index % (cells_[i] + 1));
        index /= (cells_[i] + 1);
    }
    return multi;
}

std::size_t EvaluationGrid::nodeIndex(const std::vector<std::int64_t>& multi) const
{
    std::size_t idx = 0;
    for (int i = 0; i < dim(); ++i) idx += static_cast<std::size_t>(multi[i]) * nodeStride_[i];
    return idx;
}

bool EvaluationGrid::isBoundaryNode(std::size_t index) const
{
    for (int i = 0; i < dim(); ++i) {
        const auto k = static_cast<std::int64_t>(index % (cells_[i] + 1));
        index /= (cells_[i] + 1);
        if (k == 0 || k == cells_[i]) return true;
    }
    return false;
}

std::size_t EvaluationGrid::nearestNode(const Point& x) const
{
    std::vector<std::int64_t> multi(dim());
    for (int i = 0; i < dim(); ++i) {
        auto k = static_cast<std::int64_t>(std::llround((x[i] - box_.lo[i]) / h_));
        multi[i] = std::clamp<std::int64_t>(k, 0, cells_[i]);
    }
    return nodeIndex(multi);
}

}  // namespace potkit
