#pragma once

#include "potkit/common.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace potkit {

/// Axis-aligned box [lo, hi].
struct Box {
    Point lo;
    Point hi;

    Box() = default;
    Box(Point lo_, Point hi_);

    static Box cube(const Point& center, double halfWidth);

    std::size_t dim() const { return lo.dim(); }
    bool contains(const Point& x, double slack = 0.0) const;
    double diameter() const;
    Point center() const;
    Box scaled(double lambda) const;
};

/// Uniform lattice over a box. Cells are the h-cubes, nodes their corners.
class EvaluationGrid {
public:
    EvaluationGrid() = default;
    EvaluationGrid(Box box, double h);

    int dim() const { return static_cast<int>(box_.dim()); }
    double pitch() const { return h_; }
    const Box& box() const { return box_; }

    /// Number of cells along each axis.
    const std::vector<std::int64_t>& cellsPerAxis() const { return cells_; }
    std::size_t cellCount() const { return cellCount_; }
    double cellVolume() const;
    Point cellCenter(std::size_t index) const;
    std::size_t cellIndex(const std::vector<std::int64_t>& multi) const;
    /// Cell containing x (clamped to the box); x on a shared face goes to the upper cell.
    std::size_t locateCell(const Point& x) const;

    std::size_t nodesAlong(std::size_t axis) const { return static_cast<std::size_t>(cells_[axis] + 1); }
    std::size_t nodeCount() const { return nodeCount_; }
    Point node(std::size_t index) const;
    std::vector<std::int64_t> nodeMulti(std::size_t index) const;
    std::size_t nodeIndex(const std::vector<std::int64_t>& multi) const;
    /// Linear stride of each axis in node numbering (axis 0 fastest).
    const std::vector<std::size_t>& nodeStride() const { return nodeStride_; }
    bool isBoundaryNode(std::size_t index) const;
    std::size_t nearestNode(const Point& x) const;

private:
    Box box_;
    double h_ = 0.0;
    std::vector<std::int64_t> cells_;
    std::vector<std::size_t> nodeStride_;
    std::size_t cellCount_ = 0;
    std::size_t nodeCount_ = 0;
};

}  // namespace potkit
