#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace mlg {

using Point = std::vector<double>;

/// Axis-aligned box with a uniform closed lattice of `grid` points per axis.
struct Box {
    std::vector<std::pair<double, double>> axes;
    int grid = 2;

    int dim() const { return static_cast<int>(axes.size()); }
    std::size_t pointCount() const;
    /// Lattice points in lexicographic order, first axis slowest; corners included.
    std::vector<Point> lattice() const;
    /// Lattice points at least `margin` cells away from every face.
    std::vector<Point> interior(int margin) const;
    double spacing(int axis) const;
};

/// Worker count: MLG_THREADS when set and positive, otherwise the hardware concurrency.
unsigned workerCount();

/// Calls fn(i) for i in [0, count) across worker threads. Results must be written
/// to per-index slots; the call returns after all indices are done. The first
/// exception thrown by any worker is rethrown.
void parallelFor(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace mlg
