#pragma once

#include <cstddef>
#include <vector>

#include "nopath/geometry.hpp"

namespace nopath {

// Uniform bucket grid over a static point set; buckets are stored
// contiguously so each one is a SoA span for the SIMD distance kernel.
class PointIndex {
public:
    PointIndex() = default;
    PointIndex(const PointCloud& points, double cell);

    bool empty() const { return xs_.empty(); }
    std::size_t size() const { return xs_.size(); }
    // Squared distance to the nearest indexed point (+inf when empty).
    // With a finite cap the search stops once every remaining point is
    // farther than cap; the result is then only known to be >= cap^2.
    double nearest_dist2(Point q, double cap = kInf) const;
    double nearest_distance(Point q, double cap = kInf) const;

private:
    double x0_ = 0.0;
    double y0_ = 0.0;
    double cell_ = 1.0;
    int nx_ = 0;
    int ny_ = 0;
    std::vector<std::size_t> start_;
    std::vector<double> xs_;
    std::vector<double> ys_;
};

}  // namespace nopath
