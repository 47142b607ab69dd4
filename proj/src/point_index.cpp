#include "nopath/point_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

#include "nopath/errors.hpp"
#include "nopath/kernels.hpp"

namespace nopath {

PointIndex::PointIndex(const PointCloud& points, double cell) : cell_(cell) {
    if (!(cell > 0.0)) throw InvalidArgument("index cell must be positive");
    if (points.empty()) return;
    const auto [xlo, xhi] = std::minmax_element(points.xs.begin(), points.xs.end());
    const auto [ylo, yhi] = std::minmax_element(points.ys.begin(), points.ys.end());
    x0_ = *xlo;
    y0_ = *ylo;
    nx_ = static_cast<int>((*xhi - x0_) / cell) + 1;
    ny_ = static_cast<int>((*yhi - y0_) / cell) + 1;
    const std::size_t buckets = static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_);
    std::vector<std::size_t> bucket_of(points.size());
    start_.assign(buckets + 1, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const int cx = std::min(nx_ - 1, static_cast<int>((points.xs[i] - x0_) / cell));
        const int cy = std::min(ny_ - 1, static_cast<int>((points.ys[i] - y0_) / cell));
        bucket_of[i] = static_cast<std::size_t>(cy) * static_cast<std::size_t>(nx_) + static_cast<std::size_t>(cx);
        ++start_[bucket_of[i] + 1];
    }
    for (std::size_t b = 0; b < buckets; ++b) start_[b + 1] += start_[b];
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    xs_.resize(points.size());
    ys_.resize(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const std::size_t slot = fill[bucket_of[i]]++;
        xs_[slot] = points.xs[i];
        ys_[slot] = points.ys[i];
    }
}

double PointIndex::nearest_dist2(Point q, double cap) const {
    double best = std::numeric_limits<double>::infinity();
    if (xs_.empty()) return best;
    const int qx = std::clamp(static_cast<int>(std::floor((q.x - x0_) / cell_)), 0, nx_ - 1);
    const int qy = std::clamp(static_cast<int>(std::floor((q.y - y0_) / cell_)), 0, ny_ - 1);
    const int max_ring = std::max(nx_, ny_);
    const auto scan = [&](int cx, int cy) {
        if (cx < 0 || cy < 0 || cx >= nx_ || cy >= ny_) return;
        const std::size_t b = static_cast<std::size_t>(cy) * static_cast<std::size_t>(nx_) + static_cast<std::size_t>(cx);
        const std::size_t lo = start_[b];
        const std::size_t n = start_[b + 1] - lo;
        if (n == 0) return;
        best = std::min(best, kernels::min_dist2(q.x, q.y, std::span(xs_).subspan(lo, n),
                                                 std::span(ys_).subspan(lo, n)));
    };
    for (int ring = 0; ring <= max_ring; ++ring) {
        if (ring == 0) {
            scan(qx, qy);
        } else {
            for (int d = -ring; d <= ring; ++d) {
                scan(qx + d, qy - ring);
                scan(qx + d, qy + ring);
            }
            for (int d = -ring + 1; d <= ring - 1; ++d) {
                scan(qx - ring, qy + d);
                scan(qx + ring, qy + d);
            }
        }
        // Every unscanned point is at least ring * cell away from q.
        const double reach = ring * cell_;
        if (best <= reach * reach) break;
        if (reach >= cap) return std::min(best, cap * cap);
    }
    return best;
}

double PointIndex::nearest_distance(Point q, double cap) const { return std::sqrt(nearest_dist2(q, cap)); }

}  // namespace nopath
