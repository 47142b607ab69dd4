#include "nopath/kernels.hpp"

#include <cmath>
#include <limits>

namespace nopath::kernels {
namespace {

double min_dist2_scalar(double qx, double qy, std::span<const double> xs,
                        std::span<const double> ys) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = qx - xs[i];
        const double dy = qy - ys[i];
        const double d2 = dx * dx + dy * dy;
        if (d2 < best) best = d2;
    }
    return best;
}

bool any_disk_contains_scalar(double px, double py, std::span<const double> cx,
                              std::span<const double> cy, std::span<const double> r) {
    for (std::size_t i = 0; i < cx.size(); ++i) {
        const double dx = px - cx[i];
        const double dy = py - cy[i];
        if (dx * dx + dy * dy <= r[i] * r[i]) return true;
    }
    return false;
}

std::size_t abs_below_scalar(std::span<const double> values, std::span<const double> bounds,
                             std::span<std::uint8_t> out) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const bool hit = std::fabs(values[i]) < bounds[i];
        out[i] = hit ? 1 : 0;
        count += hit;
    }
    return count;
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable table{min_dist2_scalar, any_disk_contains_scalar, abs_below_scalar};
    return table;
}

}  // namespace nopath::kernels
