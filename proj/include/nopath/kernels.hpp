#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference version and,
// on x86-64 builds, an AVX2 version; the active table is chosen once at
// startup from CPUID and can be pinned for equivalence testing.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace nopath::kernels {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
    // min_i (qx - xs[i])^2 + (qy - ys[i])^2, +inf on empty input.
    double (*min_dist2)(double qx, double qy, std::span<const double> xs,
                        std::span<const double> ys);
    // Does some closed disk (cx[i], cy[i], r[i]) contain (px, py)?
    bool (*any_disk_contains)(double px, double py, std::span<const double> cx,
                              std::span<const double> cy, std::span<const double> r);
    // out[i] = |values[i]| < bounds[i] ? 1 : 0; returns the number of ones.
    std::size_t (*abs_below)(std::span<const double> values, std::span<const double> bounds,
                             std::span<std::uint8_t> out);
};

const KernelTable& scalar_table();
// Null when the build has no AVX2 variant.
const KernelTable* avx2_table();

bool cpu_has_avx2();
Isa active_isa();
// Pins the dispatch target; requesting Avx2 on a machine without it keeps Scalar.
void set_isa(Isa isa);
std::string_view isa_name(Isa isa);

const KernelTable& active();

inline double min_dist2(double qx, double qy, std::span<const double> xs,
                        std::span<const double> ys) {
    return active().min_dist2(qx, qy, xs, ys);
}
inline bool any_disk_contains(double px, double py, std::span<const double> cx,
                              std::span<const double> cy, std::span<const double> r) {
    return active().any_disk_contains(px, py, cx, cy, r);
}
inline std::size_t abs_below(std::span<const double> values, std::span<const double> bounds,
                             std::span<std::uint8_t> out) {
    return active().abs_below(values, bounds, out);
}

}  // namespace nopath::kernels
