// Compiled with -mavx2; only reached after a CPUID check.
#include "nopath/kernels.hpp"

#include <immintrin.h>

#include <cmath>
#include <limits>

namespace nopath::kernels {
namespace {

// Products and sums are kept as separate mul/add (no FMA) so results are
// bit-identical to the scalar reference.
double min_dist2_avx2(double qx, double qy, std::span<const double> xs,
                      std::span<const double> ys) {
    const std::size_t n = xs.size();
    const __m256d vqx = _mm256_set1_pd(qx);
    const __m256d vqy = _mm256_set1_pd(qy);
    __m256d best = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dx = _mm256_sub_pd(vqx, _mm256_loadu_pd(xs.data() + i));
        const __m256d dy = _mm256_sub_pd(vqy, _mm256_loadu_pd(ys.data() + i));
        const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
        best = _mm256_min_pd(best, d2);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, best);
    double out = lanes[0];
    for (int k = 1; k < 4; ++k) out = lanes[k] < out ? lanes[k] : out;
    for (; i < n; ++i) {
        const double dx = qx - xs[i];
        const double dy = qy - ys[i];
        const double d2 = dx * dx + dy * dy;
        if (d2 < out) out = d2;
    }
    return out;
}

bool any_disk_contains_avx2(double px, double py, std::span<const double> cx,
                            std::span<const double> cy, std::span<const double> r) {
    const std::size_t n = cx.size();
    const __m256d vpx = _mm256_set1_pd(px);
    const __m256d vpy = _mm256_set1_pd(py);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d dx = _mm256_sub_pd(vpx, _mm256_loadu_pd(cx.data() + i));
        const __m256d dy = _mm256_sub_pd(vpy, _mm256_loadu_pd(cy.data() + i));
        const __m256d vr = _mm256_loadu_pd(r.data() + i);
        const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
        const __m256d inside = _mm256_cmp_pd(d2, _mm256_mul_pd(vr, vr), _CMP_LE_OQ);
        if (_mm256_movemask_pd(inside) != 0) return true;
    }
    for (; i < n; ++i) {
        const double dx = px - cx[i];
        const double dy = py - cy[i];
        if (dx * dx + dy * dy <= r[i] * r[i]) return true;
    }
    return false;
}

std::size_t abs_below_avx2(std::span<const double> values, std::span<const double> bounds,
                           std::span<std::uint8_t> out) {
    const std::size_t n = values.size();
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_andnot_pd(sign_mask, _mm256_loadu_pd(values.data() + i));
        const __m256d b = _mm256_loadu_pd(bounds.data() + i);
        const int bits = _mm256_movemask_pd(_mm256_cmp_pd(v, b, _CMP_LT_OQ));
        for (int k = 0; k < 4; ++k) {
            const std::uint8_t hit = (bits >> k) & 1;
            out[i + k] = hit;
            count += hit;
        }
    }
    for (; i < n; ++i) {
        const bool hit = std::fabs(values[i]) < bounds[i];
        out[i] = hit ? 1 : 0;
        count += hit;
    }
    return count;
}

}  // namespace

const KernelTable* avx2_table() {
    static const KernelTable table{min_dist2_avx2, any_disk_contains_avx2, abs_below_avx2};
    return &table;
}

}  // namespace nopath::kernels
