#include "nopath/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace nopath {
namespace {

void two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    const double bb = s - a;
    e = (a - (s - bb)) + (b - bb);
}

// Adds b to a nonoverlapping expansion (increasing magnitude) in place.
void grow(std::vector<double>& e, double b) {
    double q = b;
    std::vector<double> h;
    h.reserve(e.size() + 1);
    for (const double x : e) {
        double hi, lo;
        two_sum(q, x, hi, lo);
        if (lo != 0.0) h.push_back(lo);
        q = hi;
    }
    if (q != 0.0) h.push_back(q);
    e.swap(h);
}

// Sign of (b - a) x (c - a), exact: a floating-point filter first, then
// expansion arithmetic on the error-free differences and products.
int orientation(Point a, Point b, Point c) {
    const double l = (b.x - a.x) * (c.y - a.y);
    const double r = (b.y - a.y) * (c.x - a.x);
    const double v = l - r;
    constexpr double eps = std::numeric_limits<double>::epsilon() / 2;
    const double bound = (3.0 + 16.0 * eps) * eps * (std::abs(l) + std::abs(r));
    if (v > bound || -v > bound) return (v > 0.0) - (v < 0.0);

    double d[4][2];
    two_sum(b.x, -a.x, d[0][0], d[0][1]);
    two_sum(c.y, -a.y, d[1][0], d[1][1]);
    two_sum(b.y, -a.y, d[2][0], d[2][1]);
    two_sum(c.x, -a.x, d[3][0], d[3][1]);
    std::vector<double> e;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const double p = d[0][i] * d[1][j];
            grow(e, p);
            grow(e, std::fma(d[0][i], d[1][j], -p));
            const double q = d[2][i] * d[3][j];
            grow(e, -q);
            grow(e, -std::fma(d[2][i], d[3][j], -q));
        }
    }
    if (e.empty()) return 0;
    return e.back() > 0.0 ? 1 : -1;
}

bool on_segment(Point a, Point b, Point p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

}  // namespace

bool segments_intersect(const Segment& s, const Segment& t) {
    if (std::max(s.a.x, s.b.x) < std::min(t.a.x, t.b.x) || std::max(t.a.x, t.b.x) < std::min(s.a.x, s.b.x) ||
        std::max(s.a.y, s.b.y) < std::min(t.a.y, t.b.y) || std::max(t.a.y, t.b.y) < std::min(s.a.y, s.b.y)) {
        return false;
    }
    const int o1 = orientation(s.a, s.b, t.a);
    const int o2 = orientation(s.a, s.b, t.b);
    const int o3 = orientation(t.a, t.b, s.a);
    const int o4 = orientation(t.a, t.b, s.b);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(s.a, s.b, t.a)) return true;
    if (o2 == 0 && on_segment(s.a, s.b, t.b)) return true;
    if (o3 == 0 && on_segment(t.a, t.b, s.a)) return true;
    if (o4 == 0 && on_segment(t.a, t.b, s.b)) return true;
    return false;
}

}  // namespace nopath
