#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <memory>

#include "nopath/chain.hpp"
#include "nopath/continua.hpp"
#include "nopath/errors.hpp"

using namespace nopath;

namespace {

std::shared_ptr<const PTildeOracle> stage1_ptilde() {
    static const auto p = [] {
        const auto tower = build_tower(default_initial_chain(4), 1, 0.2);
        auto q = std::make_shared<const QSet>(tower.back(), QSet::frame_of(tower.front()), 0.004);
        return std::make_shared<const PTildeOracle>(q, 3);
    }();
    return p;
}

// Stadium of half-width w and half-height a centred at c: within w of the
// vertical core segment.
bool in_stadium(Point q, Point c, double w, double a) {
    const double dy = std::max(0.0, std::abs(q.y - c.y) - (a - w));
    return std::hypot(q.x - c.x, dy) < w;
}

}  // namespace

TEST_SUITE("continua") {
TEST_CASE("sin pinch") {
    CHECK(sin_pinch({kPi / 2, 0.25}).y == doctest::Approx(0.25));
    CHECK(sin_pinch({0.0, 0.25}).y == 0.0);
    CHECK(sin_pinch({kPi / 6, 0.2}).y == doctest::Approx(0.1));
}

TEST_CASE("Q lands in the strip") {
    const auto p = stage1_ptilde();
    const QSet& q = p->q_set();
    for (const Disk& d : q.chain().links()) {
        const Point c = q.to_q(d.center);
        CHECK(q.contains(c));
        CHECK(c.x >= 0.0);
        CHECK(c.x <= kPi);
        CHECK(std::abs(c.y) <= 0.25);
        const Point back = q.to_frame(c);
        CHECK(back.x == doctest::Approx(d.center.x));
    }
}

TEST_CASE("P tilde membership") {
    const auto p = stage1_ptilde();
    CHECK(p->contains({0.0, 0.0}));
    CHECK_FALSE(p->contains({kPi / 2, 0.3}));
    CHECK_FALSE(p->contains({0.0, 0.1}));  // pinch points carry x = 0 only
    const QSet& q = p->q_set();
    for (const Disk& d : q.chain().links()) {
        const Point c = sin_pinch(q.to_q(d.center));
        if (c.x <= 0.0 || c.x >= kPi) continue;
        CHECK(p->contains(c));
        CHECK(p->contains({c.x + kPi, c.y}));
        CHECK(p->contains({c.x - 3 * kPi, c.y}));
        CHECK_FALSE(p->contains({c.x + 4 * kPi, c.y}));  // beyond the K = 3 tiles
    }
}

TEST_CASE("distance lower bounds are sound") {
    const auto p = stage1_ptilde();
    const auto& samples = p->all_boundary_samples();
    for (const Point q : {Point{1.0, 0.6}, Point{-2.0, -0.4}, Point{0.5, 0.0}, Point{7.0, 1.0}}) {
        const double d = p->distance_lower_bound(q);
        double brute = kInf;
        for (std::size_t i = 0; i < samples.size(); ++i) brute = std::min(brute, distance(q, samples[i]));
        if (p->contains(q)) {
            CHECK(d == 0.0);
        } else {
            CHECK(d <= brute);
            CHECK(p->distance_lower_bound(q, 0.01) <= std::min(d, 0.01) + 1e-15);
        }
    }
}

TEST_CASE("G is P tilde turned into the cone") {
    const auto g = rotate_quarter(stage1_ptilde());
    CHECK(g->contains({0.0, 0.0}));
    CHECK_FALSE(g->contains({1.0, -1.0}));
    const Point u = g->rotate({1.0, 0.1});
    CHECK(g->unrotate(u).x == doctest::Approx(1.0));
    CHECK(g->unrotate(u).y == doctest::Approx(0.1));
}

TEST_CASE("Example B membership") {
    const ExampleBSet b(stage1_ptilde());
    CHECK(b.piece({0.0, 0.3}) == BPiece::L);
    CHECK(b.contains({0.0, 0.5}));
    CHECK(b.piece({0.0, 0.5}) == BPiece::CPlus);
    CHECK(b.piece({0.0, -0.5}) == BPiece::CMinus);
    CHECK_FALSE(b.contains({1.0, 0.0}));
    CHECK(b.piece({0.0, 0.0}) == BPiece::L);
}

TEST_CASE("Omega hat classification") {
    const OmegaSpec spec;
    spec.validate();
    CHECK(omega_hat_classify({kPi, 0.0}, spec, 0.01) == OmegaClass::Outside);
    CHECK(omega_hat_classify({-kPi / 2, 0.0}, spec, 0.01) == OmegaClass::Inside);
    CHECK(omega_hat_classify({kPi / 2, 0.0}, spec, 0.01) == OmegaClass::Outside);
    CHECK(omega_hat_classify({kPi / 2, spec.p}, spec, 0.01) == OmegaClass::Inside);
    for (double s = -3.0; s <= 3.0; s += 0.37) {
        for (double t = -2.0; t <= 2.0; t += 0.29) {
            const bool expect = in_stadium({s, t}, {-kPi / 2, 0.0}, spec.half_width, spec.a) ||
                                in_stadium({s, t}, {kPi / 2, spec.p}, spec.half_width, spec.a) ||
                                in_stadium({s, t}, {kPi / 2, -spec.p}, spec.half_width, spec.a);
            CHECK(omega_hat_contains({s, t}, spec) == expect);
            CHECK(omega_hat_classify({s, t}, spec, 0.05) ==
                  omega_hat_classify({s, t + 2 * spec.p}, spec, 0.05));
        }
    }
}

TEST_CASE("every slice of Omega hat has positive measure") {
    OmegaSpec spec;
    CHECK(slice_measure(0.0, spec, 1024) > 0.0);
    CHECK(slice_measure(spec.p, spec, 1024) > 0.0);
    double lo = kInf;
    for (int i = 0; i < 1000; ++i) lo = std::min(lo, slice_measure(2 * spec.p * i / 1000.0, spec, 1024));
    CHECK(lo > 0.0);
    for (const OmegaShape shape : {OmegaShape::ChainPolygon}) {
        spec.shape = shape;
        double m = kInf;
        for (int i = 0; i < 200; ++i) m = std::min(m, slice_measure(2 * spec.p * i / 200.0, spec, 1024));
        CHECK(m > 0.0);
    }
    // With p beyond 2a the columns leave a gap.
    OmegaSpec wide;
    wide.p = 2.5;
    CHECK(slice_measure(1.25, wide, 1024) == 0.0);
    CHECK_THROWS_AS(slice_measure(0.0, spec, 16), InvalidArgument);
}

TEST_CASE("Omega hat boundary samples lie on the boundary") {
    const OmegaHatBoundary ob{OmegaSpec{}};
    const PointCloud b = ob.boundary_samples({-kPi, kPi, 0.0, 3.0});
    REQUIRE(b.size() > 0);
    for (std::size_t i = 0; i < b.size(); i += 7) CHECK(ob.distance_lower_bound(b[i]) < 1e-12);
}
}
