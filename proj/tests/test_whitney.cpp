#include <doctest.h>

#include <cmath>

#include "nopath/errors.hpp"
#include "nopath/jet.hpp"
#include "nopath/nonlin.hpp"
#include "nopath/whitney.hpp"

using namespace nopath;

namespace {

struct Origin final : ClosedSet {
    bool contains(Point q) const override { return q.x == 0.0 && q.y == 0.0; }
    double distance_lower_bound(Point q, double cap) const override { return std::min(cap, norm(q)); }
};

struct VerticalLine final : ClosedSet {
    bool contains(Point q) const override { return q.x == 0.0; }
    double distance_lower_bound(Point q, double cap) const override { return std::min(cap, std::abs(q.x)); }
};

struct Everything final : ClosedSet {
    bool contains(Point) const override { return true; }
    double distance_lower_bound(Point, double) const override { return 0.0; }
    double depth_lower_bound(Point) const override { return kInf; }
};

}  // namespace

TEST_SUITE("whitney") {
TEST_CASE("bump profile") {
    CHECK(BumpProfile::value(0.0) == 1.0);
    CHECK(BumpProfile::value(0.5) == 1.0);
    CHECK(BumpProfile::value(1.0) == 0.0);
    CHECK(BumpProfile::value(2.0) == 0.0);
    const double v = BumpProfile::value(0.75);
    CHECK(v > 0.0);
    CHECK(v < 1.0);
    // Derivatives against central differences.
    for (double t : {0.55, 0.7, 0.9}) {
        const auto d = BumpProfile::derivatives(t);
        const double h = 1e-5;
        CHECK(d[1] == doctest::Approx((BumpProfile::value(t + h) - BumpProfile::value(t - h)) / (2 * h)).epsilon(1e-6));
        const auto dp = BumpProfile::derivatives(t + h), dm = BumpProfile::derivatives(t - h);
        for (int k = 1; k <= 3; ++k) {
            CHECK(d[k + 1] == doctest::Approx((dp[k] - dm[k]) / (2 * h)).epsilon(1e-5));
        }
    }
    const auto& s = BumpProfile::sup_norms();
    CHECK(s[0] == doctest::Approx(1.0));
    for (int k = 1; k <= BumpProfile::kMaxOrder; ++k) CHECK(s[k] > 0.0);
}

TEST_CASE("jets carry exact Taylor coefficients") {
    using J = Jet<4>;
    const J x = J::variable(0.3);
    const J y = exp(x * x) / (J::constant(1.0) + x);
    // f = e^{x^2}/(1+x); f' = e^{x^2}(2x(1+x) - 1)/(1+x)^2
    const double e = std::exp(0.09);
    CHECK(y.d(0) == doctest::Approx(e / 1.3));
    CHECK(y.d(1) == doctest::Approx(e * (2 * 0.3 * 1.3 - 1) / (1.3 * 1.3)));
}

TEST_CASE("flatten") {
    CHECK(flatten(0.0) == 0.0);
    CHECK(flatten(1.0) == doctest::Approx(0.3678794412));
    CHECK(flatten(1e-3) == 0.0);
    CHECK_THROWS_AS(flatten(-1.0), InvalidArgument);
}

TEST_CASE("cover of the complement of a point") {
    const double r_min = 1.0 / 64;
    const WhitneyCover c = WhitneyCover::build(Origin{}, {-1, 1, -1, 1}, r_min);
    REQUIRE(!c.balls().empty());
    for (const WhitneyBall& b : c.balls()) CHECK(norm(b.center) >= b.radius);
    const int n = 256;
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            const Point q{-1.0 + 2.0 * i / n, -1.0 + 2.0 * j / n};
            if (h_eval(c, q).value == 0.0) CHECK(norm(q) <= r_min * std::sqrt(2.0));
        }
    }
    CHECK(h_eval(c, {0, 0}, 2).value == 0.0);
    CHECK(h_eval(c, {0, 0}, 2).grad == Point{0, 0});
    for (std::size_t i = 0; i < c.balls().size(); i += 17) {
        const WhitneyBall& b = c.balls()[i];
        CHECK(h_eval(c, b.center).value >= b.weight);
        CHECK(b.weight == doctest::Approx(1.0 / (b.gamma * std::ldexp(1.0, b.level))));
        CHECK(c.covering_ball(b.center) >= 0);
    }
}

TEST_CASE("cover of the whole window is empty") {
    const WhitneyCover c = WhitneyCover::build(Everything{}, {-1, 1, -1, 1}, 0.05);
    CHECK(c.balls().empty());
    CHECK(h_eval(c, {0.3, 0.2}).value == 0.0);
}

TEST_CASE("balls avoid a line") {
    const WhitneyCover c = WhitneyCover::build(VerticalLine{}, {-1, 1, -1, 1}, 0.02);
    REQUIRE(!c.balls().empty());
    for (const WhitneyBall& b : c.balls()) CHECK(std::abs(b.center.x) >= b.radius);
    for (double y = -0.9; y < 0.9; y += 0.1) CHECK(h_eval(c, {0.0, y}, 1).value == 0.0);
}

TEST_CASE("h gradient and Hessian match finite differences") {
    const WhitneyCover c = WhitneyCover::build(Origin{}, {-1, 1, -1, 1}, 1.0 / 64);
    const double h = 1e-6;
    for (const Point q : {Point{0.3, 0.1}, Point{-0.5, 0.45}, Point{0.05, -0.07}}) {
        const HValue v = h_eval(c, q, 2);
        const double fx = (h_eval(c, {q.x + h, q.y}).value - h_eval(c, {q.x - h, q.y}).value) / (2 * h);
        const double fy = (h_eval(c, {q.x, q.y + h}).value - h_eval(c, {q.x, q.y - h}).value) / (2 * h);
        CHECK(v.grad.x == doctest::Approx(fx).epsilon(1e-5));
        CHECK(v.grad.y == doctest::Approx(fy).epsilon(1e-5));
        const double fxy = (h_eval(c, {q.x, q.y + h}, 1).grad.x - h_eval(c, {q.x, q.y - h}, 1).grad.x) / (2 * h);
        CHECK(v.hxy == doctest::Approx(fxy).epsilon(1e-4));
    }
}

TEST_CASE("series truncation converges to the sum") {
    const WhitneyCover c = WhitneyCover::build(Origin{}, {-1, 1, -1, 1}, 1.0 / 64);
    const Point q{0.2, -0.3};
    CHECK(c.eval_truncated(q, c.balls().size()) == doctest::Approx(h_eval(c, q).value));
    CHECK(c.eval_truncated(q, 0) == 0.0);
}

TEST_CASE("degenerate windows are rejected") {
    CHECK_THROWS_AS(WhitneyCover::build(Origin{}, {1, 1, -1, 1}, 0.1), DegenerateWindow);
    CHECK_THROWS_AS(WhitneyCover::build(Origin{}, {-1, 1, -1, 1}, 0.0), InvalidArgument);
}

TEST_CASE("signed h separates the two sides of G") {
    ExampleConfig cfg;
    cfg.grid_n = 256;
    const auto a = build_example_a(cfg);
    CHECK(a->h_hat({-2.0, 2.0}).value < 0.0);
    CHECK(a->h_hat({2.0, -2.0}).value > 0.0);
    CHECK(a->h_hat({0.0, 0.0}).value == 0.0);
    CHECK(signed_h(a->cover(), a->labeling(), a->minus_component(), {0.0, 0.0}) == 0.0);
    CHECK(signed_h(a->cover(), a->labeling(), a->minus_component(), {-2.0, 2.0}) < 0.0);
    CHECK(signed_h(a->cover(), a->labeling(), a->minus_component(), {2.0, -2.0}) > 0.0);
}
}
