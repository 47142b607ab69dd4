#include <doctest.h>

#include "nopath/errors.hpp"
#include "nopath/verify.hpp"

using namespace nopath;

TEST_SUITE("verify") {
TEST_CASE("hausdorff distance") {
    CHECK(hausdorff({{0, 0}}, {{3, 4}}) == 5.0);
    const std::vector<Point> a{{0, 0}, {1, 0}, {2, 2}};
    CHECK(hausdorff(a, a) == 0.0);
    const std::vector<Point> b{{0, 0}};
    CHECK(directed_hausdorff(b, a) == 0.0);
    CHECK(directed_hausdorff(a, b) == doctest::Approx(std::sqrt(8.0)));
    CHECK(hausdorff(a, b) == hausdorff(b, a));
    CHECK_THROWS_AS(hausdorff({}, a), EmptyInput);
}

TEST_CASE("strictly decreasing tables") {
    CHECK(strictly_decreasing({{0.2, 0.3}, {0.1, 0.2}, {0.05, 0.1}}));
    CHECK_FALSE(strictly_decreasing({{0.2, 0.3}, {0.1, 0.3}}));
}

TEST_CASE("KEXX has no nontrivial zeros") {
    const ProblemInstance inst = build_instance(ExampleTag::KEXX, {});
    const ZeroSet z = extract_zero_set(inst, 200, 0.0);
    CHECK(z.points.empty());
    CHECK(z.evaluated > 0);
    const auto rows = hot_sweep(inst, 3.0, {0.2, 0.1, 0.05});
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].ratio == doctest::Approx(0.04).epsilon(1e-12));
    CHECK(rows[2].ratio == doctest::Approx(0.0025).epsilon(1e-12));
    CHECK_THROWS_AS(extract_zero_set(inst, 10, 0.0), InvalidArgument);
}

TEST_CASE("Example A zero set tracks G") {
    ExampleConfig cfg;
    cfg.grid_n = 256;
    const ProblemInstance inst = build_instance(ExampleTag::A, cfg);
    const ZeroSet z = extract_zero_set(inst, 256, 0.0);
    REQUIRE(!z.points.empty());
    const double s = inst.window.width() / 256;
    const auto targets = target_samples(inst, s);
    const double r_min = inst.scalar->cover().r_min();
    CHECK(directed_hausdorff(z.points, targets) <= 2 * (s + r_min));
    CHECK(directed_hausdorff(targets, z.points) <= 2 * s);
    for (const Point& q : z.points) CHECK(q.y != 0.0);
    CHECK(separation_check(inst.scalar->labeling(), inst.scalar->seed_plus(), inst.scalar->seed_minus()));
}

TEST_CASE("derivative audit flags a wrong gradient") {
    ScalarField f;
    f.name = "quadratic";
    f.value = [](Point q) { return q.x * q.x + 3 * q.x * q.y; };
    f.gradient = [](Point q) { return Point{2 * q.x + 3 * q.y, 3 * q.x}; };
    f.region = {-1, 1, -1, 1};
    f.smooth_at = [](Point) { return true; };
    CHECK(derivative_audit(f, 100, 1e-6) < 1e-6);
    f.gradient = [](Point q) { return Point{2 * q.x, 3 * q.x}; };
    CHECK(derivative_audit(f, 100, 1e-6) > 1e-2);
}

TEST_CASE("tower report") {
    const auto tower = build_tower(default_initial_chain(4), 1, 0.2);
    const PathProxyReport rep = path_proxy_report(tower);
    REQUIRE(rep.rows.size() == 2);
    CHECK(rep.rows[1].chain_ok);
    CHECK(rep.rows[1].crooked);
    CHECK(rep.rows[1].max_diameter < rep.rows[0].max_diameter);
}
}
