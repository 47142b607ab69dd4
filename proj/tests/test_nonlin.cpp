#include <doctest.h>

#include <cmath>

#include "nopath/errors.hpp"
#include "nopath/nonlin.hpp"

using namespace nopath;

TEST_SUITE("nonlin") {
TEST_CASE("cone cutoff omega") {
    const ConeParams cone = default_cone();
    CHECK(cone.alpha == doctest::Approx(std::tan(kPi / 6)));
    CHECK(cone.beta == doctest::Approx(std::tan(kPi / 3)));
    CHECK(omega_eval(cone, {2.0, 0.0}).value == doctest::Approx(2.0));
    CHECK(omega_eval(cone, {-1.5, 0.0}).value == doctest::Approx(-1.5));
    CHECK(omega_eval(cone, {1.0, cone.alpha}).value == 0.0);
    const OmegaValue z = omega_eval(cone, {0.0, 5.0}, 1);
    CHECK(z.value == 0.0);
    CHECK(z.d_lambda == 0.0);
    CHECK(z.d_x == 0.0);
    const OmegaValue o = omega_eval(cone, {0.0, 0.0}, 1);
    CHECK(o.d_lambda == 1.0);
    CHECK(o.d_x == 0.0);
    // lambda omega >= 0 everywhere
    for (double l = -2.0; l <= 2.0; l += 0.13) {
        for (double x = -2.0; x <= 2.0; x += 0.17) CHECK(l * omega_eval(cone, {l, x}).value >= 0.0);
    }
}

TEST_CASE("varpi is an even cutoff") {
    const double s = default_cone().alpha / 2;
    CHECK(varpi(0.0, s)[0] == 1.0);
    CHECK(varpi(s, s)[0] == 0.0);
    CHECK(varpi(0.1, s)[0] == doctest::Approx(varpi(-0.1, s)[0]));
    double prev = 1.0;
    for (double t = 0.0; t <= s; t += s / 50) {
        CHECK(varpi(t, s)[0] <= prev);
        prev = varpi(t, s)[0];
    }
}

TEST_CASE("KEXX residual") {
    for (double l : {-3.0, 0.0, 1.0, 2.5}) CHECK(kexx_residual(l, {0.0, 0.0}) == Point{0.0, 0.0});
    CHECK(kexx_residual(1.0, {1.0, 0.0}) == Point{0.0, 1.0});
    CHECK(kexx_hot({0.5, 0.2}) == Point{0.0, -0.125});
}

TEST_CASE("example parsing") {
    CHECK(parse_example("A") == ExampleTag::A);
    CHECK(parse_example("KEXX") == ExampleTag::KEXX);
    CHECK(to_string(ExampleTag::C) == "C");
    CHECK_THROWS_AS(parse_example("D"), InvalidArgument);
}

TEST_CASE("Example A is exact on G and nonzero off it") {
    ExampleConfig cfg;
    cfg.grid_n = 256;
    const auto a = build_example_a(cfg);
    CHECK(a->g({1.0, 0.1}) > 0.0);
    CHECK(a->residual({1.0, 0.1}) != 0.0);
    CHECK(a->residual({0.0, 0.0}) == 0.0);
    const PointCloud b = a->target().boundary_samples(a->window());
    REQUIRE(b.size() > 100);
    for (std::size_t i = 0; i < b.size(); i += b.size() / 100) {
        if (b.ys[i] != 0.0) CHECK(a->residual(b[i]) == 0.0);
    }
    // Trivial line: r(lambda, 0) = 0.
    for (double l = -3.0; l <= 3.0; l += 0.5) CHECK(a->r({l, 0.0}) == 0.0);
}

TEST_CASE("Example B off-set point is not a solution") {
    ExampleConfig cfg;
    cfg.grid_n = 256;
    const auto b = build_example_b(cfg);
    CHECK(b->residual({1.0, 0.05}) != 0.0);
    CHECK(b->residual({0.0, 0.3}) == 0.0);
    CHECK(b->residual({0.0, 0.5}) == 0.0);
}

TEST_CASE("Example C profile") {
    const PeriodicProfile pr = build_profile_c(OmegaSpec{}, 256);
    for (int j = 0; j < pr.n_tau(); ++j) {
        CHECK(pr.kappa_plus()[j] > 0.0);
        CHECK(pr.kappa_minus()[j] < 0.0);
        CHECK(std::abs(pr.Phi(j, pr.n_sigma() - 1)) <= 1e-12 * std::abs(pr.kappa_plus()[j] * pr.kappa_minus()[j]));
        CHECK(pr.phi(j, pr.n_sigma() - 1) == doctest::Approx(-pr.kappa_minus()[j]));
    }
    // psi equals 1 near sigma = +-pi and vanishes on the boundary of Omega hat.
    CHECK(pr.psi_at({kPi - 0.05, 0.3}) == 1.0);
    CHECK(pr.psi_at({-kPi / 2, 1.0}) == 0.0);
    CHECK_THROWS_AS(build_profile_c(OmegaSpec{}, 64), InvalidArgument);
    const FieldValue f = example_c_field(pr, {0.0, 0.0});
    CHECK(f.value == 0.0);
}
}
