#pragma once

// The fields of the counterexamples: the cone cutoff omega, g and r for
// Examples A and B, the periodic profile and polar field of Example C, and
// the Example 1.1 control residual.

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nopath/chain.hpp"
#include "nopath/continua.hpp"
#include "nopath/geometry.hpp"
#include "nopath/grid.hpp"
#include "nopath/whitney.hpp"

namespace nopath {

struct ConeParams {
    double alpha = 0.0;
    double beta = 0.0;
    void validate() const;
    // Strictly inside C(alpha, beta) or the origin.
    bool contains(Point q) const;
};
ConeParams default_cone();  // tan(pi/6), tan(pi/3)

// Smooth even bump exp(1 - s^2/(s^2 - t^2)) on |t| < s; derivatives 0..2.
std::array<double, 3> varpi(double t, double s);

struct OmegaValue {
    double value = 0.0;
    double d_lambda = 0.0;
    double d_x = 0.0;
};
OmegaValue omega_eval(const ConeParams& cone, Point q, int order = 1);
// The mixed partial d_{lambda x}(x omega) from the closed forms.
double omega_mixed_x_omega(const ConeParams& cone, Point q);

// Example B's x-only cutoff: the same bump with support |x| < 1/4.
std::array<double, 3> omega_tilde(double x);

struct ScalarField {
    std::string name;
    std::function<double(Point)> value;
    std::function<Point(Point)> gradient;
    Rect region;
    std::function<bool(Point)> smooth_at;
};

enum class ExampleTag { A, B, C, KEXX };
std::string to_string(ExampleTag tag);
ExampleTag parse_example(const std::string& s);  // throws InvalidArgument

struct ExampleConfig {
    int stage = 1;
    int K = 3;
    double shrink = 0.2;
    std::optional<Rect> window;
    int grid_n = 0;        // 0: per-example default
    double r_min = 0.0;    // 0: derived from the grid
    OmegaSpec omega;

    Rect effective_window(ExampleTag tag) const;
    int effective_grid_n(ExampleTag tag) const;
    // Extraction / labeling spacing for A and B.
    double spacing(ExampleTag tag) const;
    double effective_r_min(ExampleTag tag) const;
};

// ---------------------------------------------------------------------------
// Examples A and B: r(lambda, x) = x (lambda - g(lambda, x)).

class ScalarInstance {
public:
    ExampleTag tag() const { return tag_; }
    Rect window() const { return window_; }
    const ExampleConfig& config() const { return config_; }
    const std::vector<Chain>& tower() const { return tower_; }
    const MembershipOracle& target() const { return *target_; }
    std::shared_ptr<const MembershipOracle> target_ptr() const { return target_; }
    std::shared_ptr<const PTildeOracle> ptilde() const { return ptilde_; }
    const WhitneyCover& cover() const { return *cover_; }
    const ComponentLabeling& labeling() const { return labeling_; }
    int minus_component() const { return minus_; }
    int plus_component() const { return plus_; }
    Point seed_plus() const { return seed_plus_; }
    Point seed_minus() const { return seed_minus_; }
    const ConeParams& cone() const { return cone_; }

    // Signed Whitney function (per-ball signs) and its first partials.
    HValue h_hat(Point q, int order = 0) const;
    double g(Point q) const;
    double r(Point q) const;
    // lambda x - r(lambda, x) = x g(lambda, x)
    double residual(Point q) const;
    // (d_lambda r, d_x r)
    Point r_gradient(Point q) const;
    ScalarField r_field() const;

    nlohmann::json manifest() const;

    friend std::shared_ptr<ScalarInstance> build_example_a(const ExampleConfig&);
    friend std::shared_ptr<ScalarInstance> build_example_b(const ExampleConfig&);

private:
    ExampleTag tag_ = ExampleTag::A;
    ExampleConfig config_;
    Rect window_{};
    std::vector<Chain> tower_;
    std::shared_ptr<const PTildeOracle> ptilde_;
    std::shared_ptr<const MembershipOracle> target_;
    std::shared_ptr<WhitneyCover> cover_;
    ComponentLabeling labeling_;
    std::vector<double> signs_;
    int minus_ = -1;
    int plus_ = -1;
    Point seed_plus_{}, seed_minus_{};
    ConeParams cone_{};
};

// Obstacle nodes: those whose distance lower bound to G is at most spacing/sqrt 2,
// i.e. whose lattice cell may touch G.
RegionMask obstacle_mask(const ClosedSet& g, Rect window, double spacing);

std::vector<Chain> build_q_tower(const ExampleConfig& config);
// P~ from a stage chain, carried into the Q rectangle through `frame`
// (the stage-0 chain frame).
std::shared_ptr<const PTildeOracle> build_ptilde(const Chain& stage_chain, Rect frame, int K,
                                                 double sample_spacing);

std::shared_ptr<ScalarInstance> build_example_a(const ExampleConfig& config);
std::shared_ptr<ScalarInstance> build_example_b(const ExampleConfig& config);

// ---------------------------------------------------------------------------
// Example C

struct PhiValue {
    double value = 0.0;
    double d_sigma = 0.0;
    double d_tau = 0.0;
};

class PeriodicProfile {
public:
    const OmegaSpec& spec() const { return spec_; }
    int n_sigma() const { return n_sigma_; }  // nodes on [-pi, pi]
    int n_tau() const { return n_tau_; }      // nodes on [0, 2p)
    double h_sigma() const { return h_sigma_; }
    double h_tau() const { return h_tau_; }
    double period() const { return 2.0 * spec_.p; }
    double sigma(int i) const { return -kPi + i * h_sigma_; }
    double tau(int j) const { return j * h_tau_; }
    double r_min() const { return r_min_; }
    double flat_scale() const { return flat_scale_; }
    const WhitneyCover& cover() const { return *cover_; }

    const std::vector<double>& kappa_plus() const { return kappa_plus_; }
    const std::vector<double>& kappa_minus() const { return kappa_minus_; }
    // Row-major [tau row][sigma column].
    double psi(int j, int i) const { return psi_[at(j, i)]; }
    double phi(int j, int i) const { return phi_[at(j, i)]; }
    double Phi(int j, int i) const { return Phi_[at(j, i)]; }
    double Phi_tau(int j, int i) const { return Phi_tau_[at(j, i)]; }
    double phi_tau(int j, int i) const { return phi_tau_[at(j, i)]; }

    // psi at an arbitrary point (sigma in [-pi, pi]).
    double psi_at(Point q) const;
    // Bicubic Hermite interpolant of Phi; tau is wrapped into one period.
    PhiValue eval(double sigma, double tau) const;

    nlohmann::json summary() const;

    friend PeriodicProfile build_profile_c(const OmegaSpec&, int, double);

private:
    std::size_t at(int j, int i) const {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(n_sigma_) + static_cast<std::size_t>(i);
    }
    OmegaSpec spec_;
    int n_sigma_ = 0, n_tau_ = 0;
    double h_sigma_ = 0.0, h_tau_ = 0.0;
    double r_min_ = 0.0;
    double flat_scale_ = 1.0;
    std::shared_ptr<WhitneyCover> cover_;
    std::vector<double> kappa_plus_, kappa_minus_;
    std::vector<double> psi_, phi_, Phi_, Phi_tau_, phi_tau_;
};

// grid_n intervals per period dimension (>= 256). r_min <= 0 picks a default.
PeriodicProfile build_profile_c(const OmegaSpec& spec, int grid_n, double r_min = 0.0);

struct FieldValue {
    double value = 0.0;
    Point grad{0.0, 0.0};
};

// r(x, y) = exp(-1/rho^2) Phi(theta, 1/rho).
FieldValue example_c_field(const PeriodicProfile& profile, Point q);
// d r / d theta divided by exp(-1/rho^2), i.e. Phi_sigma(theta, 1/rho).
double example_c_angular(const PeriodicProfile& profile, Point q);
// The lambda solving the radial equation at q: (1/rho) d r / d rho.
double example_c_lambda(const PeriodicProfile& profile, Point q);
ScalarField example_c_scalar_field(const PeriodicProfile& profile);

// ---------------------------------------------------------------------------
// Example 1.1

// lambda v - L v - R(v) = ((lambda - 1) x - y, (lambda - 1) y + x^3)
Point kexx_residual(double lambda, Point v);
// The higher-order part R(v) = (0, -x^3).
Point kexx_hot(Point v);

}  // namespace nopath

namespace nopath {

// A tagged counterexample: A and B carry a scalar instance, C a profile.
struct ProblemInstance {
    ExampleTag tag = ExampleTag::KEXX;
    ExampleConfig config;
    Rect window{};
    std::shared_ptr<ScalarInstance> scalar;
    std::shared_ptr<PeriodicProfile> profile;

    nlohmann::json manifest() const;
};

ProblemInstance build_instance(ExampleTag tag, const ExampleConfig& config);

}  // namespace nopath
