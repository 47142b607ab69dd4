#include <algorithm>
#include <cmath>
#include <limits>

#include "nopath/errors.hpp"
#include "nopath/nonlin.hpp"

namespace nopath {

namespace {

// 1 on |sigma| >= 7pi/8, 0 on |sigma| <= 3pi/4.
double strip_cutoff(double sigma) {
    const double t = 0.5 + 0.5 * (std::abs(sigma) - 0.75 * kPi) / (kPi / 8.0);
    return 1.0 - BumpProfile::value(t);
}

struct PsiSample {
    double value = 0.0;
    double d_tau = 0.0;
};

PsiSample psi_sample(const WhitneyCover& cover, double flat_scale, Point q) {
    const double chi = strip_cutoff(q.x);
    const HValue h = cover.eval(q, 1);
    PsiSample out;
    const double t = flat_scale * h.value;
    if (t > 0.0) {
        const double f = flatten(t);
        out.value = (1.0 - chi) * f;
        // d/dt exp(-1/t) = exp(-1/t) / t^2
        out.d_tau = (1.0 - chi) * f / (t * t) * flat_scale * h.grad.y;
    }
    out.value += chi;
    return out;
}

// Hermite basis on [0, 1] and derivatives.
struct Basis {
    double p0, p1, q0, q1;
    double dp0, dp1, dq0, dq1;
};

Basis hermite(double s) {
    const double s2 = s * s;
    const double s3 = s2 * s;
    return {2 * s3 - 3 * s2 + 1, -2 * s3 + 3 * s2, s3 - 2 * s2 + s, s3 - s2,
            6 * s2 - 6 * s,      -6 * s2 + 6 * s,  3 * s2 - 4 * s + 1, 3 * s2 - 2 * s};
}

}  // namespace

PeriodicProfile build_profile_c(const OmegaSpec& spec, int grid_n, double r_min) {
    if (grid_n < 256) throw InvalidArgument("profile grid needs at least 256 intervals per period dimension");
    spec.validate();
    PeriodicProfile pr;
    pr.spec_ = spec;
    pr.n_sigma_ = grid_n + 1;
    pr.n_tau_ = grid_n;
    pr.h_sigma_ = 2.0 * kPi / grid_n;
    pr.h_tau_ = 2.0 * spec.p / grid_n;
    pr.r_min_ = r_min > 0.0 ? r_min : 24.0 * std::max(pr.h_sigma_, pr.h_tau_);

    const OmegaHatBoundary boundary(spec);
    pr.cover_ = std::make_shared<WhitneyCover>(
        WhitneyCover::build(boundary, Rect{-kPi, kPi, 0.0, 2.0 * spec.p}, pr.r_min_, 2.0 * spec.p));
    if (pr.cover_->balls().empty()) throw DegenerateWindow("empty cover for the Omega arrangement");
    double wmin = std::numeric_limits<double>::infinity();
    for (const WhitneyBall& b : pr.cover_->balls()) wmin = std::min(wmin, b.weight);
    // The u = 1 cores cover every emitted cell, so h >= wmin there and the
    // flattened profile stays O(1) away from the unresolved shell.
    pr.flat_scale_ = 1.0 / wmin;

    const std::size_t total = static_cast<std::size_t>(pr.n_sigma_) * static_cast<std::size_t>(pr.n_tau_);
    pr.psi_.assign(total, 0.0);
    pr.phi_.assign(total, 0.0);
    pr.Phi_.assign(total, 0.0);
    pr.Phi_tau_.assign(total, 0.0);
    pr.phi_tau_.assign(total, 0.0);
    pr.kappa_plus_.assign(static_cast<std::size_t>(pr.n_tau_), 0.0);
    pr.kappa_minus_.assign(static_cast<std::size_t>(pr.n_tau_), 0.0);

    std::vector<double> weight(static_cast<std::size_t>(pr.n_sigma_), pr.h_sigma_);
    weight.front() = weight.back() = 0.5 * pr.h_sigma_;
    std::vector<double> pm(static_cast<std::size_t>(pr.n_sigma_)), pp(pm.size()), pm_t(pm.size()), pp_t(pm.size());

    for (int j = 0; j < pr.n_tau_; ++j) {
        const double tau = pr.tau(j);
        double kp = 0.0, km = 0.0, kp_t = 0.0, km_t = 0.0;
        for (int i = 0; i < pr.n_sigma_; ++i) {
            const Point q{pr.sigma(i), tau};
            const PsiSample s = psi_sample(*pr.cover_, pr.flat_scale_, q);
            const bool inside = omega_hat_contains(q, spec);
            const std::size_t k = static_cast<std::size_t>(i);
            pr.psi_[pr.at(j, i)] = s.value;
            pm[k] = inside ? -s.value : 0.0;
            pm_t[k] = inside ? -s.d_tau : 0.0;
            pp[k] = inside ? 0.0 : s.value;
            pp_t[k] = inside ? 0.0 : s.d_tau;
            kp += weight[k] * pp[k];
            km += weight[k] * pm[k];
            kp_t += weight[k] * pp_t[k];
            km_t += weight[k] * pm_t[k];
        }
        if (!(kp > 0.0) || !(km < 0.0)) {
            throw SignViolation("kappa signs fail at tau = " + std::to_string(tau));
        }
        pr.kappa_plus_[static_cast<std::size_t>(j)] = kp;
        pr.kappa_minus_[static_cast<std::size_t>(j)] = km;
        double acc = 0.0, acc_t = 0.0;
        double prev = 0.0, prev_t = 0.0;
        for (int i = 0; i < pr.n_sigma_; ++i) {
            const std::size_t k = static_cast<std::size_t>(i);
            const double phi = kp * pm[k] - km * pp[k];
            const double phi_t = kp_t * pm[k] + kp * pm_t[k] - km_t * pp[k] - km * pp_t[k];
            if (i > 0) {
                acc += 0.5 * pr.h_sigma_ * (prev + phi);
                acc_t += 0.5 * pr.h_sigma_ * (prev_t + phi_t);
            }
            pr.phi_[pr.at(j, i)] = phi;
            pr.phi_tau_[pr.at(j, i)] = phi_t;
            pr.Phi_[pr.at(j, i)] = acc;
            pr.Phi_tau_[pr.at(j, i)] = acc_t;
            prev = phi;
            prev_t = phi_t;
        }
    }
    return pr;
}

double PeriodicProfile::psi_at(Point q) const { return psi_sample(*cover_, flat_scale_, q).value; }

PhiValue PeriodicProfile::eval(double sigma, double tau) const {
    sigma = std::clamp(sigma, -kPi, kPi);
    const double per = period();
    double tw = std::fmod(tau, per);
    if (tw < 0.0) tw += per;
    int i = std::min(static_cast<int>((sigma + kPi) / h_sigma_), n_sigma_ - 2);
    i = std::max(i, 0);
    int j = static_cast<int>(tw / h_tau_);
    if (j >= n_tau_) j = n_tau_ - 1;
    const double s = std::clamp((sigma - this->sigma(i)) / h_sigma_, 0.0, 1.0);
    const double t = std::clamp((tw - this->tau(j)) / h_tau_, 0.0, 1.0);
    const int j1 = (j + 1) % n_tau_;

    const Basis bs = hermite(s);
    const Basis bt = hermite(t);
    PhiValue out;
    const int rows[2] = {j, j1};
    const int cols[2] = {i, i + 1};
    for (int a = 0; a < 2; ++a) {      // sigma corner
        for (int b = 0; b < 2; ++b) {  // tau corner
            const std::size_t k = at(rows[b], cols[a]);
            const double F = Phi_[k];
            const double Fs = phi_[k] * h_sigma_;
            const double Ft = Phi_tau_[k] * h_tau_;
            const double Fst = phi_tau_[k] * h_sigma_ * h_tau_;
            const double ps = a == 0 ? bs.p0 : bs.p1;
            const double qs = a == 0 ? bs.q0 : bs.q1;
            const double dps = a == 0 ? bs.dp0 : bs.dp1;
            const double dqs = a == 0 ? bs.dq0 : bs.dq1;
            const double pt = b == 0 ? bt.p0 : bt.p1;
            const double qt = b == 0 ? bt.q0 : bt.q1;
            const double dpt = b == 0 ? bt.dp0 : bt.dp1;
            const double dqt = b == 0 ? bt.dq0 : bt.dq1;
            out.value += ps * pt * F + qs * pt * Fs + ps * qt * Ft + qs * qt * Fst;
            out.d_sigma += dps * pt * F + dqs * pt * Fs + dps * qt * Ft + dqs * qt * Fst;
            out.d_tau += ps * dpt * F + qs * dpt * Fs + ps * dqt * Ft + qs * dqt * Fst;
        }
    }
    out.d_sigma /= h_sigma_;
    out.d_tau /= h_tau_;
    return out;
}

nlohmann::json PeriodicProfile::summary() const {
    double worst = 0.0, scale = 0.0;
    for (int j = 0; j < n_tau_; ++j) {
        worst = std::max(worst, std::abs(Phi(j, n_sigma_ - 1)));
        scale = std::max(scale, std::abs(kappa_plus_[static_cast<std::size_t>(j)] *
                                         kappa_minus_[static_cast<std::size_t>(j)]));
    }
    return {{"omega", spec_.to_json()},
            {"grid_n", n_tau_},
            {"r_min", r_min_},
            {"flat_scale", flat_scale_},
            {"cover_balls", cover_->balls().size()},
            {"kappa_plus_min", *std::min_element(kappa_plus_.begin(), kappa_plus_.end())},
            {"kappa_minus_max", *std::max_element(kappa_minus_.begin(), kappa_minus_.end())},
            {"max_abs_Phi_at_pi", worst},
            {"Phi_scale", scale}};
}

// ---------------------------------------------------------------------------

FieldValue example_c_field(const PeriodicProfile& profile, Point q) {
    const double rho = norm(q);
    if (rho == 0.0) return {};
    const double e = std::exp(-1.0 / (rho * rho));
    if (e == 0.0) return {};
    const double theta = std::atan2(q.y, q.x);
    const PhiValue p = profile.eval(theta, 1.0 / rho);
    const double dr_rho = e * (2.0 / (rho * rho * rho)) * p.value - e * p.d_tau / (rho * rho);
    const double dr_theta = e * p.d_sigma;
    const double c = q.x / rho;
    const double s = q.y / rho;
    return {e * p.value, {dr_rho * c - dr_theta * s / rho, dr_rho * s + dr_theta * c / rho}};
}

double example_c_angular(const PeriodicProfile& profile, Point q) {
    const double rho = norm(q);
    if (rho == 0.0) return 0.0;
    return profile.eval(std::atan2(q.y, q.x), 1.0 / rho).d_sigma;
}

double example_c_lambda(const PeriodicProfile& profile, Point q) {
    const double rho = norm(q);
    if (rho == 0.0) return 0.0;
    const double e = std::exp(-1.0 / (rho * rho));
    const PhiValue p = profile.eval(std::atan2(q.y, q.x), 1.0 / rho);
    const double dr_rho = e * (2.0 / (rho * rho * rho)) * p.value - e * p.d_tau / (rho * rho);
    return dr_rho / rho;
}

ScalarField example_c_scalar_field(const PeriodicProfile& profile) {
    ScalarField f;
    f.name = "r_C";
    f.value = [&profile](Point q) { return example_c_field(profile, q).value; };
    f.gradient = [&profile](Point q) { return example_c_field(profile, q).grad; };
    f.region = {-3.0, 3.0, -3.0, 3.0};
    f.smooth_at = [](Point q) {
        const double rho = norm(q);
        return rho > 0.2 && rho < 3.0;
    };
    return f;
}

}  // namespace nopath
