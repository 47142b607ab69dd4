#include "nopath/nonlin.hpp"

#include <algorithm>
#include <cmath>

#include "nopath/errors.hpp"
#include "nopath/jet.hpp"

namespace nopath {

void ConeParams::validate() const {
    if (!(alpha > 0.0 && beta > alpha && std::isfinite(beta))) {
        throw InvalidArgument("cone needs 0 < alpha < beta < inf");
    }
}

bool ConeParams::contains(Point q) const {
    const double l = q.x;
    const double x = q.y;
    if (l == 0.0 && x == 0.0) return true;
    if (l > 0.0) return alpha * l < x && x < beta * l;
    if (l < 0.0) return alpha * l > x && x > beta * l;
    return false;
}

ConeParams default_cone() { return {std::tan(kPi / 6.0), std::tan(kPi / 3.0)}; }

std::array<double, 3> varpi(double t, double s) {
    if (std::abs(t) >= s) return {0.0, 0.0, 0.0};
    const Jet<2> tt = Jet<2>::variable(t);
    const Jet<2> s2 = Jet<2>::constant(s * s);
    const Jet<2> v = exp(1.0 + (-1.0) * (s2 / (s2 - tt * tt)));
    return {v.d(0), v.d(1), v.d(2)};
}

OmegaValue omega_eval(const ConeParams& cone, Point q, int order) {
    const double l = q.x;
    const double x = q.y;
    OmegaValue out;
    if (l == 0.0) {
        // omega vanishes on |lambda| <= 2|x|/alpha; the origin is special.
        if (x == 0.0 && order >= 1) out.d_lambda = 1.0;
        return out;
    }
    const double t = x / l;
    const auto w = varpi(t, 0.5 * cone.alpha);
    out.value = l * w[0];
    if (order >= 1) {
        out.d_x = w[1];
        out.d_lambda = w[0] - t * w[1];
    }
    return out;
}

double omega_mixed_x_omega(const ConeParams& cone, Point q) {
    if (q.x == 0.0) return 0.0;
    const double t = q.y / q.x;
    const auto w = varpi(t, 0.5 * cone.alpha);
    return w[0] - t * w[1] - t * t * w[2];
}

std::array<double, 3> omega_tilde(double x) { return varpi(x, 0.25); }

std::string to_string(ExampleTag tag) {
    switch (tag) {
        case ExampleTag::A: return "A";
        case ExampleTag::B: return "B";
        case ExampleTag::C: return "C";
        case ExampleTag::KEXX: return "KEXX";
    }
    return "?";
}

ExampleTag parse_example(const std::string& s) {
    if (s == "A") return ExampleTag::A;
    if (s == "B") return ExampleTag::B;
    if (s == "C") return ExampleTag::C;
    if (s == "KEXX") return ExampleTag::KEXX;
    throw InvalidArgument("unknown example '" + s + "' (expected A, B, C or KEXX)");
}

Rect ExampleConfig::effective_window(ExampleTag tag) const {
    if (window) return *window;
    switch (tag) {
        case ExampleTag::A: return {-4.0, 4.0, -4.0, 4.0};
        case ExampleTag::B: return {-4.0, 4.0, -1.0, 1.0};
        case ExampleTag::C: return {-3.0, 3.0, -3.0, 3.0};
        case ExampleTag::KEXX: return {-2.0, 2.0, -2.0, 2.0};
    }
    return {};
}

int ExampleConfig::effective_grid_n(ExampleTag tag) const {
    if (grid_n > 0) return grid_n;
    switch (tag) {
        case ExampleTag::A:
        case ExampleTag::B: return 1024;
        case ExampleTag::C: return 512;
        case ExampleTag::KEXX: return 200;
    }
    return 0;
}

double ExampleConfig::spacing(ExampleTag tag) const {
    return effective_window(tag).width() / effective_grid_n(tag);
}

double ExampleConfig::effective_r_min(ExampleTag tag) const {
    if (r_min > 0.0) return r_min;
    if (tag == ExampleTag::C) {
        const int n = effective_grid_n(tag);
        return 24.0 * std::max(2.0 * kPi / n, 2.0 * omega.p / n);
    }
    return 16.0 * spacing(tag);
}

// ---------------------------------------------------------------------------

RegionMask obstacle_mask(const ClosedSet& g, Rect window, double spacing) {
    RegionMask mask(window, spacing);
    const double reach = spacing / std::sqrt(2.0);
    mask.fill([&](Point p) { return g.distance_lower_bound(p, 2.0 * reach) <= reach; });
    return mask;
}

std::vector<Chain> build_q_tower(const ExampleConfig& config) {
    if (config.stage < 0) throw InvalidArgument("stage must be >= 0");
    return build_tower(default_initial_chain(4), config.stage, config.shrink);
}

std::shared_ptr<const PTildeOracle> build_ptilde(const Chain& stage_chain, Rect frame, int K,
                                                 double sample_spacing) {
    auto q = std::make_shared<const QSet>(stage_chain, frame, sample_spacing);
    return std::make_shared<const PTildeOracle>(std::move(q), K);
}

namespace {

void finish_scalar(std::shared_ptr<WhitneyCover>& cover_slot, ComponentLabeling& labeling,
                   const ClosedSet& target, Rect window, double spacing, double r_min, Point seed_plus,
                   Point seed_minus, int& plus, int& minus, std::vector<double>& signs) {
    cover_slot = std::make_shared<WhitneyCover>(WhitneyCover::build(target, window, r_min));
    labeling = label_components(obstacle_mask(target, window, spacing));
    plus = labeling.label_at(seed_plus);
    minus = labeling.label_at(seed_minus);
    if (plus < 0 || minus < 0) throw SeedOnObstacle("a component seed lies on the obstacle mask");
    if (plus == minus) {
        throw ComponentMergeFailure("seeds share a component at spacing " + std::to_string(spacing));
    }
    signs = ball_signs(*cover_slot, labeling, minus);
}

}  // namespace

std::shared_ptr<ScalarInstance> build_example_a(const ExampleConfig& config) {
    auto inst = std::make_shared<ScalarInstance>();
    inst->tag_ = ExampleTag::A;
    inst->config_ = config;
    inst->window_ = config.effective_window(ExampleTag::A);
    inst->cone_ = default_cone();
    inst->cone_.validate();
    const double spacing = config.spacing(ExampleTag::A);
    const double r_min = config.effective_r_min(ExampleTag::A);
    inst->tower_ = build_q_tower(config);
    const Rect frame = QSet::frame_of(inst->tower_.front());
    inst->ptilde_ = build_ptilde(inst->tower_.back(), frame, config.K, std::min(0.25 * r_min, 0.5 * spacing));
    inst->target_ = rotate_quarter(inst->ptilde_);

    const PointCloud samples = inst->target_->boundary_samples(inst->window_);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!inst->cone_.contains(samples[i])) {
            throw ConeViolation("G sample (" + std::to_string(samples.xs[i]) + ", " +
                                std::to_string(samples.ys[i]) + ") escapes the cone");
        }
    }
    inst->seed_plus_ = {1.0, -1.0};
    inst->seed_minus_ = {-1.0, 1.0};
    finish_scalar(inst->cover_, inst->labeling_, *inst->target_, inst->window_, spacing, r_min,
                  inst->seed_plus_, inst->seed_minus_, inst->plus_, inst->minus_, inst->signs_);
    return inst;
}

std::shared_ptr<ScalarInstance> build_example_b(const ExampleConfig& config) {
    auto inst = std::make_shared<ScalarInstance>();
    inst->tag_ = ExampleTag::B;
    inst->config_ = config;
    inst->window_ = config.effective_window(ExampleTag::B);
    const double spacing = config.spacing(ExampleTag::B);
    const double r_min = config.effective_r_min(ExampleTag::B);
    inst->tower_ = build_q_tower(config);
    const Rect frame = QSet::frame_of(inst->tower_.front());
    inst->ptilde_ = build_ptilde(inst->tower_.back(), frame, config.K, std::min(0.25 * r_min, 0.5 * spacing));
    inst->target_ = std::make_shared<const ExampleBSet>(inst->ptilde_);
    inst->seed_plus_ = {1.0, 0.0};
    inst->seed_minus_ = {-1.0, 0.0};
    finish_scalar(inst->cover_, inst->labeling_, *inst->target_, inst->window_, spacing, r_min,
                  inst->seed_plus_, inst->seed_minus_, inst->plus_, inst->minus_, inst->signs_);
    return inst;
}

HValue ScalarInstance::h_hat(Point q, int order) const { return cover_->eval_weighted(q, signs_, order); }

double ScalarInstance::g(Point q) const {
    const double x = q.y;
    const double h = h_hat(q, 0).value;
    if (tag_ == ExampleTag::A) return x * x * h + omega_eval(cone_, q, 0).value;
    return x * x * h + q.x * omega_tilde(x)[0];
}

double ScalarInstance::r(Point q) const { return q.y * (q.x - g(q)); }

double ScalarInstance::residual(Point q) const { return q.y * g(q); }

Point ScalarInstance::r_gradient(Point q) const {
    const double l = q.x;
    const double x = q.y;
    const HValue h = h_hat(q, 1);
    double g = x * x * h.value;
    double gl = x * x * h.grad.x;
    double gx = 2.0 * x * h.value + x * x * h.grad.y;
    if (tag_ == ExampleTag::A) {
        const OmegaValue w = omega_eval(cone_, q, 1);
        g += w.value;
        gl += w.d_lambda;
        gx += w.d_x;
    } else {
        const auto w = omega_tilde(x);
        g += l * w[0];
        gl += w[0];
        gx += l * w[1];
    }
    return {x * (1.0 - gl), (l - g) - x * gx};
}

ScalarField ScalarInstance::r_field() const {
    ScalarField f;
    f.name = "r_" + to_string(tag_);
    f.value = [this](Point q) { return r(q); };
    f.gradient = [this](Point q) { return r_gradient(q); };
    f.region = window_;
    f.smooth_at = [](Point q) { return norm(q) > 0.1; };
    return f;
}

nlohmann::json ScalarInstance::manifest() const {
    nlohmann::json j{{"tag", to_string(tag_)},
                     {"stage", config_.stage},
                     {"K", config_.K},
                     {"shrink", config_.shrink},
                     {"window", {window_.xmin, window_.xmax, window_.ymin, window_.ymax}},
                     {"grid_n", config_.effective_grid_n(tag_)},
                     {"r_min", cover_->r_min()},
                     {"target", target_->parameters()},
                     {"cover_balls", cover_->balls().size()},
                     {"components", labeling_.component_count},
                     {"seed_plus", {seed_plus_.x, seed_plus_.y}},
                     {"seed_minus", {seed_minus_.x, seed_minus_.y}}};
    if (tag_ == ExampleTag::A) j["cone"] = {{"alpha", cone_.alpha}, {"beta", cone_.beta}};
    return j;
}

// ---------------------------------------------------------------------------

Point kexx_residual(double lambda, Point v) {
    return {(lambda - 1.0) * v.x - v.y, (lambda - 1.0) * v.y + v.x * v.x * v.x};
}

Point kexx_hot(Point v) { return {0.0, -v.x * v.x * v.x}; }

}  // namespace nopath

namespace nopath {

ProblemInstance build_instance(ExampleTag tag, const ExampleConfig& config) {
    ProblemInstance inst;
    inst.tag = tag;
    inst.config = config;
    inst.window = config.effective_window(tag);
    if (!(inst.window.width() > 0.0 && inst.window.height() > 0.0)) {
        throw DegenerateWindow("window has zero area");
    }
    switch (tag) {
        case ExampleTag::A: inst.scalar = build_example_a(config); break;
        case ExampleTag::B: inst.scalar = build_example_b(config); break;
        case ExampleTag::C:
            inst.profile = std::make_shared<PeriodicProfile>(
                build_profile_c(config.omega, config.effective_grid_n(tag), config.r_min));
            break;
        case ExampleTag::KEXX: break;
    }
    return inst;
}

nlohmann::json ProblemInstance::manifest() const {
    if (scalar) return scalar->manifest();
    nlohmann::json j{{"tag", to_string(tag)},
                     {"window", {window.xmin, window.xmax, window.ymin, window.ymax}},
                     {"grid_n", config.effective_grid_n(tag)}};
    if (profile) j["profile"] = profile->summary();
    if (tag == ExampleTag::KEXX) j["lambda_range"] = {-3.0, 3.0};
    return j;
}

}  // namespace nopath
