#pragma once

// Smooth nonnegative functions vanishing exactly on a closed set: a weighted
// sum of smooth bumps over a dyadic cover of the complement.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "nopath/continua.hpp"
#include "nopath/geometry.hpp"
#include "nopath/grid.hpp"
#include "nopath/jet.hpp"

namespace nopath {

// Smooth step: 1 on [0, 1/2], 0 on [1, inf).
struct BumpProfile {
    static constexpr int kMaxOrder = 4;

    static double value(double t);
    // u^(k)(t) for k = 0..4.
    static std::array<double, kMaxOrder + 1> derivatives(double t);
    // sup_t |u^(k)(t)|, sampled finely on [1/2, 1].
    static const std::array<double, kMaxOrder + 1>& sup_norms();
};

// The flat function t -> exp(-1/t), 0 at 0.
double flatten(double h_value);

struct WhitneyBall {
    Point center;
    double radius = 0.0;
    double gamma = 1.0;
    int level = 0;
    double weight = 0.0;  // 1 / (gamma 2^level)
};

struct HValue {
    double value = 0.0;
    Point grad{0.0, 0.0};
    double hxx = 0.0, hxy = 0.0, hyy = 0.0;
};

class WhitneyCover {
public:
    // Quadtree cover of window \ G. With `period_y` set, the window's y-range
    // must be one period and evaluation wraps in y.
    static WhitneyCover build(const ClosedSet& g, Rect window, double r_min,
                              std::optional<double> period_y = std::nullopt);

    const std::vector<WhitneyBall>& balls() const { return balls_; }
    Rect window() const { return window_; }
    double r_min() const { return r_min_; }
    std::optional<double> period_y() const { return period_; }

    // Weighted bump sum and its derivatives up to `order` (0, 1 or 2).
    HValue eval(Point q, int order = 0) const;
    // Same sum with per-ball factors (e.g. signs); factors.size() == balls().size().
    HValue eval_weighted(Point q, const std::vector<double>& factors, int order = 0) const;
    // Sum restricted to balls with index < m (series truncation).
    double eval_truncated(Point q, std::size_t m) const;
    // Index of some ball containing q, or -1.
    long covering_ball(Point q) const;

    nlohmann::json to_json() const;

private:
    template <class F>
    void for_each_ball_near(Point q, F&& f) const;

    std::vector<WhitneyBall> balls_;
    Rect window_{};
    double r_min_ = 0.0;
    std::optional<double> period_;
    // Uniform bucket grid over ball bounding boxes.
    double cell_ = 1.0;
    int nx_ = 0, ny_ = 0;
    std::vector<std::size_t> start_;
    std::vector<std::uint32_t> items_;
};

inline HValue h_eval(const WhitneyCover& cover, Point q, int order = 0) { return cover.eval(q, order); }

// Per-ball signs: -1 for balls whose center lies in `minus_component`.
// Throws UnlabeledCell when a center falls on an obstacle node.
std::vector<double> ball_signs(const WhitneyCover& cover, const ComponentLabeling& labels,
                               int minus_component);

// -h on the minus component, +h elsewhere.
double signed_h(const WhitneyCover& cover, const ComponentLabeling& labels, int minus_component,
                Point q);

}  // namespace nopath
