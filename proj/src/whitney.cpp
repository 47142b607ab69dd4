#include "nopath/whitney.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "nopath/errors.hpp"

namespace nopath {

namespace {

using J4 = Jet<4>;

// exp(-1/s) for s > 0, the zero jet otherwise.
J4 flat_piece(const J4& s) {
    if (!(s.c[0] > 0.0)) return J4{};
    return exp(-1.0 * (J4::constant(1.0) / s));
}

}  // namespace

std::array<double, BumpProfile::kMaxOrder + 1> BumpProfile::derivatives(double t) {
    std::array<double, kMaxOrder + 1> out{};
    if (t <= 0.5) {
        out[0] = 1.0;
        return out;
    }
    if (t >= 1.0) return out;
    const J4 tt = J4::variable(t);
    const J4 a = flat_piece(2.0 + (-2.0) * tt);
    const J4 b = flat_piece(-1.0 + 2.0 * tt);
    const J4 u = a / (a + b);
    for (int k = 0; k <= kMaxOrder; ++k) out[static_cast<std::size_t>(k)] = u.d(static_cast<std::size_t>(k));
    return out;
}

double BumpProfile::value(double t) { return derivatives(t)[0]; }

const std::array<double, BumpProfile::kMaxOrder + 1>& BumpProfile::sup_norms() {
    static const std::array<double, kMaxOrder + 1> norms = [] {
        std::array<double, kMaxOrder + 1> n{};
        constexpr int samples = 20000;
        for (int i = 0; i <= samples; ++i) {
            const auto d = derivatives(0.5 + 0.5 * i / samples);
            for (std::size_t k = 0; k < n.size(); ++k) n[k] = std::max(n[k], std::abs(d[k]));
        }
        n[0] = 1.0;
        return n;
    }();
    return norms;
}

double flatten(double h_value) {
    if (h_value < 0.0) throw InvalidArgument("flatten needs a nonnegative argument");
    if (h_value == 0.0) return 0.0;
    return std::exp(-1.0 / h_value);
}

// ---------------------------------------------------------------------------

WhitneyCover WhitneyCover::build(const ClosedSet& g, Rect window, double r_min,
                                 std::optional<double> period_y) {
    if (!(window.width() > 0.0 && window.height() > 0.0)) throw DegenerateWindow("window has zero area");
    if (!(r_min > 0.0)) throw InvalidArgument("r_min must be positive");
    if (period_y && std::abs(*period_y - window.height()) > 1e-12 * *period_y) {
        throw InvalidArgument("periodic cover needs the window height to equal the period");
    }
    WhitneyCover cover;
    cover.window_ = window;
    cover.r_min_ = r_min;
    cover.period_ = period_y;

    const auto& norms = BumpProfile::sup_norms();
    struct Cell {
        Rect box;
        int level;
    };
    std::deque<Cell> queue{{window, 0}};
    while (!queue.empty()) {
        const Cell cell = queue.front();
        queue.pop_front();
        const Rect& b = cell.box;
        const Point c{0.5 * (b.xmin + b.xmax), 0.5 * (b.ymin + b.ymax)};
        const double hd = 0.5 * std::hypot(b.width(), b.height());
        if (g.depth_lower_bound(c) >= hd) continue;  // cell lies inside G
        // Beyond 1.1 the radius saturates at 0.99, so the cap is exact here.
        const double d = g.distance_lower_bound(c, 1.1);
        const double radius = std::min(0.9 * d, 0.99);
        // The u = 1 core (radius/2) then covers the whole cell.
        if (d > 0.0 && radius >= 2.0 * hd) {
            WhitneyBall ball{c, radius, 1.0, cell.level, 0.0};
            const int kmax = std::min(cell.level, BumpProfile::kMaxOrder);
            for (int k = 0; k <= kmax; ++k) {
                ball.gamma = std::max(ball.gamma, norms[static_cast<std::size_t>(k)] / std::pow(radius, k));
            }
            ball.weight = 1.0 / (ball.gamma * std::ldexp(1.0, cell.level));
            cover.balls_.push_back(ball);
            continue;
        }
        if (hd < 0.25 * r_min) continue;
        const double xm = c.x;
        const double ym = c.y;
        for (const Rect& sub : {Rect{b.xmin, xm, b.ymin, ym}, Rect{xm, b.xmax, b.ymin, ym},
                                Rect{b.xmin, xm, ym, b.ymax}, Rect{xm, b.xmax, ym, b.ymax}}) {
            queue.push_back({sub, cell.level + 1});
        }
    }

    // Bucket grid over the window, each ball registered in every bucket its
    // bounding box touches.
    cover.cell_ = std::max(window.width(), window.height()) / 256.0;
    cover.nx_ = static_cast<int>(std::ceil(window.width() / cover.cell_)) + 1;
    cover.ny_ = static_cast<int>(std::ceil(window.height() / cover.cell_)) + 1;
    const std::size_t nb = static_cast<std::size_t>(cover.nx_) * static_cast<std::size_t>(cover.ny_);
    std::vector<std::vector<std::uint32_t>> buckets(nb);
    for (std::size_t i = 0; i < cover.balls_.size(); ++i) {
        const WhitneyBall& ball = cover.balls_[i];
        const auto clampx = [&](double x) {
            return std::clamp(static_cast<int>(std::floor((x - window.xmin) / cover.cell_)), 0, cover.nx_ - 1);
        };
        const auto clampy = [&](double y) {
            return std::clamp(static_cast<int>(std::floor((y - window.ymin) / cover.cell_)), 0, cover.ny_ - 1);
        };
        for (int iy = clampy(ball.center.y - ball.radius); iy <= clampy(ball.center.y + ball.radius); ++iy) {
            for (int ix = clampx(ball.center.x - ball.radius); ix <= clampx(ball.center.x + ball.radius); ++ix) {
                buckets[static_cast<std::size_t>(iy) * static_cast<std::size_t>(cover.nx_) +
                        static_cast<std::size_t>(ix)]
                    .push_back(static_cast<std::uint32_t>(i));
            }
        }
    }
    cover.start_.assign(nb + 1, 0);
    for (std::size_t b = 0; b < nb; ++b) cover.start_[b + 1] = cover.start_[b] + buckets[b].size();
    cover.items_.reserve(cover.start_[nb]);
    for (auto& bucket : buckets) cover.items_.insert(cover.items_.end(), bucket.begin(), bucket.end());
    return cover;
}

template <class F>
void WhitneyCover::for_each_ball_near(Point q, F&& f) const {
    if (balls_.empty()) return;
    const auto visit = [&](Point p) {
        const double fx = (p.x - window_.xmin) / cell_;
        const double fy = (p.y - window_.ymin) / cell_;
        if (fx < 0.0 || fy < 0.0) return;
        const int ix = static_cast<int>(fx);
        const int iy = static_cast<int>(fy);
        if (ix >= nx_ || iy >= ny_) return;
        const std::size_t b = static_cast<std::size_t>(iy) * static_cast<std::size_t>(nx_) + static_cast<std::size_t>(ix);
        for (std::size_t k = start_[b]; k < start_[b + 1]; ++k) f(items_[k], p);
    };
    if (!period_) {
        visit(q);
        return;
    }
    const double period = *period_;
    Point w{q.x, window_.ymin + std::fmod(q.y - window_.ymin, period)};
    if (w.y < window_.ymin) w.y += period;
    // Balls are narrower than half a period, so at most one shift reaches each.
    visit(w);
    visit({w.x, w.y + period});
    visit({w.x, w.y - period});
}

HValue WhitneyCover::eval(Point q, int order) const {
    static const std::vector<double> none;
    return eval_weighted(q, none, order);
}

HValue WhitneyCover::eval_weighted(Point q, const std::vector<double>& factors, int order) const {
    HValue out;
    for_each_ball_near(q, [&](std::uint32_t i, Point p) {
        const WhitneyBall& ball = balls_[i];
        const Point v = p - ball.center;
        const double s = norm(v);
        const double t = s / ball.radius;
        if (t >= 1.0) return;
        const double w = ball.weight * (factors.empty() ? 1.0 : factors[i]);
        if (order == 0) {
            out.value += w * BumpProfile::value(t);
            return;
        }
        const auto d = BumpProfile::derivatives(t);
        out.value += w * d[0];
        if (t <= 0.5) return;  // u is constant on the core
        const Point n = v * (1.0 / s);
        const double g1 = w * d[1] / ball.radius;
        out.grad = out.grad + n * g1;
        if (order >= 2) {
            const double a = w * d[2] / (ball.radius * ball.radius);
            const double b = g1 / s;
            out.hxx += a * n.x * n.x + b * (1.0 - n.x * n.x);
            out.hxy += a * n.x * n.y - b * n.x * n.y;
            out.hyy += a * n.y * n.y + b * (1.0 - n.y * n.y);
        }
    });
    return out;
}

double WhitneyCover::eval_truncated(Point q, std::size_t m) const {
    double v = 0.0;
    for_each_ball_near(q, [&](std::uint32_t i, Point p) {
        if (i >= m) return;
        const WhitneyBall& ball = balls_[i];
        const double t = distance(p, ball.center) / ball.radius;
        if (t < 1.0) v += ball.weight * BumpProfile::value(t);
    });
    return v;
}

long WhitneyCover::covering_ball(Point q) const {
    long found = -1;
    for_each_ball_near(q, [&](std::uint32_t i, Point p) {
        if (found < 0 && distance(p, balls_[i].center) < balls_[i].radius) found = static_cast<long>(i);
    });
    return found;
}

nlohmann::json WhitneyCover::to_json() const {
    nlohmann::json balls = nlohmann::json::array();
    for (const WhitneyBall& b : balls_) {
        balls.push_back({{"ax", b.center.x}, {"ay", b.center.y}, {"r", b.radius}, {"gamma", b.gamma}, {"level", b.level}});
    }
    nlohmann::json j{{"balls", std::move(balls)},
                     {"r_min", r_min_},
                     {"window", {window_.xmin, window_.xmax, window_.ymin, window_.ymax}}};
    if (period_) j["period_y"] = *period_;
    return j;
}

std::vector<double> ball_signs(const WhitneyCover& cover, const ComponentLabeling& labels, int minus_component) {
    std::vector<double> signs;
    signs.reserve(cover.balls().size());
    for (const WhitneyBall& b : cover.balls()) {
        const std::int32_t label = labels.label_at(b.center);
        if (label < 0) throw UnlabeledCell("ball center falls on an obstacle node");
        signs.push_back(label == minus_component ? -1.0 : 1.0);
    }
    return signs;
}

double signed_h(const WhitneyCover& cover, const ComponentLabeling& labels, int minus_component, Point q) {
    const HValue h = cover.eval(q, 0);
    if (h.value == 0.0) return 0.0;
    // A non-obstacle node's cell misses G, so q shares its label. Otherwise
    // fall back on a ball through q: each ball lies in one component.
    std::int32_t label = labels.label_at(q);
    if (label < 0) {
        const long j = cover.covering_ball(q);
        if (j >= 0) label = labels.label_at(cover.balls()[static_cast<std::size_t>(j)].center);
    }
    if (label < 0) throw UnlabeledCell("query lies in the unresolved shell");
    return label == minus_component ? -h.value : h.value;
}

}  // namespace nopath
