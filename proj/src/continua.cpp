#include "nopath/continua.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>

#include "nopath/errors.hpp"
#include "nopath/kernels.hpp"

namespace nopath {

namespace {

// Lipschitz constant of the pinch on |x| <= 1/4.
constexpr double kPinchLipschitz = 1.25;

double segment_distance(Point q, Point a, Point b) {
    const Point ab = b - a;
    const double len2 = dot(ab, ab);
    double t = len2 > 0.0 ? dot(q - a, ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return distance(q, a + ab * t);
}

void append_if_inside(PointCloud& out, Point p, Rect window) {
    if (window.contains(p)) out.push_back(p);
}

}  // namespace

std::string_view to_string(OracleTag tag) {
    switch (tag) {
        case OracleTag::PTilde: return "P_TILDE";
        case OracleTag::GRot: return "G_ROT";
        case OracleTag::BSet: return "B_SET";
        case OracleTag::OmegaHatBoundary: return "OMEGA_HAT_BOUNDARY";
    }
    return "?";
}

Point sin_pinch(Point p) { return {p.x, p.y * std::sin(p.x)}; }

// ---------------------------------------------------------------------------
// Q

Rect QSet::frame_of(const Chain& chain) {
    Rect f{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
           std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const Disk& d : chain.links()) {
        f.xmin = std::min(f.xmin, d.center.x - d.radius);
        f.xmax = std::max(f.xmax, d.center.x + d.radius);
        f.ymin = std::min(f.ymin, d.center.y - d.radius);
        f.ymax = std::max(f.ymax, d.center.y + d.radius);
    }
    // Symmetric about the chain's mid-height so the pinch axis runs through it.
    const double mid = 0.5 * (f.ymin + f.ymax);
    const double half = 0.5 * (f.ymax - f.ymin);
    f.ymin = mid - half;
    f.ymax = mid + half;
    return f;
}

QSet::QSet(Chain chain, Rect frame, double sample_spacing)
    : chain_(std::move(chain)), spacing_(sample_spacing) {
    if (!(sample_spacing > 0.0)) throw InvalidArgument("sample spacing must be positive");
    if (!(frame.width() > 0.0 && frame.height() > 0.0)) throw DegenerateWindow("empty chain frame");
    x0_ = frame.xmin;
    y0_ = 0.5 * (frame.ymin + frame.ymax);
    sx_ = kPi / frame.width();
    sy_ = 0.25 / (0.5 * frame.height());

    for (const Disk& d : chain_.links()) {
        cx_.push_back(d.center.x);
        cy_.push_back(d.center.y);
        r_.push_back(d.radius);
    }
    const auto& links = chain_.links();
    // A boundary point of the union lies on some circle and inside no other disk.
    const auto on_boundary = [&](Point f, std::size_t self, std::size_t other) {
        for (std::size_t k = 0; k < links.size(); ++k) {
            if (k == self || k == other) continue;
            if (distance(f, links[k].center) < links[k].radius - 1e-12) return false;
        }
        return true;
    };
    const double smax = std::max(sx_, sy_);
    for (std::size_t i = 0; i < links.size(); ++i) {
        const Disk& d = links[i];
        const int n = std::max(16, 2 * static_cast<int>(std::ceil(kPi * d.radius * smax / spacing_)));
        for (int s = 0; s < n; ++s) {
            const double t = 2.0 * kPi * s / n;
            const Point f{d.center.x + d.radius * std::cos(t), d.center.y + d.radius * std::sin(t)};
            if (on_boundary(f, i, i)) boundary_.push_back(to_q(f));
        }
    }
    // Corners where consecutive circles cross.
    for (std::size_t i = 0; i + 1 < links.size(); ++i) {
        const Disk& a = links[i];
        const Disk& b = links[i + 1];
        const double dd = distance(a.center, b.center);
        if (dd <= std::abs(a.radius - b.radius) || dd >= a.radius + b.radius) continue;
        const double along = (dd * dd + a.radius * a.radius - b.radius * b.radius) / (2.0 * dd);
        const double h = std::sqrt(std::max(0.0, a.radius * a.radius - along * along));
        const Point u = (b.center - a.center) * (1.0 / dd);
        const Point n{-u.y, u.x};
        for (const double sgn : {-1.0, 1.0}) {
            const Point f = a.center + u * along + n * (sgn * h);
            if (on_boundary(f, i, i + 1)) boundary_.push_back(to_q(f));
        }
    }
    sample_error_ = spacing_;
}

bool QSet::contains(Point q) const {
    const Point f = to_frame(q);
    return kernels::any_disk_contains(f.x, f.y, cx_, cy_, r_);
}

// ---------------------------------------------------------------------------
// P~

PTildeOracle::PTildeOracle(std::shared_ptr<const QSet> q, int tiles)
    : q_(std::move(q)), tiles_(tiles), error_(kPinchLipschitz * q_->sample_error()) {
    if (tiles < 1) throw InvalidArgument("tile range K must be >= 1");
    const PointCloud& b = q_->boundary();
    samples_.reserve(b.size() * static_cast<std::size_t>(2 * tiles + 1) + 2);
    for (int k = -tiles; k <= tiles; ++k) {
        for (std::size_t i = 0; i < b.size(); ++i) {
            const Point p = sin_pinch(b[i]);
            samples_.push_back({p.x + k * kPi, p.y});
        }
    }
    index_ = PointIndex(samples_, 8.0 * q_->sample_spacing());
}

bool PTildeOracle::contains(Point q) const {
    const double t = std::floor(q.x / kPi);
    for (const double kd : {t - 1.0, t}) {
        if (kd < -tiles_ || kd > tiles_) continue;
        const double u = q.x - kd * kPi;
        if (u < 0.0 || u > kPi) continue;
        if (u == 0.0 || u == kPi) {
            if (q.y == 0.0) return true;
            continue;
        }
        const double s = std::sin(u);
        if (s <= 0.0) {
            if (q.y == 0.0 && q_->contains({u <= 0.5 * kPi ? 0.0 : kPi, 0.0})) return true;
            continue;
        }
        if (q_->contains({u, q.y / s})) return true;
    }
    return false;
}

double PTildeOracle::distance_lower_bound(Point q, double cap) const {
    if (contains(q)) return 0.0;
    return std::max(0.0, index_.nearest_distance(q, cap + error_) - error_);
}

double PTildeOracle::depth_lower_bound(Point q) const {
    if (!contains(q)) return 0.0;
    return std::max(0.0, index_.nearest_distance(q) - error_);
}

nlohmann::json PTildeOracle::parameters() const {
    return {{"tag", to_string(tag())},
            {"K", tiles_},
            {"stage", q_->chain().stage()},
            {"links", q_->chain().size()},
            {"sample_spacing", q_->sample_spacing()}};
}

PointCloud PTildeOracle::boundary_samples(Rect window) const {
    PointCloud out;
    for (std::size_t i = 0; i < samples_.size(); ++i) append_if_inside(out, samples_[i], window);
    return out;
}

// ---------------------------------------------------------------------------
// rotation

RotatedOracle::RotatedOracle(std::shared_ptr<const MembershipOracle> inner, double angle)
    : inner_(std::move(inner)), angle_(angle), c_(std::cos(angle)), s_(std::sin(angle)) {}

nlohmann::json RotatedOracle::parameters() const {
    return {{"tag", to_string(tag())}, {"angle", angle_}, {"inner", inner_->parameters()}};
}

PointCloud RotatedOracle::boundary_samples(Rect window) const {
    Rect pre{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
             std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const Point corner : {Point{window.xmin, window.ymin}, Point{window.xmin, window.ymax},
                               Point{window.xmax, window.ymin}, Point{window.xmax, window.ymax}}) {
        const Point p = unrotate(corner);
        pre.xmin = std::min(pre.xmin, p.x);
        pre.xmax = std::max(pre.xmax, p.x);
        pre.ymin = std::min(pre.ymin, p.y);
        pre.ymax = std::max(pre.ymax, p.y);
    }
    const PointCloud inner = inner_->boundary_samples(pre);
    PointCloud out;
    for (std::size_t i = 0; i < inner.size(); ++i) append_if_inside(out, rotate(inner[i]), window);
    return out;
}

std::shared_ptr<RotatedOracle> rotate_quarter(std::shared_ptr<const PTildeOracle> ptilde) {
    if (!ptilde) throw InvalidArgument("null oracle");
    return std::make_shared<RotatedOracle>(std::move(ptilde), kPi / 4.0);
}

// ---------------------------------------------------------------------------
// Example B

ExampleBSet::ExampleBSet(std::shared_ptr<const PTildeOracle> ptilde) : ptilde_(std::move(ptilde)) {
    const PointCloud& s = ptilde_->all_boundary_samples();
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.xs[i] >= 0.0) plus_.push_back({s.xs[i], s.ys[i] + 0.5});
        if (s.xs[i] <= 0.0) minus_.push_back({s.xs[i], s.ys[i] - 0.5});
    }
    const double cell = 8.0 * ptilde_->q_set().sample_spacing();
    plus_index_ = PointIndex(plus_, cell);
    minus_index_ = PointIndex(minus_, cell);
}

BPiece ExampleBSet::piece(Point q) const {
    if (q.x >= 0.0 && ptilde_->contains({q.x, q.y - 0.5})) return BPiece::CPlus;
    if (q.x <= 0.0 && ptilde_->contains({q.x, q.y + 0.5})) return BPiece::CMinus;
    if (q.x == 0.0 && std::abs(q.y) < 0.5) return BPiece::L;
    return BPiece::None;
}

double ExampleBSet::distance_lower_bound(Point q, double cap) const {
    if (contains(q)) return 0.0;
    const double err = ptilde_->sample_error();
    const double dl = std::min(cap, segment_distance(q, {0.0, -0.5}, {0.0, 0.5}));
    const double dp = std::max(0.0, plus_index_.nearest_distance(q, dl + err) - err);
    const double dm = std::max(0.0, minus_index_.nearest_distance(q, std::min(dl, dp) + err) - err);
    return std::min({dl, dp, dm});
}

double ExampleBSet::piece_distance_lower_bound(Point q, BPiece which, double cap) const {
    if (piece(q) == which) return 0.0;
    const double err = ptilde_->sample_error();
    switch (which) {
        case BPiece::L: return std::min(cap, segment_distance(q, {0.0, -0.5}, {0.0, 0.5}));
        case BPiece::CPlus: return std::max(0.0, plus_index_.nearest_distance(q, cap + err) - err);
        case BPiece::CMinus: return std::max(0.0, minus_index_.nearest_distance(q, cap + err) - err);
        case BPiece::None: break;
    }
    return 0.0;
}

double ExampleBSet::depth_lower_bound(Point q) const {
    const BPiece p = piece(q);
    if (p == BPiece::None || p == BPiece::L) return 0.0;
    const PointIndex& idx = p == BPiece::CPlus ? plus_index_ : minus_index_;
    return std::max(0.0, idx.nearest_distance(q) - ptilde_->sample_error());
}

nlohmann::json ExampleBSet::parameters() const {
    return {{"tag", to_string(tag())}, {"shift", 0.5}, {"inner", ptilde_->parameters()}};
}

PointCloud ExampleBSet::boundary_samples(Rect window) const {
    PointCloud out;
    for (std::size_t i = 0; i < plus_.size(); ++i) append_if_inside(out, plus_[i], window);
    for (std::size_t i = 0; i < minus_.size(); ++i) append_if_inside(out, minus_[i], window);
    const double step = ptilde_->q_set().sample_spacing();
    const int n = static_cast<int>(std::ceil(1.0 / step));
    for (int i = 1; i < n; ++i) append_if_inside(out, {0.0, -0.5 + static_cast<double>(i) / n}, window);
    return out;
}

// ---------------------------------------------------------------------------
// Example C arrangement

void OmegaSpec::validate() const {
    if (!(a > 0.0)) throw InvalidArgument("Omega half-height must be positive");
    if (!(half_width > 0.0 && half_width <= kPi / 4.0)) {
        throw InvalidArgument("Omega half-width must lie in (0, pi/4]");
    }
    if (!(p > 0.0)) throw InvalidArgument("half-period must be positive");
    if (shape == OmegaShape::Stadium && !(half_width < a)) {
        throw InvalidArgument("stadium needs half_width < a");
    }
}

nlohmann::json OmegaSpec::to_json() const {
    return {{"shape", shape == OmegaShape::Stadium ? "STADIUM" : "CHAIN_POLYGON"},
            {"a", a},
            {"p", p},
            {"half_width", half_width}};
}

namespace {

// Vertices of the CHAIN_POLYGON outline: the half-width wiggles through the
// values of a crooked index pattern, so the outline folds back on itself.
std::vector<Point> chain_polygon(const OmegaSpec& spec) {
    static constexpr int kPattern[] = {1, 2, 3, 2, 3, 4, 3, 2, 3, 4, 3, 4, 5};
    constexpr int n = static_cast<int>(std::size(kPattern));
    std::vector<Point> right, poly;
    for (int k = 0; k < n; ++k) {
        const double tau = -spec.a + 2.0 * spec.a * k / (n - 1);
        right.push_back({spec.half_width * (0.5 + 0.5 * (kPattern[k] - 1) / 4.0), tau});
    }
    for (const Point& p : right) poly.push_back(p);
    for (auto it = right.rbegin(); it != right.rend(); ++it) poly.push_back({-it->x, it->y});
    return poly;
}

// Signed distance to one copy centred at the origin: negative inside.
double omega_signed(Point q, const OmegaSpec& spec) {
    if (spec.shape == OmegaShape::Stadium) {
        const double core = spec.a - spec.half_width;
        return segment_distance(q, {0.0, -core}, {0.0, core}) - spec.half_width;
    }
    const std::vector<Point> poly = chain_polygon(spec);
    double d = std::numeric_limits<double>::infinity();
    bool inside = false;
    for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
        d = std::min(d, segment_distance(q, poly[j], poly[i]));
        if ((poly[i].y > q.y) != (poly[j].y > q.y)) {
            const double xcross = poly[j].x + (q.y - poly[j].y) * (poly[i].x - poly[j].x) / (poly[i].y - poly[j].y);
            if (q.x < xcross) inside = !inside;
        }
    }
    return inside ? -d : d;
}

// Signed distance to the arrangement; copies are pairwise disjoint, so a
// point is inside at most one of them.
double omega_hat_signed(Point q, const OmegaSpec& spec) {
    const double period = 2.0 * spec.p;
    double outside = std::numeric_limits<double>::infinity();
    for (const auto& [cx, offset] : {std::pair{-kPi / 2.0, 0.0}, std::pair{kPi / 2.0, spec.p}}) {
        const double rel = q.y - offset;
        const double k0 = std::round(rel / period);
        for (double k = k0 - 1.0; k <= k0 + 1.0; k += 1.0) {
            const double d = omega_signed({q.x - cx, rel - k * period}, spec);
            if (d < 0.0) return d;
            outside = std::min(outside, d);
        }
    }
    return outside;
}

}  // namespace

double omega_hat_boundary_distance(Point q, const OmegaSpec& spec) {
    return std::abs(omega_hat_signed(q, spec));
}

bool omega_hat_contains(Point q, const OmegaSpec& spec) { return omega_hat_signed(q, spec) < 0.0; }

OmegaClass omega_hat_classify(Point q, const OmegaSpec& spec, double band) {
    const double s = omega_hat_signed(q, spec);
    if (std::abs(s) <= band) return OmegaClass::BoundaryBand;
    return s < 0.0 ? OmegaClass::Inside : OmegaClass::Outside;
}

double slice_measure(double tau, const OmegaSpec& spec, int quad_n) {
    if (quad_n < 64) throw InvalidArgument("slice quadrature needs at least 64 nodes");
    const double h = 2.0 * kPi / quad_n;
    int hits = 0;
    for (int i = 0; i < quad_n; ++i) {
        if (omega_hat_contains({-kPi + (i + 0.5) * h, tau}, spec)) ++hits;
    }
    return hits * h;
}

std::vector<Point> OmegaHatBoundary::omega_boundary_points(int n) const {
    std::vector<Point> out;
    if (spec_.shape == OmegaShape::Stadium) {
        const double w = spec_.half_width;
        const double core = spec_.a - w;
        const double perimeter = 2.0 * kPi * w + 4.0 * core;
        for (int i = 0; i < n; ++i) {
            double s = perimeter * i / n;
            if (s < 2.0 * core) {
                out.push_back({w, -core + s});
                continue;
            }
            s -= 2.0 * core;
            if (s < kPi * w) {
                const double t = s / w;
                out.push_back({w * std::cos(t), core + w * std::sin(t)});
                continue;
            }
            s -= kPi * w;
            if (s < 2.0 * core) {
                out.push_back({-w, core - s});
                continue;
            }
            s -= 2.0 * core;
            const double t = kPi + s / w;
            out.push_back({w * std::cos(t), -core + w * std::sin(t)});
        }
        return out;
    }
    const std::vector<Point> poly = chain_polygon(spec_);
    double perimeter = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) perimeter += distance(poly[i], poly[(i + 1) % poly.size()]);
    std::size_t edge = 0;
    double edge_start = 0.0;
    for (int i = 0; i < n; ++i) {
        const double s = perimeter * i / n;
        while (edge + 1 < poly.size() && s > edge_start + distance(poly[edge], poly[edge + 1])) {
            edge_start += distance(poly[edge], poly[edge + 1]);
            ++edge;
        }
        const Point a = poly[edge];
        const Point b = poly[(edge + 1) % poly.size()];
        const double len = distance(a, b);
        out.push_back(a + (b - a) * (len > 0.0 ? (s - edge_start) / len : 0.0));
    }
    return out;
}

PointCloud OmegaHatBoundary::boundary_samples(Rect window) const {
    const std::vector<Point> base = omega_boundary_points(512);
    const double period = 2.0 * spec_.p;
    PointCloud out;
    for (const auto& [cx, offset] : {std::pair{-kPi / 2.0, 0.0}, std::pair{kPi / 2.0, spec_.p}}) {
        const int k0 = static_cast<int>(std::floor((window.ymin - offset - spec_.a) / period));
        const int k1 = static_cast<int>(std::ceil((window.ymax - offset + spec_.a) / period));
        for (int k = k0; k <= k1; ++k) {
            for (const Point& b : base) append_if_inside(out, {b.x + cx, b.y + offset + k * period}, window);
        }
    }
    return out;
}

}  // namespace nopath
