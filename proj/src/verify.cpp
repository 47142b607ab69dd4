#include "nopath/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nopath/errors.hpp"
#include "nopath/kernels.hpp"
#include "nopath/point_index.hpp"

namespace nopath {

namespace {

constexpr double kRhoFloor = 0.2;

PointCloud to_cloud(const std::vector<Point>& pts) {
    PointCloud c;
    c.reserve(pts.size());
    for (const Point& p : pts) c.push_back(p);
    return c;
}

double radical_inverse(unsigned i, unsigned base) {
    double f = 1.0, r = 0.0;
    while (i > 0) {
        f /= base;
        r += f * (i % base);
        i /= base;
    }
    return r;
}

// Point on the lattice row of the extraction grid, filtered by |res| <= bound.
void threshold_row(const std::vector<double>& res, std::vector<double>& bounds, std::vector<std::uint8_t>& out) {
    // abs_below is strict; nudging the bound up one ulp makes it inclusive.
    for (double& b : bounds) b = std::nextafter(b, std::numeric_limits<double>::infinity());
    out.assign(res.size(), 0);
    kernels::abs_below(res, bounds, out);
}

void label_zero_set(ZeroSet& z, const RegionMask& zero_mask) {
    RegionMask obstacle(zero_mask.window(), zero_mask.spacing());
    for (int r = 0; r < zero_mask.rows(); ++r) {
        for (int c = 0; c < zero_mask.cols(); ++c) obstacle.set(r, c, !zero_mask.at(r, c));
    }
    const ComponentLabeling lab = label_components(obstacle);
    z.component_count = lab.component_count;
    z.labels.clear();
    for (const auto& [r, c] : z.nodes) z.labels.push_back(lab.label_of_node(r, c));
}

double omega_band_distance(const OmegaSpec& spec, double period, Point q) {
    const double rho = norm(q);
    double tau = std::fmod(1.0 / rho, period);
    if (tau < 0.0) tau += period;
    return omega_hat_boundary_distance({std::atan2(q.y, q.x), tau}, spec);
}

}  // namespace

double default_tol(ExampleTag tag) {
    return tag == ExampleTag::A || tag == ExampleTag::B ? 0.0 : 1e-9;
}

ZeroSet extract_zero_set(const ProblemInstance& inst, int grid_n, double tol) {
    if (grid_n < 64) throw InvalidArgument("extraction grid needs grid_n >= 64");
    if (!(tol >= 0.0)) throw InvalidArgument("tolerance must be nonnegative");
    ZeroSet z;
    z.tol = tol;
    z.window = inst.window;
    z.spacing = inst.window.width() / grid_n;

    if (inst.tag == ExampleTag::KEXX) {
        // lambda in [-3, 3] x the v-window, both on grid_n intervals.
        const RegionMask lattice(inst.window, z.spacing);
        RegionMask hits(inst.window, z.spacing);
        std::vector<double> r1, r2, b;
        std::vector<std::uint8_t> o1, o2;
        for (int k = 0; k <= grid_n; ++k) {
            const double lambda = -3.0 + 6.0 * k / grid_n;
            for (int row = 0; row < lattice.rows(); ++row) {
                r1.clear();
                r2.clear();
                b.clear();
                for (int col = 0; col < lattice.cols(); ++col) {
                    const Point v = lattice.node(row, col);
                    const Point res = kexx_residual(lambda, v);
                    r1.push_back(res.x);
                    r2.push_back(res.y);
                    b.push_back(tol * (1.0 + std::abs(lambda) * norm(v)));
                }
                std::vector<double> b2 = b;
                threshold_row(r1, b, o1);
                threshold_row(r2, b2, o2);
                for (int col = 0; col < lattice.cols(); ++col) {
                    ++z.evaluated;
                    const Point v = lattice.node(row, col);
                    if (v.x == 0.0 && v.y == 0.0) continue;
                    if (o1[static_cast<std::size_t>(col)] && o2[static_cast<std::size_t>(col)] && !hits.at(row, col)) {
                        hits.set(row, col, true);
                        z.points.push_back(v);
                        z.nodes.emplace_back(row, col);
                    }
                }
            }
        }
        label_zero_set(z, hits);
        return z;
    }

    RegionMask zero(inst.window, z.spacing);
    std::vector<double> res, bounds;
    std::vector<std::uint8_t> out;
    std::vector<std::uint8_t> skip;
    for (int row = 0; row < zero.rows(); ++row) {
        res.clear();
        bounds.clear();
        skip.clear();
        for (int col = 0; col < zero.cols(); ++col) {
            const Point q = zero.node(row, col);
            double value = 1.0;
            bool skipped = false;
            if (inst.tag == ExampleTag::C) {
                const double rho = norm(q);
                skipped = rho < kRhoFloor;
                if (!skipped) value = example_c_angular(*inst.profile, q);
                bounds.push_back(tol);
            } else {
                skipped = q.y == 0.0;
                if (!skipped) value = inst.scalar->residual(q);
                bounds.push_back(tol * (1.0 + std::abs(q.x) * std::abs(q.y)));
            }
            res.push_back(value);
            skip.push_back(skipped ? 1 : 0);
        }
        threshold_row(res, bounds, out);
        for (int col = 0; col < zero.cols(); ++col) {
            const std::size_t k = static_cast<std::size_t>(col);
            if (skip[k]) continue;
            ++z.evaluated;
            if (out[k]) {
                zero.set(row, col, true);
                z.points.push_back(zero.node(row, col));
                z.nodes.emplace_back(row, col);
            }
        }
    }
    label_zero_set(z, zero);
    return z;
}

double directed_hausdorff(const std::vector<Point>& from, const std::vector<Point>& to) {
    if (from.empty() || to.empty()) throw EmptyInput("Hausdorff distance needs nonempty point sets");
    const PointCloud cloud = to_cloud(to);
    double xmin = cloud.xs[0], xmax = xmin, ymin = cloud.ys[0], ymax = ymin;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        xmin = std::min(xmin, cloud.xs[i]);
        xmax = std::max(xmax, cloud.xs[i]);
        ymin = std::min(ymin, cloud.ys[i]);
        ymax = std::max(ymax, cloud.ys[i]);
    }
    const double extent = std::max({xmax - xmin, ymax - ymin, 1e-9});
    const double cell = std::max(extent / std::sqrt(static_cast<double>(cloud.size())), extent / 4096.0);
    const PointIndex index(cloud, cell);
    double worst = 0.0;
    for (const Point& p : from) worst = std::max(worst, index.nearest_dist2(p));
    return std::sqrt(worst);
}

double hausdorff(const std::vector<Point>& a, const std::vector<Point>& b) {
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

bool separation_check(const ComponentLabeling& labeling, Point seed_plus, Point seed_minus) {
    const std::int32_t a = labeling.label_at(seed_plus);
    const std::int32_t b = labeling.label_at(seed_minus);
    if (a < 0 || b < 0) throw SeedOnObstacle("separation seed lies on the obstacle mask");
    return a != b;
}

std::vector<HotRow> hot_sweep(const ProblemInstance& inst, double Lambda, const std::vector<double>& deltas) {
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        if (!(deltas[i] > 0.0)) throw InvalidArgument("deltas must be positive");
        if (i > 0 && !(deltas[i] < deltas[i - 1])) throw InvalidArgument("deltas must be descending");
    }
    constexpr int kSamples = 256;
    std::vector<HotRow> rows;
    for (const double d : deltas) {
        double sup = 0.0;
        if (inst.tag == ExampleTag::A || inst.tag == ExampleTag::B) {
            const double lmax = std::min({Lambda, std::abs(inst.window.xmin), std::abs(inst.window.xmax)});
            for (int i = 0; i < kSamples; ++i) {
                const double l = -lmax + 2.0 * lmax * i / (kSamples - 1);
                for (const double x : {d, -d}) sup = std::max(sup, std::abs(inst.scalar->r({l, x})) / d);
            }
        } else {
            for (int i = 0; i < kSamples; ++i) {
                const double t = 2.0 * kPi * i / kSamples;
                const Point v{d * std::cos(t), d * std::sin(t)};
                const Point r = inst.tag == ExampleTag::C ? example_c_field(*inst.profile, v).grad : kexx_hot(v);
                sup = std::max(sup, norm(r) / d);
            }
        }
        rows.push_back({d, sup});
    }
    return rows;
}

bool strictly_decreasing(const std::vector<HotRow>& rows) {
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (!(rows[i].ratio < rows[i - 1].ratio)) return false;
    }
    return true;
}

double derivative_audit(const ScalarField& field, int sample_n, double step) {
    if (sample_n <= 0 || !(step > 0.0)) throw InvalidArgument("audit needs samples and a positive step");
    double worst = 0.0;
    int taken = 0;
    for (unsigned i = 1; taken < sample_n && i < 1000000u; ++i) {
        const Point q{field.region.xmin + field.region.width() * radical_inverse(i, 2),
                      field.region.ymin + field.region.height() * radical_inverse(i, 3)};
        if (field.smooth_at && !field.smooth_at(q)) continue;
        ++taken;
        const Point a = field.gradient(q);
        const Point fd{(field.value({q.x + step, q.y}) - field.value({q.x - step, q.y})) / (2.0 * step),
                       (field.value({q.x, q.y + step}) - field.value({q.x, q.y - step})) / (2.0 * step)};
        const double err = norm(a - fd) / std::max(norm(a), 1e-12);
        worst = std::max(worst, err);
    }
    return worst;
}

nlohmann::json PathProxyReport::to_json() const {
    nlohmann::json rows_j = nlohmann::json::array();
    for (const StageRow& r : rows) {
        rows_j.push_back({{"stage", r.stage},
                          {"links", r.links},
                          {"max_diameter", r.max_diameter},
                          {"chain_ok", r.chain_ok},
                          {"crooked", r.crooked}});
    }
    return {{"stages", rows_j}, {"path_nonexistence_claimed", false}};
}

PathProxyReport path_proxy_report(const std::vector<Chain>& stages) {
    PathProxyReport rep;
    for (std::size_t s = 0; s < stages.size(); ++s) {
        StageRow row;
        row.stage = stages[s].stage();
        row.links = stages[s].size();
        row.max_diameter = stages[s].max_diameter();
        row.chain_ok = first_chain_violation(stages[s].links()).first < 0;
        if (s > 0) {
            try {
                row.crooked = crookedness_audit(stages[s], stages[s - 1]);
            } catch (const ContainmentFailure& e) {
                throw AuditFailure(std::string("stage ") + std::to_string(s) + ": " + e.what());
            }
            if (!row.crooked) throw AuditFailure("stage " + std::to_string(s) + " is not crooked in its parent");
        }
        rep.rows.push_back(row);
    }
    return rep;
}

std::vector<Point> target_samples(const ProblemInstance& inst, double spacing) {
    std::vector<Point> out;
    if (!inst.scalar) return out;
    const MembershipOracle& g = inst.scalar->target();
    const PointCloud b = g.boundary_samples(inst.window);
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b.ys[i] != 0.0) out.push_back(b[i]);
    }
    const RegionMask lattice(inst.window, spacing);
    for (int r = 0; r < lattice.rows(); ++r) {
        for (int c = 0; c < lattice.cols(); ++c) {
            const Point q = lattice.node(r, c);
            if (q.y != 0.0 && g.contains(q)) out.push_back(q);
        }
    }
    return out;
}

int Report::failures() const {
    return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; }));
}

nlohmann::json Report::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const Check& c : checks) {
        nlohmann::json j{{"name", c.name},
                         {"parameters", c.params},
                         {"measured", c.measured},
                         {"bound", c.bound},
                         {"pass", c.pass}};
        if (!c.note.empty()) j["note"] = c.note;
        arr.push_back(std::move(j));
    }
    return {{"example", example}, {"checks", arr}, {"failures", failures()}};
}

// ---------------------------------------------------------------------------
// suites

namespace {

const std::vector<double> kHotDeltas{0.2, 0.1, 0.05, 0.025};

void hot_checks(Report& rep, const ProblemInstance& inst) {
    const auto rows = hot_sweep(inst, 3.0 * kPi, kHotDeltas);
    nlohmann::json table = nlohmann::json::array();
    double envelope = 0.0;
    for (const HotRow& r : rows) {
        table.push_back({r.delta, r.ratio});
        envelope = std::max(envelope, r.ratio / r.delta);
    }
    rep.add({"hot_sweep_decreasing", {{"Lambda", 3.0 * kPi}, {"table", table}, {"envelope_C", envelope}},
             rows.back().ratio, rows.front().ratio, strictly_decreasing(rows), ""});
}

void scalar_suite(Report& rep, const ProblemInstance& inst, int grid_n, double tol) {
    const ScalarInstance& si = *inst.scalar;
    const double s = inst.window.width() / grid_n;
    const double r_min = si.cover().r_min();
    const std::vector<Point> targets = target_samples(inst, s);

    double worst = 0.0;
    for (const Point& q : targets) {
        worst = std::max(worst, std::abs(si.residual(q)) / (1.0 + std::abs(q.x) * std::abs(q.y)));
    }
    rep.add({"residual_on_target", {{"samples", targets.size()}}, worst, 1e-12, worst <= 1e-12, ""});

    const ZeroSet z = extract_zero_set(inst, grid_n, tol);
    rep.add({"zero_set_nonempty", {{"grid_n", grid_n}, {"tol", tol}}, static_cast<double>(z.points.size()), 1.0,
             !z.points.empty(), ""});
    if (!z.points.empty() && !targets.empty()) {
        const double fwd = directed_hausdorff(z.points, targets);
        const double bwd = directed_hausdorff(targets, z.points);
        rep.add({"hausdorff_zero_to_target", {{"spacing", s}, {"r_min", r_min}}, fwd, 2.0 * (s + r_min),
                 fwd <= 2.0 * (s + r_min), ""});
        rep.add({"hausdorff_target_to_zero", {{"spacing", s}}, bwd, 2.0 * s, bwd <= 2.0 * s, ""});
    }

    const bool sep1 = separation_check(si.labeling(), si.seed_plus(), si.seed_minus());
    const ComponentLabeling fine = label_components(obstacle_mask(si.target(), inst.window, 0.5 * s));
    const bool sep2 = separation_check(fine, si.seed_plus(), si.seed_minus());
    rep.add({"separation", {{"spacings", {s, 0.5 * s}}}, static_cast<double>(sep1) + sep2, 2.0, sep1 && sep2, ""});

    if (inst.tag == ExampleTag::B) {
        const auto& bset = dynamic_cast<const ExampleBSet&>(si.target());
        const RegionMask lattice(inst.window, s);
        std::vector<std::int8_t> piece(lattice.size(), -1);
        for (const auto& [r, c] : z.nodes) {
            const Point q = lattice.node(r, c);
            const double d[3] = {bset.piece_distance_lower_bound(q, BPiece::L),
                                 bset.piece_distance_lower_bound(q, BPiece::CPlus),
                                 bset.piece_distance_lower_bound(q, BPiece::CMinus)};
            piece[lattice.index(r, c)] = static_cast<std::int8_t>(std::min_element(d, d + 3) - d);
        }
        std::size_t lc = 0, pm = 0, stray = 0;
        const double reach = 2.0 * (s + r_min);
        for (const auto& [r, c] : z.nodes) {
            const int a = piece[lattice.index(r, c)];
            for (const auto& [dr, dc] : {std::pair{0, 1}, std::pair{1, 0}}) {
                const int r2 = r + dr, c2 = c + dc;
                if (r2 >= lattice.rows() || c2 >= lattice.cols()) continue;
                const int b = piece[lattice.index(r2, c2)];
                if (b < 0 || a == b) continue;
                if (a != 0 && b != 0) {
                    ++pm;
                } else {
                    ++lc;
                    const Point q = lattice.node(r, c);
                    if (std::min(distance(q, {0.0, 0.5}), distance(q, {0.0, -0.5})) > reach) ++stray;
                }
            }
        }
        rep.add({"pieces_pairwise_nonadjacent", {{"L_C_contacts", lc}, {"Cplus_Cminus_contacts", pm}},
                 static_cast<double>(lc + pm), 0.0, lc + pm == 0,
                 "closure of L meets C+- at (0, +-1/2)"});
        rep.add({"Cplus_Cminus_nonadjacent", {}, static_cast<double>(pm), 0.0, pm == 0, ""});
        rep.add({"L_contacts_only_at_endpoints", {{"reach", reach}}, static_cast<double>(stray), 0.0, stray == 0, ""});

        double off = 0.0;
        std::size_t inside = 0;
        for (const Point& q : z.points) {
            if (norm(q) < 0.25) {
                ++inside;
                off = std::max(off, std::abs(q.x));
            }
        }
        rep.add({"local_curve_on_lambda_zero", {{"points", inside}}, off, s, inside > 0 && off <= s, ""});
    }

    if (inst.tag == ExampleTag::A) {
        ScalarField w;
        w.name = "omega";
        const ConeParams cone = si.cone();
        w.value = [cone](Point q) { return omega_eval(cone, q, 0).value; };
        w.gradient = [cone](Point q) {
            const OmegaValue v = omega_eval(cone, q, 1);
            return Point{v.d_lambda, v.d_x};
        };
        w.region = inst.window;
        w.smooth_at = [](Point q) { return std::abs(q.x) > 0.1; };
        const double e = derivative_audit(w, 100, 1e-6);
        rep.add({"omega_derivative_audit", {{"samples", 100}, {"step", 1e-6}}, e, 1e-5, e < 1e-5, ""});
    }
    const double er = derivative_audit(si.r_field(), 100, 1e-6);
    rep.add({"r_derivative_audit", {{"samples", 100}, {"step", 1e-6}}, er, 1e-4, er < 1e-4, ""});
    hot_checks(rep, inst);
}

void c_suite(Report& rep, const ProblemInstance& inst, int grid_n, double tol) {
    const PeriodicProfile& pr = *inst.profile;
    double worst = 0.0;
    for (int j = 0; j < pr.n_tau(); ++j) {
        const double scale = std::abs(pr.kappa_plus()[static_cast<std::size_t>(j)] *
                                      pr.kappa_minus()[static_cast<std::size_t>(j)]);
        worst = std::max(worst, std::abs(pr.Phi(j, pr.n_sigma() - 1)) / scale);
    }
    rep.add({"phi_integral_zero", {{"rows", pr.n_tau()}}, worst, 1e-12, worst <= 1e-12, ""});
    const double kp = *std::min_element(pr.kappa_plus().begin(), pr.kappa_plus().end());
    const double km = *std::max_element(pr.kappa_minus().begin(), pr.kappa_minus().end());
    rep.add({"kappa_signs", {{"kappa_minus_max", km}}, kp, 0.0, kp > 0.0 && km < 0.0, ""});

    const double eg = derivative_audit(example_c_scalar_field(pr), 100, 1e-5);
    rep.add({"gradient_audit", {{"samples", 100}, {"step", 1e-5}}, eg, 1e-4, eg < 1e-4, ""});

    const double band = 2.0 * (std::max(pr.h_sigma(), pr.h_tau()) + pr.r_min());
    const ZeroSet z = extract_zero_set(inst, grid_n, tol);
    double far = 0.0;
    for (const Point& q : z.points) far = std::max(far, omega_band_distance(pr.spec(), pr.period(), q));
    rep.add({"zero_set_in_boundary_band", {{"points", z.points.size()}, {"tol", tol}}, far, band,
             !z.points.empty() && far <= band, ""});

    // Boundary points of the copies with 1/3 < tau < 5, i.e. 0.2 < rho < 3.
    const OmegaHatBoundary ob(pr.spec());
    const PointCloud bpts = ob.boundary_samples({-kPi, kPi, 1.0 / 3.0 + 1e-9, 5.0 - 1e-9});
    double ang = 0.0;
    bool lambda_ok = true;
    std::size_t used = 0;
    const std::size_t stride = std::max<std::size_t>(1, bpts.size() / 100);
    for (std::size_t i = 0; i < bpts.size() && used < 100; i += stride, ++used) {
        const double rho = 1.0 / bpts.ys[i];
        const Point q{rho * std::cos(bpts.xs[i]), rho * std::sin(bpts.xs[i])};
        const FieldValue f = example_c_field(pr, q);
        // d r / d theta = -y r_x + x r_y
        ang = std::max(ang, std::abs(-q.y * f.grad.x + q.x * f.grad.y));
        lambda_ok = lambda_ok && std::isfinite(example_c_lambda(pr, q));
    }
    rep.add({"boundary_angular_residual", {{"points", used}}, ang, 1e-8, used == 100 && ang < 1e-8, ""});
    rep.add({"radial_lambda_solvable", {{"points", used}}, lambda_ok ? 1.0 : 0.0, 1.0, lambda_ok, ""});

    // Normalized by the largest mixed partial seen, since pointwise ratios are
    // pure noise where the field is flat.
    double curl_abs = 0.0, curl_scale = 1e-12;
    const double h = 1e-5;
    int taken = 0;
    for (unsigned i = 1; taken < 100; ++i) {
        const Point q{-3.0 + 6.0 * radical_inverse(i, 2), -3.0 + 6.0 * radical_inverse(i, 3)};
        if (norm(q) < 0.3 || norm(q) > 3.0) continue;
        ++taken;
        const double g1y = (example_c_field(pr, {q.x, q.y + h}).grad.x - example_c_field(pr, {q.x, q.y - h}).grad.x) / (2 * h);
        const double g2x = (example_c_field(pr, {q.x + h, q.y}).grad.y - example_c_field(pr, {q.x - h, q.y}).grad.y) / (2 * h);
        curl_abs = std::max(curl_abs, std::abs(g1y - g2x));
        curl_scale = std::max({curl_scale, std::abs(g1y), std::abs(g2x)});
    }
    const double curl = curl_abs / curl_scale;
    rep.add({"curl_proxy", {{"samples", 100}, {"step", h}}, curl, 1e-3, curl < 1e-3, ""});
    hot_checks(rep, inst);
}

void kexx_suite(Report& rep, const ProblemInstance& inst, int grid_n, double tol) {
    const ZeroSet z = extract_zero_set(inst, grid_n, tol);
    rep.add({"no_nontrivial_zeros", {{"grid_n", grid_n}, {"tol", tol}, {"evaluated", z.evaluated}},
             static_cast<double>(z.points.size()), 0.0, z.points.empty(), ""});
    const auto rows = hot_sweep(inst, 3.0, {0.2, 0.1, 0.05});
    double err = 0.0;
    nlohmann::json table = nlohmann::json::array();
    for (const HotRow& r : rows) {
        err = std::max(err, std::abs(r.ratio - r.delta * r.delta));
        table.push_back({r.delta, r.ratio});
    }
    rep.add({"hot_sweep_closed_form", {{"table", table}}, err, 1e-12, err <= 1e-12, ""});
    double trivial = 0.0;
    for (int k = 0; k <= 60; ++k) trivial = std::max(trivial, norm(kexx_residual(-3.0 + 0.1 * k, {0.0, 0.0})));
    rep.add({"trivial_line", {}, trivial, 0.0, trivial == 0.0, ""});
}

}  // namespace

Report verify_instance(const ProblemInstance& inst, int grid_n, double tol) {
    Report rep;
    rep.example = to_string(inst.tag);
    if (grid_n <= 0) grid_n = inst.config.effective_grid_n(inst.tag);
    if (tol < 0.0) tol = default_tol(inst.tag);
    switch (inst.tag) {
        case ExampleTag::A:
        case ExampleTag::B: scalar_suite(rep, inst, grid_n, tol); break;
        case ExampleTag::C: c_suite(rep, inst, grid_n, tol); break;
        case ExampleTag::KEXX: kexx_suite(rep, inst, grid_n, tol); break;
    }
    return rep;
}

}  // namespace nopath
