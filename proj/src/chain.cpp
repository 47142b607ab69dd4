#include "nopath/chain.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include "nopath/errors.hpp"
#include "nopath/kernels.hpp"

namespace nopath {

std::pair<long, long> first_chain_violation(std::span<const Disk> links) {
    const long n = static_cast<long>(links.size());
    for (long i = 0; i < n; ++i) {
        for (long j = i + 1; j < n; ++j) {
            const bool meet = disks_intersect(links[static_cast<std::size_t>(i)],
                                              links[static_cast<std::size_t>(j)]);
            if (meet != (j - i <= 1)) return {i, j};
        }
    }
    return {-1, -1};
}

Chain Chain::make(std::vector<Disk> links, int stage) {
    if (links.empty()) throw InvalidChain("a chain needs at least one link");
    if (stage < 0) throw InvalidChain("negative stage");
    for (const Disk& d : links) {
        if (!(d.radius > 0.0)) throw InvalidChain("link radius must be positive");
    }
    if (const auto [i, j] = first_chain_violation(links); i >= 0) {
        throw InvalidChain("links " + std::to_string(i) + " and " + std::to_string(j) +
                           " violate intersect-iff-adjacent");
    }
    return Chain(std::move(links), stage);
}

double Chain::max_diameter() const {
    double r = 0.0;
    for (const Disk& d : links_) r = std::max(r, d.radius);
    return 2.0 * r;
}

double Chain::min_radius() const {
    double r = std::numeric_limits<double>::infinity();
    for (const Disk& d : links_) r = std::min(r, d.radius);
    return r;
}

nlohmann::json Chain::to_json() const {
    nlohmann::json links = nlohmann::json::array();
    for (const Disk& d : links_) {
        links.push_back({{"cx", d.center.x}, {"cy", d.center.y}, {"r", d.radius}});
    }
    return {{"stage", stage_}, {"links", std::move(links)}};
}

Chain Chain::from_json(const nlohmann::json& j) {
    std::vector<Disk> links;
    for (const auto& l : j.at("links")) {
        links.push_back({{l.at("cx").get<double>(), l.at("cy").get<double>()}, l.at("r").get<double>()});
    }
    return make(std::move(links), j.at("stage").get<int>());
}

// ---------------------------------------------------------------------------
// epsilon-chains

std::vector<Point> epsilon_chain(std::span<const Point> samples, Point x, Point y, double eps) {
    if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
    const auto find = [&](Point p) -> std::size_t {
        const auto it = std::find(samples.begin(), samples.end(), p);
        if (it == samples.end()) throw InvalidArgument("endpoint is not one of the samples");
        return static_cast<std::size_t>(it - samples.begin());
    };
    const std::size_t src = find(x);
    const std::size_t dst = find(y);
    if (src == dst) return {x};

    const double reach = 2.0 * eps;
    const std::size_t n = samples.size();
    constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> parent(n, kUnseen);
    std::deque<std::size_t> frontier{src};
    parent[src] = src;
    while (!frontier.empty() && parent[dst] == kUnseen) {
        const std::size_t u = frontier.front();
        frontier.pop_front();
        for (std::size_t v = 0; v < n; ++v) {
            if (parent[v] != kUnseen) continue;
            if (distance(samples[u], samples[v]) < reach) {
                parent[v] = u;
                frontier.push_back(v);
            }
        }
    }
    if (parent[dst] == kUnseen) {
        throw NotConnectedAtScale("no proximity path at eps = " + std::to_string(eps));
    }
    std::vector<Point> path;
    for (std::size_t v = dst; v != src; v = parent[v]) path.push_back(samples[v]);
    path.push_back(samples[src]);
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<Segment> polyline_of_chain(std::span<const Point> points, double eps) {
    const double reach = 2.0 * eps;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            const bool close = distance(points[i], points[j]) < reach;
            if (close != (j == i + 1)) {
                throw ChainConditionViolated("points " + std::to_string(i) + " and " +
                                             std::to_string(j));
            }
        }
    }
    std::vector<Segment> segs;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) segs.push_back({points[i], points[i + 1]});
    return segs;
}

// ---------------------------------------------------------------------------
// crooked patterns

namespace {

void append_runs(int a, int b, std::vector<std::vector<int>>& runs) {
    const int step = b > a ? 1 : -1;
    if (std::abs(b - a) <= 2) {
        std::vector<int> run;
        for (int v = a;; v += step) {
            run.push_back(v);
            if (v == b) break;
        }
        runs.push_back(std::move(run));
        return;
    }
    append_runs(a, b - step, runs);
    append_runs(b - step, a + step, runs);
    append_runs(a + step, b, runs);
}

}  // namespace

std::size_t crooked_pattern_length(int a, int b) {
    const int span = std::abs(b - a);
    // len(k) for span k: len(k) = 2 len(k-1) + len(k-2) - 2.
    std::size_t prev = 1;  // span 0
    std::size_t cur = 2;   // span 1
    if (span == 0) return 1;
    if (span <= 2) return static_cast<std::size_t>(span) + 1;
    prev = 2;
    cur = 3;
    for (int k = 3; k <= span; ++k) {
        const std::size_t next = 2 * cur + prev - 2;
        if (next > (std::size_t{1} << 60)) return std::numeric_limits<std::size_t>::max();
        prev = cur;
        cur = next;
    }
    return cur;
}

std::vector<std::vector<int>> crooked_runs(int a, int b) {
    if (crooked_pattern_length(a, b) > kMaxPatternLength) {
        throw InvalidArgument("crooked pattern from " + std::to_string(a) + " to " +
                              std::to_string(b) + " exceeds the length cap");
    }
    std::vector<std::vector<int>> runs;
    append_runs(a, b, runs);
    return runs;
}

CrookedPattern crooked_pattern(int a, int b) {
    if (a < 1 || b < 1 || a == b) throw InvalidArgument("crooked_pattern needs 1 <= a != b");
    CrookedPattern out;
    out.coarse_n = std::max(a, b);
    for (const auto& run : crooked_runs(a, b)) {
        auto first = run.begin();
        if (!out.indices.empty() && out.indices.back() == *first) ++first;
        out.indices.insert(out.indices.end(), first, run.end());
    }
    return out;
}

bool is_crooked(std::span<const int> v) {
    const std::size_t n = v.size();
    if (n < 2) return true;
    const auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
    const int lo = *lo_it - 1;
    const int width = *hi_it - lo + 2;
    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    // next_occ[w - lo] = first position > p holding value w.
    std::vector<std::size_t> next_occ(static_cast<std::size_t>(width), kNone);
    const auto slot = [&](int w) { return static_cast<std::size_t>(w - lo); };
    for (std::size_t p = n; p-- > 0;) {
        std::size_t last_near_p = kNone;
        for (std::size_t q = p + 1; q < n; ++q) {
            if (std::abs(v[p] - v[q]) >= 3) {
                if (last_near_p == kNone) return false;
                std::size_t first_near_q = kNone;
                for (int w = v[q] - 1; w <= v[q] + 1; ++w) {
                    if (w < lo || w - lo >= width) continue;
                    first_near_q = std::min(first_near_q, next_occ[slot(w)]);
                }
                if (!(first_near_q < last_near_p)) return false;
            }
            if (std::abs(v[q] - v[p]) <= 1) last_near_p = q;
        }
        next_occ[slot(v[p])] = p;
    }
    return true;
}

// ---------------------------------------------------------------------------
// refinement

namespace {

Point unit(Point p) {
    const double n = norm(p);
    return n > 0.0 ? (1.0 / n) * p : Point{1.0, 0.0};
}

// Arclength resampling of a polyline with spacing at most `step`.
std::vector<Point> resample(const std::vector<Point>& poly, double step) {
    std::vector<double> cum{0.0};
    for (std::size_t i = 1; i < poly.size(); ++i) cum.push_back(cum.back() + distance(poly[i - 1], poly[i]));
    const double total = cum.back();
    if (total <= 0.0) return {poly.front()};
    const auto k = static_cast<std::size_t>(std::ceil(total / step));
    std::vector<Point> out;
    std::size_t seg = 1;
    for (std::size_t i = 0; i <= k; ++i) {
        const double s = total * static_cast<double>(i) / static_cast<double>(k);
        while (seg + 1 < poly.size() && cum[seg] < s) ++seg;
        const double len = cum[seg] - cum[seg - 1];
        const double t = len > 0.0 ? std::clamp((s - cum[seg - 1]) / len, 0.0, 1.0) : 0.0;
        out.push_back(poly[seg - 1] + t * (poly[seg] - poly[seg - 1]));
    }
    return out;
}

}  // namespace

std::vector<int> containment_map(const Chain& fine, const Chain& coarse) {
    std::vector<int> map;
    map.reserve(fine.size());
    for (std::size_t i = 0; i < fine.size(); ++i) {
        int hit = -1;
        for (std::size_t k = 0; k < coarse.size(); ++k) {
            if (disk_contains(coarse[k], fine[i])) {
                hit = static_cast<int>(k);
                break;
            }
        }
        if (hit < 0) throw ContainmentFailure("fine link " + std::to_string(i) + " lies in no coarse link");
        map.push_back(hit);
    }
    return map;
}

bool crookedness_audit(const Chain& fine, const Chain& coarse) {
    const std::vector<int> map = containment_map(fine, coarse);
    return is_crooked(map);
}

Chain refine_chain(const Chain& coarse, double shrink) {
    if (!(shrink > 0.0 && shrink <= 0.5)) throw InvalidArgument("shrink must lie in (0, 1/2]");
    const int n = static_cast<int>(coarse.size());
    const double rf = shrink * coarse.min_radius();

    std::vector<std::vector<int>> runs;
    if (n <= 3) {
        runs = {{}};
        for (int v = 1; v <= n; ++v) runs[0].push_back(v);
    } else {
        if (crooked_pattern_length(1, n) > kMaxPatternLength) {
            throw GeometryFailure("a crooked pattern over " + std::to_string(n) +
                                  " links is longer than " + std::to_string(kMaxPatternLength));
        }
        runs = crooked_runs(1, n);
    }

    // Unit tangent and normal of the coarse center line at each link.
    std::vector<Point> normal(static_cast<std::size_t>(n));
    std::vector<Point> tangent(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        const Point prev = coarse[static_cast<std::size_t>(std::max(v - 1, 0))].center;
        const Point next = coarse[static_cast<std::size_t>(std::min(v + 1, n - 1))].center;
        const Point t = n == 1 ? Point{1.0, 0.0} : unit(next - prev);
        tangent[static_cast<std::size_t>(v)] = t;
        normal[static_cast<std::size_t>(v)] = {-t.y, t.x};
    }

    // One lane per run, stacked across the chain with spacing just over 2 rf.
    const double lane_gap = 2.1 * rf;
    const double m = static_cast<double>(runs.size());
    if (0.5 * (m - 1.0) * lane_gap + rf > coarse.min_radius()) {
        throw GeometryFailure(std::to_string(runs.size()) + " lanes of radius " + std::to_string(rf) +
                              " do not fit across the coarse links");
    }
    const auto waypoint = [&](int value, std::size_t lane) {
        const auto v = static_cast<std::size_t>(value - 1);
        const double offset = (static_cast<double>(lane) - 0.5 * (m - 1.0)) * lane_gap;
        return coarse[v].center + offset * normal[v];
    };

    std::vector<Point> poly;
    const Disk& first = coarse[0];
    const Disk& last = coarse[static_cast<std::size_t>(n - 1)];
    poly.push_back(first.center - (first.radius - rf) * tangent.front());
    for (std::size_t lane = 0; lane < runs.size(); ++lane) {
        for (int value : runs[lane]) poly.push_back(waypoint(value, lane));
    }
    poly.push_back(last.center + (last.radius - rf) * tangent.back());

    std::vector<Disk> links;
    for (const Point& c : resample(poly, 1.5 * rf)) links.push_back({c, rf});

    std::vector<Disk> fine_links = links;
    if (const auto [i, j] = first_chain_violation(fine_links); i >= 0) {
        throw GeometryFailure("lanes collide at shrink " + std::to_string(shrink) + " (links " +
                              std::to_string(i) + ", " + std::to_string(j) + ")");
    }
    Chain fine = Chain::make(std::move(fine_links), coarse.stage() + 1);
    try {
        if (!crookedness_audit(fine, coarse)) {
            throw GeometryFailure("refined chain is not crooked at shrink " + std::to_string(shrink));
        }
    } catch (const ContainmentFailure& e) {
        throw GeometryFailure(std::string("lanes leave the coarse chain: ") + e.what());
    }
    return fine;
}

RegionMask chain_union_mask(const Chain& chain, Rect window, double spacing) {
    RegionMask mask(window, spacing);
    std::vector<double> cx, cy, r;
    for (const Disk& d : chain.links()) {
        cx.push_back(d.center.x);
        cy.push_back(d.center.y);
        r.push_back(d.radius);
    }
    mask.fill([&](Point p) { return kernels::any_disk_contains(p.x, p.y, cx, cy, r); });
    return mask;
}

Chain default_initial_chain(int n) {
    if (n < 1) throw InvalidArgument("initial chain needs at least one link");
    std::vector<Disk> links;
    for (int k = 0; k < n; ++k) links.push_back({{1.0 + 1.05 * k, 0.0}, 1.0});
    return Chain::make(std::move(links), 0);
}

std::vector<Chain> build_tower(const Chain& initial, int stages, double shrink) {
    std::vector<Chain> tower{initial};
    for (int s = 0; s < stages; ++s) tower.push_back(refine_chain(tower.back(), shrink));
    return tower;
}

}  // namespace nopath
