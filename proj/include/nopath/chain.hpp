#pragma once

// Linear chains of open disks, epsilon-chains through sampled connected sets,
// and crooked refinement (the finite stages of a pseudo-arc construction).

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "nopath/geometry.hpp"
#include "nopath/grid.hpp"

namespace nopath {

struct Disk {
    Point center;
    double radius = 1.0;
};

// Open disks meet iff their centers are closer than the sum of radii.
inline bool disks_intersect(const Disk& a, const Disk& b) {
    return distance(a.center, b.center) < a.radius + b.radius;
}

// Closure of `inner` lies in the closure of `outer`.
inline bool disk_contains(const Disk& outer, const Disk& inner) {
    return distance(outer.center, inner.center) + inner.radius <= outer.radius + 1e-12;
}

// Ordered disks whose members intersect exactly when adjacent.
class Chain {
public:
    // Validates the linear-chain axiom exhaustively; throws InvalidChain.
    static Chain make(std::vector<Disk> links, int stage);

    const std::vector<Disk>& links() const { return links_; }
    const Disk& operator[](std::size_t i) const { return links_[i]; }
    std::size_t size() const { return links_.size(); }
    int stage() const { return stage_; }
    double max_diameter() const;
    double min_radius() const;

    nlohmann::json to_json() const;
    static Chain from_json(const nlohmann::json& j);

private:
    Chain(std::vector<Disk> links, int stage) : links_(std::move(links)), stage_(stage) {}
    std::vector<Disk> links_;
    int stage_ = 0;
};

// Index of the first violated pair of the chain axiom, or std::nullopt-like
// {-1,-1} when the axiom holds.
std::pair<long, long> first_chain_violation(std::span<const Disk> links);

// Shortest path x -> y in the graph on `samples` with edges |p - q| < 2 eps.
// Consecutive outputs are < 2 eps apart and all others are >= 2 eps apart.
std::vector<Point> epsilon_chain(std::span<const Point> samples, Point x, Point y, double eps);

// Segments joining consecutive chain points; checks the ball condition first.
std::vector<Segment> polyline_of_chain(std::span<const Point> points, double eps);

struct CrookedPattern {
    std::vector<int> indices;
    int coarse_n = 0;
};

// Length of crooked_pattern(a, b) without building it.
std::size_t crooked_pattern_length(int a, int b);

// There-and-almost-back recursion with junction duplicates merged.
CrookedPattern crooked_pattern(int a, int b);

// The consecutive runs (recursion leaves) whose junction-merged
// concatenation is crooked_pattern(a, b).
std::vector<std::vector<int>> crooked_runs(int a, int b);

// For p < q with |v[p] - v[q]| >= 3 there are p < s < t < q with v[s] within
// one of v[q] and v[t] within one of v[p].
bool is_crooked(std::span<const int> values);

// Patterns longer than this are refused by refine_chain.
inline constexpr std::size_t kMaxPatternLength = 1u << 20;

// Crooked refinement of `coarse` with fine radius shrink * (min coarse radius).
// Throws GeometryFailure when the lanes do not fit or the pattern is too long.
Chain refine_chain(const Chain& coarse, double shrink);

// Fine link -> lowest-index containing coarse link (0-based).
std::vector<int> containment_map(const Chain& fine, const Chain& coarse);

bool crookedness_audit(const Chain& fine, const Chain& coarse);

// Nodes lying in the closed union of the link closures.
RegionMask chain_union_mask(const Chain& chain, Rect window, double spacing);

// Horizontal row of `n` unit disks, centers 1.05 apart, leftmost tangent to x = 0.
Chain default_initial_chain(int n = 4);

// Stages 0..stages by repeated refine_chain; the first entry is `initial`.
std::vector<Chain> build_tower(const Chain& initial, int stages, double shrink);

}  // namespace nopath
