#include <doctest.h>

#include <cmath>
#include <deque>
#include <vector>

#include "nopath/chain.hpp"
#include "nopath/errors.hpp"

using namespace nopath;

namespace {

// Independent crookedness check over all position pairs.
bool crooked_brute(const std::vector<int>& v) {
    const std::size_t n = v.size();
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            if (std::abs(v[p] - v[q]) < 3) continue;
            bool found = false;
            for (std::size_t s = p + 1; s < q && !found; ++s) {
                if (std::abs(v[s] - v[q]) > 1) continue;
                for (std::size_t t = s + 1; t < q; ++t) {
                    if (std::abs(v[t] - v[p]) <= 1) {
                        found = true;
                        break;
                    }
                }
            }
            if (!found) return false;
        }
    }
    return true;
}

// Hop count of the shortest path in the < 2 eps proximity graph.
int bfs_hops(const std::vector<Point>& pts, std::size_t from, std::size_t to, double eps) {
    std::vector<int> dist(pts.size(), -1);
    std::deque<std::size_t> q{from};
    dist[from] = 0;
    while (!q.empty()) {
        const std::size_t i = q.front();
        q.pop_front();
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (dist[j] < 0 && distance(pts[i], pts[j]) < 2.0 * eps) {
                dist[j] = dist[i] + 1;
                q.push_back(j);
            }
        }
    }
    return dist[to];
}

std::vector<Point> circle12() {
    std::vector<Point> pts;
    for (int i = 0; i < 12; ++i) pts.push_back({std::cos(i * kPi / 6.0), std::sin(i * kPi / 6.0)});
    return pts;
}

}  // namespace

TEST_SUITE("chain") {
TEST_CASE("epsilon chain on three collinear points") {
    const std::vector<Point> s{{0, 0}, {0.5, 0}, {1, 0}};
    const auto c = epsilon_chain(s, {0, 0}, {1, 0}, 0.3);
    REQUIRE(c.size() == 3);
    CHECK(c[1] == Point{0.5, 0});
    CHECK(distance(c[0], c[1]) < 0.6);
    CHECK(distance(c[0], c[2]) >= 0.6);
    CHECK(epsilon_chain(s, {0.5, 0}, {0.5, 0}, 0.3).size() == 1);
}

TEST_CASE("epsilon chain between antipodes of a 12-gon has 7 points") {
    const auto pts = circle12();
    const auto c = epsilon_chain(pts, pts[0], pts[6], 0.3);
    CHECK(static_cast<int>(c.size()) == bfs_hops(pts, 0, 6, 0.3) + 1);
    REQUIRE(c.size() == 7);
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            CHECK((distance(c[i], c[j]) < 0.6) == (j == i + 1));
        }
    }
    const auto segs = polyline_of_chain(c, 0.3);
    REQUIRE(segs.size() == 6);
    for (std::size_t i = 0; i < segs.size(); ++i) {
        for (std::size_t j = i + 2; j < segs.size(); ++j) CHECK_FALSE(segments_intersect(segs[i], segs[j]));
    }
}

TEST_CASE("polyline of collinear chain shares the middle point") {
    const std::vector<Point> c{{0, 0}, {0.5, 0}, {1, 0}};
    const auto segs = polyline_of_chain(c, 0.3);
    REQUIRE(segs.size() == 2);
    CHECK(segs[0].b == Point{0.5, 0});
    CHECK(segs[1].a == Point{0.5, 0});
    CHECK(polyline_of_chain(std::vector<Point>{{0, 0}, {0.5, 0}}, 0.3).size() == 1);
    CHECK_THROWS_AS(polyline_of_chain(std::vector<Point>{{0, 0}, {0.5, 0}, {0.55, 0}}, 0.3), ChainConditionViolated);
}

TEST_CASE("crooked patterns") {
    CHECK(crooked_pattern(1, 3).indices == std::vector<int>{1, 2, 3});
    CHECK(crooked_pattern(1, 4).indices == std::vector<int>{1, 2, 3, 2, 3, 4});
    for (int b = 3; b <= 7; ++b) {
        const auto p = crooked_pattern(1, b);
        CHECK(p.indices.size() == crooked_pattern_length(1, b));
        CHECK(crooked_brute(p.indices));
        CHECK(is_crooked(p.indices));
        CHECK(p.indices.front() == 1);
        CHECK(p.indices.back() == b);
    }
    CHECK(crooked_pattern_length(1, 5) == 13);
    CHECK(crooked_pattern_length(1, 6) == 30);
    const std::vector<int> straight{1, 2, 3, 4, 5};
    CHECK_FALSE(crooked_brute(straight));
    CHECK_FALSE(is_crooked(straight));
}

TEST_CASE("chain axiom is enforced") {
    CHECK_NOTHROW(Chain::make({{{0, 0}, 1}, {{1.5, 0}, 1}, {{3, 0}, 1}}, 0));
    CHECK_THROWS_AS(Chain::make({{{0, 0}, 1}, {{1.5, 0}, 1}, {{1.9, 0}, 1}}, 0), InvalidChain);
    CHECK_THROWS_AS(Chain::make({{{0, 0}, 1}, {{2.5, 0}, 1}}, 0), InvalidChain);
}

TEST_CASE("refining a straight 3-link chain") {
    const Chain coarse = Chain::make({{{0, 0}, 1}, {{1.5, 0}, 1}, {{3, 0}, 1}}, 0);
    const Chain fine = refine_chain(coarse, 0.2);
    CHECK(first_chain_violation(fine.links()).first == -1);
    const auto map = containment_map(fine, coarse);
    CHECK(map.size() == fine.size());
    CHECK(crookedness_audit(fine, coarse));
}

TEST_CASE("stage 1 of the default tower is a crooked refinement") {
    const auto tower = build_tower(default_initial_chain(4), 1, 0.2);
    REQUIRE(tower.size() == 2);
    CHECK(first_chain_violation(tower[1].links()).first == -1);
    CHECK(crookedness_audit(tower[1], tower[0]));
    CHECK(tower[1].max_diameter() * 3.0 <= tower[0].max_diameter());
}

TEST_CASE("deeper crooked stages exceed the pattern budget") {
    // The crooked pattern over n coarse links grows faster than 2^n, so the
    // second refinement of the default tower is refused rather than faked.
    const auto tower = build_tower(default_initial_chain(4), 1, 0.2);
    CHECK(crooked_pattern_length(1, static_cast<int>(tower[1].size())) > kMaxPatternLength);
    CHECK_THROWS_AS(refine_chain(tower[1], 0.2), GeometryFailure);
}

TEST_CASE("union mask of the unit disk") {
    const Chain c = Chain::make({{{0, 0}, 1}}, 0);
    const RegionMask m = chain_union_mask(c, {-2, 2, -2, 2}, 0.5);
    CHECK(m.count() == 13);
    const RegionMask empty = chain_union_mask(c, {5, 6, 5, 6}, 0.5);
    CHECK(empty.count() == 0);
    const auto tower = build_tower(default_initial_chain(4), 1, 0.2);
    const RegionMask s1 = chain_union_mask(tower[1], {-1, 5, -2, 2}, 0.05);
    CHECK(s1.count() > 0);
    CHECK(s1.count() < s1.size());
}

TEST_CASE("chain json round trip") {
    const Chain c = default_initial_chain(4);
    const Chain d = Chain::from_json(c.to_json());
    REQUIRE(d.size() == c.size());
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(d[i].center == c[i].center);
}
}

TEST_SUITE("chain") {
TEST_CASE("segment intersection predicate") {
    CHECK(segments_intersect({{0, 0}, {1, 1}}, {{0, 1}, {1, 0}}));
    CHECK(segments_intersect({{0, 0}, {1, 0}}, {{1, 0}, {2, 1}}));
    CHECK(segments_intersect({{0, 0}, {2, 0}}, {{1, 0}, {3, 0}}));
    CHECK_FALSE(segments_intersect({{0, 0}, {1, 0}}, {{2, 0}, {3, 0}}));
    CHECK_FALSE(segments_intersect({{0, 0}, {1, 1}}, {{0, 1}, {0.4, 0.6 + 1e-15}}));
    // Far apart pieces of one rounded line: sign noise must not matter.
    const Segment a{{0.11457584416862307, -0.041564997486606733}, {0.2056624417535812, -0.022857804341802276}};
    const Segment b{{0.47892223450845567, 0.033263775092611109}, {0.5700088320934138, 0.051970968237415566}};
    CHECK_FALSE(segments_intersect(a, b));
    // Exactly collinear in binary, touching at a shared endpoint.
    CHECK(segments_intersect({{0.1, 0.1}, {0.3, 0.3}}, {{0.3, 0.3}, {0.7, 0.7}}));
}
}
