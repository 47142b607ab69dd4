#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace nopath {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
    friend constexpr Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(Point a, Point b) = default;
};

inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double distance(Point a, Point b) { return norm(a - b); }
constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }

// Axis-aligned window [xmin, xmax] x [ymin, ymax]. For bifurcation diagrams
// x is the parameter lambda and y the state coordinate.
struct Rect {
    double xmin = 0.0;
    double xmax = 0.0;
    double ymin = 0.0;
    double ymax = 0.0;

    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
    bool contains(Point p) const {
        return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
    }
};

struct Segment {
    Point a;
    Point b;
};

// Exact-orientation closed segment intersection (collinear overlaps count).
bool segments_intersect(const Segment& s, const Segment& t);

// Structure-of-arrays point set; the layout the SIMD kernels consume.
struct PointCloud {
    std::vector<double> xs;
    std::vector<double> ys;

    std::size_t size() const { return xs.size(); }
    bool empty() const { return xs.empty(); }
    void push_back(Point p) {
        xs.push_back(p.x);
        ys.push_back(p.y);
    }
    Point operator[](std::size_t i) const { return {xs[i], ys[i]}; }
    void reserve(std::size_t n) {
        xs.reserve(n);
        ys.reserve(n);
    }
};

}  // namespace nopath
