#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "nopath/geometry.hpp"

namespace nopath {

// Boolean occupancy on the node lattice xmin + col*h, ymin + row*h of a window.
class RegionMask {
public:
    RegionMask() = default;
    RegionMask(Rect window, double spacing);

    const Rect& window() const { return window_; }
    double spacing() const { return spacing_; }
    int cols() const { return cols_; }
    int rows() const { return rows_; }
    std::size_t size() const { return cells_.size(); }

    Point node(int row, int col) const {
        return {window_.xmin + col * spacing_, window_.ymin + row * spacing_};
    }
    bool at(int row, int col) const { return cells_[index(row, col)] != 0; }
    void set(int row, int col, bool v) { cells_[index(row, col)] = v ? 1 : 0; }
    std::size_t index(int row, int col) const {
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(cols_) +
               static_cast<std::size_t>(col);
    }
    // Nearest lattice node, clamped into the window.
    std::pair<int, int> nearest(Point p) const;

    std::size_t count() const;
    const std::vector<std::uint8_t>& cells() const { return cells_; }

    // Sets every node for which pred(node) holds.
    void fill(const std::function<bool(Point)>& pred);

    void write_csv(std::ostream& os) const;
    // Binary P5, row 0 of the image is the top (ymax) row of the window.
    void write_pgm(std::ostream& os) const;

private:
    Rect window_{};
    double spacing_ = 1.0;
    int cols_ = 0;
    int rows_ = 0;
    std::vector<std::uint8_t> cells_;
};

// Components of the complement of an obstacle mask under 4-neighbour
// connectivity. Obstacle nodes carry label -1.
struct ComponentLabeling {
    RegionMask obstacle;
    std::vector<std::int32_t> labels;
    int component_count = 0;

    std::int32_t label_of_node(int row, int col) const {
        return labels[obstacle.index(row, col)];
    }
    // Label of the lattice node nearest to p (-1 when that node is an obstacle).
    std::int32_t label_at(Point p) const;
    std::size_t component_size(std::int32_t label) const;
};

ComponentLabeling label_components(const RegionMask& obstacle);

}  // namespace nopath
