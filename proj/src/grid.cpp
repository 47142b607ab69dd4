#include "nopath/grid.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "nopath/errors.hpp"

namespace nopath {

RegionMask::RegionMask(Rect window, double spacing) : window_(window), spacing_(spacing) {
    if (!(spacing > 0.0)) throw InvalidArgument("mask spacing must be positive");
    if (window.width() < 0.0 || window.height() < 0.0) {
        throw InvalidArgument("mask window has negative extent");
    }
    cols_ = static_cast<int>(std::floor(window.width() / spacing + 1e-9)) + 1;
    rows_ = static_cast<int>(std::floor(window.height() / spacing + 1e-9)) + 1;
    cells_.assign(static_cast<std::size_t>(cols_) * static_cast<std::size_t>(rows_), 0);
}

std::pair<int, int> RegionMask::nearest(Point p) const {
    const int col = static_cast<int>(std::lround((p.x - window_.xmin) / spacing_));
    const int row = static_cast<int>(std::lround((p.y - window_.ymin) / spacing_));
    return {std::clamp(row, 0, rows_ - 1), std::clamp(col, 0, cols_ - 1)};
}

std::size_t RegionMask::count() const {
    return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

void RegionMask::fill(const std::function<bool(Point)>& pred) {
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) set(r, c, pred(node(r, c)));
    }
}

void RegionMask::write_csv(std::ostream& os) const {
    os << "row,col,value\n";
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) os << r << ',' << c << ',' << (at(r, c) ? 1 : 0) << '\n';
    }
}

void RegionMask::write_pgm(std::ostream& os) const {
    os << "P5\n" << cols_ << ' ' << rows_ << "\n255\n";
    std::vector<char> line(static_cast<std::size_t>(cols_));
    for (int r = rows_ - 1; r >= 0; --r) {
        for (int c = 0; c < cols_; ++c) line[static_cast<std::size_t>(c)] = at(r, c) ? char(0) : char(255);
        os.write(line.data(), static_cast<std::streamsize>(line.size()));
    }
}

std::int32_t ComponentLabeling::label_at(Point p) const {
    const auto [r, c] = obstacle.nearest(p);
    return label_of_node(r, c);
}

std::size_t ComponentLabeling::component_size(std::int32_t label) const {
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), label));
}

ComponentLabeling label_components(const RegionMask& obstacle) {
    ComponentLabeling out;
    out.obstacle = obstacle;
    out.labels.assign(obstacle.size(), -2);
    const int rows = obstacle.rows();
    const int cols = obstacle.cols();
    std::vector<std::pair<int, int>> stack;
    std::int32_t next = 0;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const std::size_t i = obstacle.index(r, c);
            if (obstacle.at(r, c)) {
                out.labels[i] = -1;
                continue;
            }
            if (out.labels[i] != -2) continue;
            out.labels[i] = next;
            stack.assign(1, {r, c});
            while (!stack.empty()) {
                const auto [cr, cc] = stack.back();
                stack.pop_back();
                constexpr int dr[4] = {1, -1, 0, 0};
                constexpr int dc[4] = {0, 0, 1, -1};
                for (int k = 0; k < 4; ++k) {
                    const int nr = cr + dr[k];
                    const int nc = cc + dc[k];
                    if (nr < 0 || nr >= rows || nc < 0 || nc >= cols) continue;
                    const std::size_t j = obstacle.index(nr, nc);
                    if (obstacle.at(nr, nc) || out.labels[j] != -2) continue;
                    out.labels[j] = next;
                    stack.emplace_back(nr, nc);
                }
            }
            ++next;
        }
    }
    out.component_count = next;
    return out;
}

}  // namespace nopath
