#include "nopath/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace nopath {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

// Window -> canvas, y flipped, longest side 800 px.
class Canvas {
public:
    explicit Canvas(Rect w) : w_(w) {
        scale_ = 800.0 / std::max(w.width(), w.height());
        width_ = w.width() * scale_;
        height_ = w.height() * scale_;
    }
    double x(double v) const { return (v - w_.xmin) * scale_; }
    double y(double v) const { return (w_.ymax - v) * scale_; }
    double len(double v) const { return v * scale_; }
    std::string open() const {
        return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
               num(width_) + "\" height=\"" + num(height_) + "\" viewBox=\"0 0 " + num(width_) + " " +
               num(height_) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    }

private:
    Rect w_;
    double scale_ = 1.0, width_ = 0.0, height_ = 0.0;
};

void cells(std::ostringstream& os, const Canvas& cv, const std::vector<Point>& pts, double h) {
    for (const Point& p : pts) {
        os << "<rect x=\"" << num(cv.x(p.x - 0.5 * h)) << "\" y=\"" << num(cv.y(p.y + 0.5 * h)) << "\" width=\""
           << num(cv.len(h)) << "\" height=\"" << num(cv.len(h)) << "\"/>\n";
    }
}

}  // namespace

std::string svg_chain_stages(const std::vector<Chain>& stages) {
    Rect box{1e300, -1e300, 1e300, -1e300};
    for (const Chain& c : stages) {
        for (const Disk& d : c.links()) {
            box.xmin = std::min(box.xmin, d.center.x - d.radius);
            box.xmax = std::max(box.xmax, d.center.x + d.radius);
            box.ymin = std::min(box.ymin, d.center.y - d.radius);
            box.ymax = std::max(box.ymax, d.center.y + d.radius);
        }
    }
    const double pad = 0.05 * std::max(box.width(), box.height());
    box = {box.xmin - pad, box.xmax + pad, box.ymin - pad, box.ymax + pad};
    const Canvas cv(box);
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
    std::ostringstream os;
    os << cv.open();
    for (const Chain& c : stages) {
        os << "<g id=\"stage" << c.stage() << "\" fill=\"none\" stroke=\"" << colors[c.stage() % 4]
           << "\" stroke-width=\"" << (c.stage() == 0 ? "1.5" : "0.6") << "\">\n";
        for (const Disk& d : c.links()) {
            os << "<circle cx=\"" << num(cv.x(d.center.x)) << "\" cy=\"" << num(cv.y(d.center.y)) << "\" r=\""
               << num(cv.len(d.radius)) << "\"/>\n";
        }
        os << "</g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string svg_bifurcation(const ProblemInstance& inst, const ZeroSet& zero, double spacing) {
    const Canvas cv(inst.window);
    std::ostringstream os;
    os << cv.open();
    if (inst.scalar) {
        const RegionMask lattice(inst.window, spacing);
        std::vector<Point> groups[3];
        const auto* bset = dynamic_cast<const ExampleBSet*>(&inst.scalar->target());
        for (int r = 0; r < lattice.rows(); ++r) {
            for (int c = 0; c < lattice.cols(); ++c) {
                const Point q = lattice.node(r, c);
                if (bset) {
                    const BPiece p = bset->piece(q);
                    if (p == BPiece::L) groups[0].push_back(q);
                    if (p == BPiece::CPlus) groups[1].push_back(q);
                    if (p == BPiece::CMinus) groups[2].push_back(q);
                } else if (inst.scalar->target().contains(q)) {
                    groups[0].push_back(q);
                }
            }
        }
        if (bset) {
            // L is a segment: draw it as one.
            os << "<g id=\"L\" stroke=\"#2ca02c\" stroke-width=\"2\"><line x1=\"" << num(cv.x(0.0)) << "\" y1=\""
               << num(cv.y(-0.5)) << "\" x2=\"" << num(cv.x(0.0)) << "\" y2=\"" << num(cv.y(0.5)) << "\"/></g>\n";
            os << "<g id=\"Cplus\" fill=\"#1f77b4\">\n";
            cells(os, cv, groups[1], spacing);
            os << "</g>\n<g id=\"Cminus\" fill=\"#d62728\">\n";
            cells(os, cv, groups[2], spacing);
            os << "</g>\n";
        } else {
            os << "<g id=\"G\" fill=\"#1f77b4\">\n";
            cells(os, cv, groups[0], spacing);
            os << "</g>\n";
        }
    }
    os << "<g id=\"zero\" fill=\"black\" fill-opacity=\"0.5\">\n";
    for (const Point& p : zero.points) {
        os << "<circle cx=\"" << num(cv.x(p.x)) << "\" cy=\"" << num(cv.y(p.y)) << "\" r=\"0.6\"/>\n";
    }
    os << "</g>\n";
    if (inst.tag != ExampleTag::C) {
        os << "<g id=\"trivial\" stroke=\"gray\" stroke-width=\"1\"><line x1=\"0\" y1=\"" << num(cv.y(0.0))
           << "\" x2=\"" << num(cv.x(inst.window.xmax)) << "\" y2=\"" << num(cv.y(0.0)) << "\"/></g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string svg_phi_sign(const PeriodicProfile& profile, int n) {
    const Rect w{-3.0, 3.0, -3.0, 3.0};
    const Canvas cv(w);
    const double h = w.width() / n;
    std::vector<Point> neg, pos, zero;
    for (int r = 0; r <= n; ++r) {
        for (int c = 0; c <= n; ++c) {
            const Point q{w.xmin + c * h, w.ymin + r * h};
            const double rho = norm(q);
            if (rho <= 0.2 || rho >= 3.0) continue;
            const double v = example_c_angular(profile, q);
            (v < 0.0 ? neg : v > 0.0 ? pos : zero).push_back(q);
        }
    }
    std::ostringstream os;
    os << cv.open();
    os << "<g id=\"phi_negative\" fill=\"#d62728\">\n";
    cells(os, cv, neg, h);
    os << "</g>\n<g id=\"phi_positive\" fill=\"#aec7e8\">\n";
    cells(os, cv, pos, h);
    os << "</g>\n<g id=\"phi_zero\" fill=\"black\">\n";
    cells(os, cv, zero, h);
    os << "</g>\n</svg>\n";
    return os.str();
}

}  // namespace nopath
