#pragma once

// Set-level transforms: Q from a chain, the pinched tiling P~, its quarter-turn
// rotation G (Example A), the three-piece set of Example B and the periodic
// arrangement of copies of Omega used by Example C. Membership is answered by
// pulling the query point back through the inverse transform.

#include <memory>
#include <string_view>

#include <json.hpp>

#include "nopath/chain.hpp"
#include "nopath/geometry.hpp"
#include "nopath/point_index.hpp"

namespace nopath {

// What the Whitney cover needs from a closed set.
class ClosedSet {
public:
    virtual ~ClosedSet() = default;
    virtual bool contains(Point q) const = 0;
    // Lower bound on min(dist(q, set), cap); zero for members. A finite cap
    // lets far queries stop early.
    virtual double distance_lower_bound(Point q, double cap = kInf) const = 0;
    // Lower bound on dist(q, complement) for members; zero is always valid.
    virtual double depth_lower_bound(Point) const { return 0.0; }
};

enum class OracleTag { PTilde, GRot, BSet, OmegaHatBoundary };
std::string_view to_string(OracleTag tag);

class MembershipOracle : public ClosedSet {
public:
    virtual OracleTag tag() const = 0;
    virtual nlohmann::json parameters() const = 0;
    // Samples of the set's boundary that fall inside `window`.
    virtual PointCloud boundary_samples(Rect window) const = 0;
    // Every boundary point lies within this distance of some sample.
    virtual double sample_error() const = 0;
};

// (lambda, x) -> (lambda, x sin lambda)
Point sin_pinch(Point p);

// Q: the closed union of a chain's links, carried affinely from the chain's
// own frame onto [0, pi] x [-1/4, 1/4].
class QSet {
public:
    // `frame` is the chain-frame rectangle sent onto the Q rectangle; pass the
    // stage-0 frame so every stage lands in the same coordinates.
    QSet(Chain chain, Rect frame, double sample_spacing);
    static Rect frame_of(const Chain& chain);

    const Chain& chain() const { return chain_; }
    Point to_q(Point f) const { return {(f.x - x0_) * sx_, (f.y - y0_) * sy_}; }
    Point to_frame(Point q) const { return {q.x / sx_ + x0_, q.y / sy_ + y0_}; }
    bool contains(Point q) const;
    // Boundary samples of Q and their covering radius, both in Q coordinates.
    const PointCloud& boundary() const { return boundary_; }
    double sample_error() const { return sample_error_; }
    double sample_spacing() const { return spacing_; }

private:
    Chain chain_;
    double spacing_;
    double x0_ = 0.0;
    double y0_ = 0.0;
    double sx_ = 1.0;
    double sy_ = 1.0;
    std::vector<double> cx_, cy_, r_;
    PointCloud boundary_;
    double sample_error_ = 0.0;
};

// P~ = union over |k| <= K of the pinched copies P + (k pi, 0).
class PTildeOracle final : public MembershipOracle {
public:
    PTildeOracle(std::shared_ptr<const QSet> q, int tiles);

    bool contains(Point q) const override;
    double distance_lower_bound(Point q, double cap = kInf) const override;
    double depth_lower_bound(Point q) const override;
    OracleTag tag() const override { return OracleTag::PTilde; }
    nlohmann::json parameters() const override;
    PointCloud boundary_samples(Rect window) const override;
    double sample_error() const override { return error_; }

    int tiles() const { return tiles_; }
    const QSet& q_set() const { return *q_; }
    const PointCloud& all_boundary_samples() const { return samples_; }

private:
    std::shared_ptr<const QSet> q_;
    int tiles_;
    PointCloud samples_;
    PointIndex index_;
    double error_;
};

// Membership via inverse rotation by `angle` about the origin.
class RotatedOracle final : public MembershipOracle {
public:
    RotatedOracle(std::shared_ptr<const MembershipOracle> inner, double angle);

    bool contains(Point q) const override { return inner_->contains(unrotate(q)); }
    double distance_lower_bound(Point q, double cap = kInf) const override {
        return inner_->distance_lower_bound(unrotate(q), cap);
    }
    double depth_lower_bound(Point q) const override {
        return inner_->depth_lower_bound(unrotate(q));
    }
    OracleTag tag() const override { return OracleTag::GRot; }
    nlohmann::json parameters() const override;
    PointCloud boundary_samples(Rect window) const override;
    double sample_error() const override { return inner_->sample_error(); }

    Point rotate(Point p) const { return {c_ * p.x - s_ * p.y, s_ * p.x + c_ * p.y}; }
    Point unrotate(Point p) const { return {c_ * p.x + s_ * p.y, -s_ * p.x + c_ * p.y}; }
    double angle() const { return angle_; }

private:
    std::shared_ptr<const MembershipOracle> inner_;
    double angle_, c_, s_;
};

// G of Example A: P~ turned counter-clockwise by pi/4.
std::shared_ptr<RotatedOracle> rotate_quarter(std::shared_ptr<const PTildeOracle> ptilde);

enum class BPiece { None, L, CPlus, CMinus };

// L u C+ u C-: L = {0} x (-1/2, 1/2), C+- = (0, +-1/2) + (P~ restricted to +-lambda >= 0).
class ExampleBSet final : public MembershipOracle {
public:
    explicit ExampleBSet(std::shared_ptr<const PTildeOracle> ptilde);

    BPiece piece(Point q) const;
    // Lower bound on the distance from q to one piece (0 for its members).
    double piece_distance_lower_bound(Point q, BPiece piece, double cap = kInf) const;
    bool contains(Point q) const override { return piece(q) != BPiece::None; }
    double distance_lower_bound(Point q, double cap = kInf) const override;
    double depth_lower_bound(Point q) const override;
    OracleTag tag() const override { return OracleTag::BSet; }
    nlohmann::json parameters() const override;
    PointCloud boundary_samples(Rect window) const override;
    double sample_error() const override { return ptilde_->sample_error(); }

private:
    std::shared_ptr<const PTildeOracle> ptilde_;
    PointCloud plus_, minus_;
    PointIndex plus_index_, minus_index_;
};

// ---------------------------------------------------------------------------
// Example C arrangement

enum class OmegaShape { Stadium, ChainPolygon };

struct OmegaSpec {
    OmegaShape shape = OmegaShape::Stadium;
    double a = 1.0;                // half-height
    double p = 1.5;                // half-period, a < p < 2a
    double half_width = kPi / 8;   // Omega lies in [-half_width, half_width] x [-a, a]

    void validate() const;  // throws InvalidArgument
    nlohmann::json to_json() const;
};

enum class OmegaClass { Inside, Outside, BoundaryBand };

// Distance from (sigma, tau) to the boundary of Omega-hat.
double omega_hat_boundary_distance(Point q, const OmegaSpec& spec);
// Membership in the open set Omega-hat.
bool omega_hat_contains(Point q, const OmegaSpec& spec);
OmegaClass omega_hat_classify(Point q, const OmegaSpec& spec, double band);
// Midpoint-rule measure of {sigma in [-pi, pi] : (sigma, tau) in Omega-hat}.
double slice_measure(double tau, const OmegaSpec& spec, int quad_n);

// Boundary of Omega-hat as a closed set (periodic in tau with period 2p).
class OmegaHatBoundary final : public MembershipOracle {
public:
    explicit OmegaHatBoundary(OmegaSpec spec) : spec_(spec) { spec_.validate(); }

    bool contains(Point q) const override { return omega_hat_boundary_distance(q, spec_) == 0.0; }
    double distance_lower_bound(Point q, double cap = kInf) const override {
        return std::min(cap, omega_hat_boundary_distance(q, spec_));
    }
    OracleTag tag() const override { return OracleTag::OmegaHatBoundary; }
    nlohmann::json parameters() const override { return spec_.to_json(); }
    PointCloud boundary_samples(Rect window) const override;
    double sample_error() const override { return 0.0; }
    const OmegaSpec& spec() const { return spec_; }
    // Points on the boundary of one copy of Omega centred at the origin.
    std::vector<Point> omega_boundary_points(int n) const;

private:
    OmegaSpec spec_;
};

}  // namespace nopath
