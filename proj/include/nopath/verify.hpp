#pragma once

// Measurement layer: zero-set extraction, Hausdorff comparison, separation,
// h.o.t. sweeps, derivative audits and the crookedness tower report.

#include <string>
#include <vector>

#include <json.hpp>

#include "nopath/chain.hpp"
#include "nopath/grid.hpp"
#include "nopath/nonlin.hpp"

namespace nopath {

struct ZeroSet {
    std::vector<Point> points;
    std::vector<std::pair<int, int>> nodes;  // (row, col) on the extraction lattice
    std::vector<std::int32_t> labels;        // 4-neighbour components
    int component_count = 0;
    double tol = 0.0;
    double spacing = 0.0;
    Rect window{};
    std::size_t evaluated = 0;
};

// Nodes where |residual| <= tol * (1 + |lambda||x|). For C the residual is the
// angular equation divided by exp(-1/rho^2) and rho < 0.2 is skipped; for
// KEXX the sweep runs over lambda as well.
ZeroSet extract_zero_set(const ProblemInstance& inst, int grid_n, double tol);

double directed_hausdorff(const std::vector<Point>& from, const std::vector<Point>& to);
double hausdorff(const std::vector<Point>& a, const std::vector<Point>& b);

bool separation_check(const ComponentLabeling& labeling, Point seed_plus, Point seed_minus);

struct HotRow {
    double delta = 0.0;
    double ratio = 0.0;
};
// sup |r| / |x| over |lambda| <= Lambda (clipped to the window), |x| = delta.
std::vector<HotRow> hot_sweep(const ProblemInstance& inst, double Lambda, const std::vector<double>& deltas);
bool strictly_decreasing(const std::vector<HotRow>& rows);

// Max relative error of the declared gradient against central differences
// at Halton points of the field's smooth region.
double derivative_audit(const ScalarField& field, int sample_n, double step);

struct StageRow {
    int stage = 0;
    std::size_t links = 0;
    double max_diameter = 0.0;
    bool chain_ok = false;
    bool crooked = true;  // vacuous for stage 0
};
struct PathProxyReport {
    std::vector<StageRow> rows;
    nlohmann::json to_json() const;
};
// Throws AuditFailure if any refinement fails crookedness_audit.
PathProxyReport path_proxy_report(const std::vector<Chain>& stages);

// Target samples used for Hausdorff comparison: boundary samples plus member
// nodes of the extraction lattice, excluding the trivial line.
std::vector<Point> target_samples(const ProblemInstance& inst, double spacing);

struct Check {
    std::string name;
    nlohmann::json params;
    double measured = 0.0;
    double bound = 0.0;
    bool pass = false;
    std::string note;
};

struct Report {
    std::string example;
    std::vector<Check> checks;

    void add(Check c) { checks.push_back(std::move(c)); }
    int failures() const;
    nlohmann::json to_json() const;
};

// The invariant suite for an instance (grid_n <= 0 and tol < 0 pick defaults).
Report verify_instance(const ProblemInstance& inst, int grid_n, double tol);
double default_tol(ExampleTag tag);

}  // namespace nopath
