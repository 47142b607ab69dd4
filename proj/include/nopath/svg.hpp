#pragma once

// Deterministic SVG output: chain stages, bifurcation diagrams and the sign
// map of the Example C profile on the annulus.

#include <string>
#include <vector>

#include "nopath/chain.hpp"
#include "nopath/nonlin.hpp"
#include "nopath/verify.hpp"

namespace nopath {

std::string svg_chain_stages(const std::vector<Chain>& stages);
// Target set (one group per piece for B), zero-set overlay, trivial line.
std::string svg_bifurcation(const ProblemInstance& inst, const ZeroSet& zero, double spacing);
// Sign of phi(theta, 1/rho) over 0.2 < rho < 3, sampled on an n x n lattice.
std::string svg_phi_sign(const PeriodicProfile& profile, int n);

}  // namespace nopath
