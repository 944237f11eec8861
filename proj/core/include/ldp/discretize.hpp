#pragma once

#include "ldp/mechanisms.hpp"
#include "ldp/params.hpp"
#include "ldp/random.hpp"

namespace ldp {

/// Symmetric output grid: 2m+1 atoms { i * half_range / m : i = -m..m }.
struct GridSpec {
  double half_range;  // positive; grid spans [-half_range, half_range]
  int m;              // positive; half-grid resolution
};

/// Unbiased rounding of y in [-half_range, half_range] onto the grid: with
/// k = floor(y m / C) the result is k C/m with probability k+1 - y m/C and
/// (k+1) C/m otherwise, so E[Z | y] = y exactly.  When y m/C lies within
/// 1e-12 of an integer, y is treated as that atom and returned without
/// consuming randomness (avoids a degenerate Bernoulli built from rounding
/// noise).
double discretize(double y, const GridSpec& grid, RandomStream& stream);

/// Bits needed to index one of the 2m+1 grid atoms: ceil(log2(2m+1)).
int bits_per_sample(int m);

/// Perturb-then-round using a cached context.  Supported for the piecewise
/// kinds (grid over [-a_bound, a_bound]) and the hybrids, whose discrete
/// component (Duchi or three-output) already emits atoms and passes through
/// unchanged.  Other kinds throw std::invalid_argument.
double perturb_discrete(const MechanismContext& context, int grid_m, double x,
                        RandomStream& stream);

/// One-shot convenience form of the above.
double perturb_discrete(MechanismKind kind, double x, const PrivacyBudget& budget,
                        int grid_m, RandomStream& stream);

}  // namespace ldp
