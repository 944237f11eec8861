#include "ldp/discretize.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ldp {

namespace {

// Tolerance (in units of grid steps) under which a value counts as already
// sitting on an atom.
constexpr double kAtomSnapTolerance = 1e-12;

void check_grid(const GridSpec& grid) {
  if (!(grid.half_range > 0.0) || !std::isfinite(grid.half_range)) {
    throw std::invalid_argument("grid half_range must be finite and > 0");
  }
  if (grid.m < 1) {
    throw std::invalid_argument("grid resolution m must be >= 1");
  }
}

}  // namespace

double discretize(double y, const GridSpec& grid, RandomStream& stream) {
  check_grid(grid);
  if (!std::isfinite(y) || std::abs(y) > grid.half_range) {
    throw std::invalid_argument("value to discretize must lie in [-C, C], got " +
                                std::to_string(y));
  }
  const double step = grid.half_range / grid.m;
  const double scaled = y * grid.m / grid.half_range;  // in [-m, m]
  const double nearest = std::nearbyint(scaled);
  if (std::abs(scaled - nearest) <= kAtomSnapTolerance) {
    return nearest * step;
  }
  const double lower = std::floor(scaled);
  // P[upper atom] = scaled - lower, the unbiased two-point split.
  if (stream.bernoulli(scaled - lower)) {
    return (lower + 1.0) * step;
  }
  return lower * step;
}

int bits_per_sample(int m) {
  if (m < 1) {
    throw std::invalid_argument("grid resolution m must be >= 1");
  }
  // ceil(log2(2m+1)) == bit_width(2m) since 2m+1 is odd and > 1.
  return std::bit_width(static_cast<unsigned long long>(2ull * m));
}

double perturb_discrete(const MechanismContext& context, int grid_m, double x,
                        RandomStream& stream) {
  if (!std::isfinite(x) || x < -1.0 || x > 1.0) {
    throw std::invalid_argument("input must lie in [-1, 1], got " +
                                std::to_string(x));
  }
  switch (context.kind()) {
    case MechanismKind::kPm:
    case MechanismKind::kPmOpt:
    case MechanismKind::kPmSub: {
      const double y = perturb_piecewise(context.piecewise(), x, stream);
      return discretize(y, {context.piecewise().a_bound, grid_m}, stream);
    }
    case MechanismKind::kHm:
      if (stream.bernoulli(context.mixture_weight())) {
        const double y = perturb_piecewise(context.piecewise(), x, stream);
        return discretize(y, {context.piecewise().a_bound, grid_m}, stream);
      }
      // The binary component is already atomic; it passes through.
      {
        const double magnitude = context.duchi_magnitude();
        const double p_plus = 0.5 + x / (2.0 * magnitude);
        return stream.bernoulli(p_plus) ? magnitude : -magnitude;
      }
    case MechanismKind::kHmTp:
      if (stream.bernoulli(context.mixture_weight())) {
        const double y = perturb_piecewise(context.piecewise(), x, stream);
        return discretize(y, {context.piecewise().a_bound, grid_m}, stream);
      }
      // The three-output component is already atomic; it passes through.
      return perturb_three_outputs(context.three_outputs(), x, stream);
    default:
      throw std::invalid_argument(
          "discrete output requires a piecewise or hybrid mechanism");
  }
}

double perturb_discrete(MechanismKind kind, double x, const PrivacyBudget& budget,
                        int grid_m, RandomStream& stream) {
  return perturb_discrete(MechanismContext(kind, budget), grid_m, x, stream);
}

}  // namespace ldp
