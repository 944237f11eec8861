#pragma once

#include <array>

#include "ldp/params.hpp"
#include "ldp/random.hpp"

namespace ldp {

/// Output probabilities of the three-output mechanism at input x, as
/// {P[+c_mag], P[0], P[-c_mag]}.  For x >= 0 these are
///   P[0]  = a - b x
///   P[+c] = (1 - P[0])/2 + x/(2 c_mag)
///   P[-c] = (1 - P[0])/2 - x/(2 c_mag)
/// and a negative input mirrors the distribution (P[+c | x] = P[-c | -x]);
/// the mirrored evaluation reproduces the direct formulas bit for bit.
std::array<double, 3> three_outputs_probabilities(const ThreeOutputsParams& params,
                                                  double x);

/// Draws one three-output response for x in [-1, 1].  Consumes one word.
double perturb_three_outputs(const ThreeOutputsParams& params, double x,
                             RandomStream& stream);

/// Draws one piecewise-mechanism response for x in [-1, 1].  With probability
/// e^eps/(t + e^eps) the output is uniform on the centre slab [L(x), R(x)]
/// (density c_hi); otherwise it is uniform on the two tail intervals
/// [-a_bound, L(x)] and [R(x), a_bound] chosen proportionally to their
/// lengths (density d_lo).  At x = +/-1 one tail is empty and receives
/// probability zero.
double perturb_piecewise(const PiecewiseParams& params, double x,
                         RandomStream& stream);

/// A mechanism with its solved parameters cached, for hot sampling loops.
/// Construction runs the parameter solvers once; perturb() then only samples.
class MechanismContext {
 public:
  MechanismContext(MechanismKind kind, const PrivacyBudget& budget);

  MechanismKind kind() const { return kind_; }
  const PrivacyBudget& budget() const { return budget_; }

  /// Draws one unbiased response for x in [-1, 1].
  double perturb(double x, RandomStream& stream) const;

  /// Cached parameters (meaningful only for the kinds that use them).
  const PiecewiseParams& piecewise() const { return piecewise_; }
  const ThreeOutputsParams& three_outputs() const { return three_outputs_; }
  double mixture_weight() const { return mixture_weight_; }
  double duchi_magnitude() const { return duchi_magnitude_; }
  double laplace_scale() const { return laplace_scale_; }

 private:
  MechanismKind kind_;
  PrivacyBudget budget_;
  double laplace_scale_ = 0.0;
  double duchi_magnitude_ = 0.0;
  double mixture_weight_ = 0.0;  // P[first component] for kHm / kHmTp
  ThreeOutputsParams three_outputs_{0.0, 0.0, 0.0};
  PiecewiseParams piecewise_{0.0, 0.0, 0.0, 0.0};
};

/// One-shot convenience: solves the parameters for (kind, budget), then
/// draws a single response.  Prefer MechanismContext when sampling many
/// times at the same budget.
double perturb(MechanismKind kind, const PrivacyBudget& budget, double x,
               RandomStream& stream);

}  // namespace ldp
