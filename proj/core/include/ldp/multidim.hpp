#pragma once

#include <optional>
#include <vector>

#include "ldp/mechanisms.hpp"
#include "ldp/params.hpp"
#include "ldp/random.hpp"

namespace ldp {

/// A d-dimensional input tuple; every coordinate must lie in [-1, 1].
struct TupleSample {
  std::vector<double> values;
};

/// Budget-splitting plan for d-dimensional perturbation: k coordinates are
/// sampled without replacement and each is perturbed with budget epsilon/k,
/// where k = max{1, min{d, floor(epsilon/2.5)}}.
struct SamplingPlan {
  int d;
  int k;
  double per_coord_budget;  // epsilon / k
};

/// Computes the sampling plan for dimension d at the given budget.
SamplingPlan choose_k(int d, const PrivacyBudget& budget);

/// Reusable d-dimensional perturber.  Solving the per-coordinate mechanism
/// parameters can involve iterative root finding, so row loops should build
/// one perturber per (mechanism, dimension, budget) cell and call perturb()
/// per tuple; the output matches perturb_tuple draw for draw.
class TuplePerturber {
 public:
  TuplePerturber(MechanismKind kind, int d, const PrivacyBudget& budget,
                 std::optional<int> grid_m = std::nullopt);

  /// Perturbs one tuple (which must have exactly the planned dimension):
  /// k coordinates chosen uniformly without replacement (partial
  /// Fisher-Yates pass) each carry (d/k) times a 1-D perturbation of that
  /// coordinate at budget epsilon/k; the remaining coordinates are 0.  The
  /// (d/k) inflation exactly cancels the selection probability k/d, so
  /// every coordinate of the output is unbiased.  When the perturber was
  /// built with a grid resolution, the 1-D outputs are discretized before
  /// scaling.
  std::vector<double> perturb(const TupleSample& x, RandomStream& stream) const;

  const SamplingPlan& plan() const { return plan_; }

 private:
  SamplingPlan plan_;
  MechanismContext context_;
  std::optional<int> grid_m_;
  double scale_;  // d / k
};

/// One-shot convenience wrapper around TuplePerturber for callers that
/// perturb a single tuple.
std::vector<double> perturb_tuple(MechanismKind kind, const TupleSample& x,
                                  const PrivacyBudget& budget, RandomStream& stream,
                                  std::optional<int> grid_m = std::nullopt);

/// Coordinate-wise arithmetic mean of n perturbed vectors; the unbiased
/// estimator of the population coordinate means.  Rejects an empty or ragged
/// collection.
std::vector<double> estimate_means(const std::vector<std::vector<double>>& perturbed);

}  // namespace ldp
