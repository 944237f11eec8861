#include "ldp/multidim.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ldp/discretize.hpp"
#include "ldp/mechanisms.hpp"

namespace ldp {

namespace {

// Budget-per-coordinate divisor from the k-selection rule.
constexpr double kBudgetPerActiveCoord = 2.5;

}  // namespace

SamplingPlan choose_k(int d, const PrivacyBudget& budget) {
  if (d < 1) {
    throw std::invalid_argument("dimension must be >= 1");
  }
  const int by_budget =
      static_cast<int>(std::floor(budget.epsilon() / kBudgetPerActiveCoord));
  const int k = std::max(1, std::min(d, by_budget));
  return {d, k, budget.epsilon() / k};
}

TuplePerturber::TuplePerturber(MechanismKind kind, int d, const PrivacyBudget& budget,
                               std::optional<int> grid_m)
    : plan_(choose_k(d, budget)),
      context_(kind, PrivacyBudget(plan_.per_coord_budget)),
      grid_m_(grid_m),
      scale_(static_cast<double>(plan_.d) / plan_.k) {
  if (grid_m_.has_value() && *grid_m_ < 1) {
    throw std::invalid_argument("grid resolution must be >= 1");
  }
}

std::vector<double> TuplePerturber::perturb(const TupleSample& x,
                                            RandomStream& stream) const {
  const int d = plan_.d;
  if (static_cast<int>(x.values.size()) != d) {
    throw std::invalid_argument("tuple dimension does not match the sampling plan");
  }
  // Partial Fisher-Yates: after i swaps the prefix holds i+1 indices drawn
  // uniformly without replacement.
  std::vector<int> indices(static_cast<std::size_t>(d));
  std::iota(indices.begin(), indices.end(), 0);
  std::vector<double> out(static_cast<std::size_t>(d), 0.0);
  for (int i = 0; i < plan_.k; ++i) {
    const std::uint64_t offset = stream.uniform_index(static_cast<std::uint64_t>(d - i));
    std::swap(indices[static_cast<std::size_t>(i)],
              indices[static_cast<std::size_t>(i) + offset]);
    const int j = indices[static_cast<std::size_t>(i)];
    const double value = x.values[static_cast<std::size_t>(j)];
    const double response =
        grid_m_.has_value() ? perturb_discrete(context_, *grid_m_, value, stream)
                            : context_.perturb(value, stream);
    out[static_cast<std::size_t>(j)] = scale_ * response;
  }
  return out;
}

std::vector<double> perturb_tuple(MechanismKind kind, const TupleSample& x,
                                  const PrivacyBudget& budget, RandomStream& stream,
                                  std::optional<int> grid_m) {
  const TuplePerturber perturber(kind, static_cast<int>(x.values.size()), budget,
                                 grid_m);
  return perturber.perturb(x, stream);
}

std::vector<double> estimate_means(const std::vector<std::vector<double>>& perturbed) {
  if (perturbed.empty()) {
    throw std::invalid_argument("cannot estimate means from an empty collection");
  }
  const std::size_t d = perturbed.front().size();
  std::vector<double> sums(d, 0.0);
  for (const std::vector<double>& row : perturbed) {
    if (row.size() != d) {
      throw std::invalid_argument("perturbed vectors must share one dimension");
    }
    for (std::size_t j = 0; j < d; ++j) {
      sums[j] += row[j];
    }
  }
  const double n = static_cast<double>(perturbed.size());
  for (double& s : sums) {
    s /= n;
  }
  return sums;
}

}  // namespace ldp
