#include "ldp/mechanisms.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ldp {

namespace {

void check_input(double x) {
  if (!std::isfinite(x) || x < -1.0 || x > 1.0) {
    throw std::invalid_argument("input must lie in [-1, 1], got " +
                                std::to_string(x));
  }
}

double sample_duchi(double magnitude, double x, RandomStream& stream) {
  const double p_plus = 0.5 + x / (2.0 * magnitude);
  return stream.bernoulli(p_plus) ? magnitude : -magnitude;
}

}  // namespace

std::array<double, 3> three_outputs_probabilities(const ThreeOutputsParams& params,
                                                  double x) {
  check_input(x);
  const double ax = std::abs(x);
  const double p_zero = params.a - params.b * ax;
  const double half_rest = 0.5 * (1.0 - p_zero);
  const double tilt = ax / (2.0 * params.c_mag);
  // Mirroring for x < 0 subtracts the same tilt it would add for |x|, which
  // is bitwise-identical to evaluating the signed formula directly (IEEE
  // rounding is sign-symmetric).
  const double p_plus = x >= 0.0 ? half_rest + tilt : half_rest - tilt;
  const double p_minus = x >= 0.0 ? half_rest - tilt : half_rest + tilt;
  return {p_plus, p_zero, p_minus};
}

double perturb_three_outputs(const ThreeOutputsParams& params, double x,
                             RandomStream& stream) {
  const std::array<double, 3> p = three_outputs_probabilities(params, x);
  const double u = stream.uniform();
  if (u < p[0]) {
    return params.c_mag;
  }
  if (u < p[0] + p[1]) {
    return 0.0;
  }
  return -params.c_mag;
}

double perturb_piecewise(const PiecewiseParams& params, double x,
                         RandomStream& stream) {
  check_input(x);
  const double t = params.t;
  const double e1 = params.c_hi / params.d_lo;  // exact e^eps by construction
  const double em1 = e1 - 1.0;
  // Centre slab of the response density; R(1) and L(-1) reproduce a_bound
  // exactly because the expressions share the same operation order.
  const double left = (e1 + t) * (x * t - 1.0) / (t * em1);
  const double right = (e1 + t) * (x * t + 1.0) / (t * em1);
  if (stream.bernoulli(e1 / (t + e1))) {
    return stream.uniform(left, right);
  }
  const double left_len = left + params.a_bound;
  const double right_len = params.a_bound - right;
  if (stream.bernoulli(left_len / (left_len + right_len))) {
    return stream.uniform(-params.a_bound, left);
  }
  return stream.uniform(right, params.a_bound);
}

MechanismContext::MechanismContext(MechanismKind kind, const PrivacyBudget& budget)
    : kind_(kind), budget_(budget) {
  const double e1 = budget.exp_epsilon();
  switch (kind) {
    case MechanismKind::kLaplace:
      laplace_scale_ = 2.0 / budget.epsilon();
      break;
    case MechanismKind::kDuchi:
      duchi_magnitude_ = (e1 + 1.0) / (e1 - 1.0);
      break;
    case MechanismKind::kPm:
      piecewise_ = piecewise_params(budget, t_pm(budget));
      break;
    case MechanismKind::kPmOpt:
      piecewise_ = piecewise_params(budget, solve_t_opt(budget));
      break;
    case MechanismKind::kPmSub:
      piecewise_ = piecewise_params(budget, t_pm_sub(budget));
      break;
    case MechanismKind::kThreeOutputs:
      three_outputs_ = solve_p00(budget);
      break;
    case MechanismKind::kHm:
      mixture_weight_ = hm_weight(budget);
      piecewise_ = piecewise_params(budget, t_pm(budget));
      duchi_magnitude_ = (e1 + 1.0) / (e1 - 1.0);
      break;
    case MechanismKind::kHmTp:
      mixture_weight_ = solve_beta(budget).beta;
      piecewise_ = piecewise_params(budget, t_pm_sub(budget));
      three_outputs_ = solve_p00(budget);
      break;
  }
}

double MechanismContext::perturb(double x, RandomStream& stream) const {
  switch (kind_) {
    case MechanismKind::kLaplace:
      check_input(x);
      return x + stream.laplace(laplace_scale_);
    case MechanismKind::kDuchi:
      check_input(x);
      return sample_duchi(duchi_magnitude_, x, stream);
    case MechanismKind::kPm:
    case MechanismKind::kPmOpt:
    case MechanismKind::kPmSub:
      return perturb_piecewise(piecewise_, x, stream);
    case MechanismKind::kThreeOutputs:
      return perturb_three_outputs(three_outputs_, x, stream);
    case MechanismKind::kHm:
      check_input(x);
      if (stream.bernoulli(mixture_weight_)) {
        return perturb_piecewise(piecewise_, x, stream);
      }
      return sample_duchi(duchi_magnitude_, x, stream);
    case MechanismKind::kHmTp:
      check_input(x);
      if (stream.bernoulli(mixture_weight_)) {
        return perturb_piecewise(piecewise_, x, stream);
      }
      return perturb_three_outputs(three_outputs_, x, stream);
  }
  throw std::invalid_argument("unknown mechanism kind");
}

double perturb(MechanismKind kind, const PrivacyBudget& budget, double x,
               RandomStream& stream) {
  return MechanismContext(kind, budget).perturb(x, stream);
}

}  // namespace ldp
