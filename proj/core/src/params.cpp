#include "ldp/params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ldp {

namespace {

constexpr double kLn2 = std::numbers::ln2;

// Activation threshold of the kHmTp mixture: below this budget the optimal
// mixture weight is exactly zero.  The value is the documented root of
// 3x^5 - 2x^3 + 3x^2 - 5x - 3 at x = e^{eps/3}; solve_beta verifies the
// hard-coded rounding against that quintic once per process.
constexpr double kMixtureActivationBudget = 0.61098633542002050;

// Upper boundary of the three-output interior regime: ln((3 + sqrt(65)) / 2).
double saturation_budget() {
  static const double value = std::log((3.0 + std::sqrt(65.0)) / 2.0);
  return value;
}

// Cubic whose interior root is the optimal zero-output probability a.
// Evaluated by Horner's rule so both the solver and the residual checks see
// bitwise-identical values.
double p00_cubic(double a, double e1) {
  const double e2 = e1 * e1;
  const double e3 = e2 * e1;
  const double c2 = -(e2 + 5.0 + 4.0 * e1);
  const double c1 = 7.0 * e1 - 4.0 * e2 - e3;
  const double c0 = 2.0 * e3 - 4.0 * e2;
  return ((2.0 * a + c2) * a + c1) * a + c0;
}

double p00_cubic_derivative(double a, double e1) {
  const double e2 = e1 * e1;
  const double e3 = e2 * e1;
  const double c2 = -(e2 + 5.0 + 4.0 * e1);
  const double c1 = 7.0 * e1 - 4.0 * e2 - e3;
  return (6.0 * a + 2.0 * c2) * a + c1;
}

// Quartic whose positive root is the variance-optimal splitting parameter t.
double t_quartic(double t, double e1) {
  return ((t + 2.0 * e1) * t * t - 2.0 * e1) * t - e1 * e1;
}

double t_quartic_derivative(double t, double e1) {
  return (4.0 * t + 6.0 * e1) * t * t - 2.0 * e1;
}

// Bisection on a bracketing interval [lo, hi] with f(lo) < 0 < f(hi) or
// f(lo) > 0 > f(hi), down to the given width, then one Newton polish step
// clamped back into the original bracket.
template <typename F, typename D>
double bisect_then_polish(F f, D df, double lo, double hi, double width) {
  const double lo0 = lo;
  const double hi0 = hi;
  const bool increasing = f(lo) < 0.0;
  for (int i = 0; i < 200 && hi - lo > width; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0.0) == increasing) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double root = 0.5 * (lo + hi);
  const double d = df(root);
  if (d != 0.0) {
    const double step = f(root) / d;
    if (std::isfinite(step)) {
      root = std::clamp(root - step, lo0, hi0);
    }
  }
  return root;
}

double duchi_magnitude(double e1) { return (e1 + 1.0) / (e1 - 1.0); }

ThreeOutputsParams make_three_outputs(double a, double e1) {
  const double b = a * (1.0 - 1.0 / e1);
  const double c_mag = (e1 + 1.0) / ((e1 - 1.0) * (1.0 - a / e1));
  return {a, b, c_mag};
}

// Threshold on the kHmTp mixture weight below which the worst-case input is
// interior rather than at an endpoint.
double interior_weight_threshold(double e1, double a, double t) {
  const double shifted = e1 - a;
  const double common = a * e1 * (e1 + 1.0) * (e1 + 1.0);
  const double num = 2.0 * shifted * shifted * (e1 - 1.0) - common;
  const double den = 2.0 * shifted * shifted * (e1 + t) - common;
  return num / den;
}

}  // namespace

PrivacyBudget::PrivacyBudget(double epsilon) : epsilon_(epsilon) {
  if (!std::isfinite(epsilon) || epsilon <= 0.0) {
    throw std::invalid_argument("privacy budget must be finite and > 0, got " +
                                std::to_string(epsilon));
  }
  exp_epsilon_ = std::exp(epsilon);
}

std::string_view to_string(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::kLaplace:      return "laplace";
    case MechanismKind::kDuchi:        return "duchi";
    case MechanismKind::kPm:           return "pm";
    case MechanismKind::kPmOpt:        return "pm-opt";
    case MechanismKind::kPmSub:        return "pm-sub";
    case MechanismKind::kThreeOutputs: return "three-outputs";
    case MechanismKind::kHm:           return "hm";
    case MechanismKind::kHmTp:         return "hm-tp";
  }
  throw std::invalid_argument("unknown mechanism kind");
}

MechanismKind mechanism_from_string(std::string_view name) {
  for (const MechanismKind kind : kAllMechanisms) {
    if (to_string(kind) == name) {
      return kind;
    }
  }
  throw std::invalid_argument("unknown mechanism name: " + std::string(name));
}

ThreeOutputsParams solve_p00(const PrivacyBudget& budget) {
  const double e1 = budget.exp_epsilon();
  const double eps = budget.epsilon();
  const double saturated = e1 / (e1 + 2.0);
  if (eps <= kLn2) {
    return make_three_outputs(0.0, e1);
  }
  if (eps >= saturation_budget()) {
    return make_three_outputs(saturated, e1);
  }
  const auto g = [e1](double a) { return p00_cubic(a, e1); };
  const auto dg = [e1](double a) { return p00_cubic_derivative(a, e1); };
  // The cubic is positive at a = 0 and negative at the saturation point
  // throughout the interior regime; within floating-point noise of a regime
  // boundary the bracket can degenerate, in which case the boundary value is
  // the answer.
  if (g(0.0) <= 0.0) {
    return make_three_outputs(0.0, e1);
  }
  if (g(saturated) >= 0.0) {
    return make_three_outputs(saturated, e1);
  }
  const double a = bisect_then_polish(g, dg, 0.0, saturated, 1e-13);
  return make_three_outputs(a, e1);
}

double p00_closed_form(const PrivacyBudget& budget) {
  const double e1 = budget.exp_epsilon();
  const double eps = budget.epsilon();
  if (eps <= kLn2) {
    return 0.0;
  }
  if (eps >= saturation_budget()) {
    return e1 / (e1 + 2.0);
  }
  const double e2 = e1 * e1;
  const double e3 = e2 * e1;
  const double e4 = e2 * e2;
  const double e5 = e4 * e1;
  const double e6 = e3 * e3;
  const double d0 = e4 + 14.0 * e3 + 50.0 * e2 - 2.0 * e1 + 25.0;
  const double d1 = -2.0 * e6 - 42.0 * e5 - 270.0 * e4 - 404.0 * e3 -
                    918.0 * e2 + 30.0 * e1 - 250.0;
  const double inner = std::acos(-d1 / (2.0 * d0 * std::sqrt(d0)));
  return -(1.0 / 6.0) *
         (-e2 - 4.0 * e1 - 5.0 +
          2.0 * std::sqrt(d0) *
              std::cos(std::numbers::pi / 3.0 + inner / 3.0));
}

double solve_t_opt(const PrivacyBudget& budget) {
  const double e1 = budget.exp_epsilon();
  const auto q = [e1](double t) { return t_quartic(t, e1); };
  const auto dq = [e1](double t) { return t_quartic_derivative(t, e1); };
  // q(1) = 1 - e^2 < 0 and q(e) = 3e^2(e^2 - 1) > 0 for every positive
  // budget, so [1, e^eps] always brackets the unique positive root.
  return bisect_then_polish(q, dq, 1.0, e1, 1e-13);
}

double t_opt_closed_form(const PrivacyBudget& budget) {
  const double eps = budget.epsilon();
  const double e1 = budget.exp_epsilon();
  const double pivot = 0.5 * kLn2;  // ln sqrt(2)
  if (std::abs(eps - pivot) < 1e-9) {
    // At the pivot the generic branches divide by zero; the root reduces to
    // this closed constant.
    return (std::sqrt(3.0 + 2.0 * std::sqrt(3.0)) - 1.0) / std::sqrt(2.0);
  }
  const double e2 = e1 * e1;
  const double e3 = e2 * e1;
  // Real cube root of a negative argument: std::cbrt handles the sign.
  const double w = std::cbrt(4.0) * std::cbrt(e2 - e2 * e2);
  const double sx = std::sqrt(e2 + w);
  if (eps < pivot) {
    return 0.5 * sx +
           0.5 * std::sqrt(2.0 * e2 - w + (4.0 * e1 - 2.0 * e3) / sx) -
           0.5 * e1;
  }
  return -0.5 * sx +
         0.5 * std::sqrt(2.0 * e2 - w - (4.0 * e1 - 2.0 * e3) / sx) -
         0.5 * e1;
}

double t_pm(const PrivacyBudget& budget) {
  return std::exp(budget.epsilon() / 2.0);
}

double t_pm_sub(const PrivacyBudget& budget) {
  return std::exp(budget.epsilon() / 3.0);
}

PiecewiseParams piecewise_params(const PrivacyBudget& budget, double t) {
  if (!std::isfinite(t) || t <= 0.0) {
    throw std::invalid_argument("piecewise splitting parameter must be > 0");
  }
  const double e1 = budget.exp_epsilon();
  const double d_lo = t * (e1 - 1.0) / (2.0 * (t + e1) * (t + e1));
  const double c_hi = e1 * d_lo;  // ratio of e^eps holds exactly
  const double a_bound = (e1 + t) * (t + 1.0) / (t * (e1 - 1.0));
  return {t, c_hi, d_lo, a_bound};
}

HmTpParams solve_beta(const PrivacyBudget& budget) {
  // One-time sanity check of the hard-coded activation threshold: the
  // quintic it rounds must change sign within 1e-4 of e^{threshold/3}.
  static const bool threshold_ok = [] {
    const auto quintic = [](double x) {
      return ((((3.0 * x) * x - 2.0) * x + 3.0) * x - 5.0) * x - 3.0;
    };
    const double x0 = std::exp(kMixtureActivationBudget / 3.0);
    return quintic(x0 - 1e-4) * quintic(x0 + 1e-4) < 0.0;
  }();
  if (!threshold_ok) {
    throw std::logic_error("mixture activation threshold fails its defining equation");
  }

  const double eps = budget.epsilon();
  const double e1 = budget.exp_epsilon();
  const double t = t_pm_sub(budget);
  const double a = solve_p00(budget).a;

  // Curvature/offset quantities of the mixture's worst-case variance as a
  // function of the weight; both are reported even in regimes that do not
  // consume them.
  const double shifted = e1 - a;
  const double shifted2 = shifted * shifted;
  const double shifted4 = shifted2 * shifted2;
  const double ep1 = e1 + 1.0;
  const double ep1_4 = (ep1 * ep1) * (ep1 * ep1);
  const double em1 = e1 - 1.0;
  const double et = e1 + t;
  const double a2e2 = a * a * e1 * e1;
  const double quant_a =
      a2e2 * ep1_4 / (4.0 * et * et * shifted4 * em1) -
      a2e2 * ep1_4 / (2.0 * et * et * em1 * shifted4) +
      (((t + 1.0) * (t + 1.0) * (t + 1.0)) + e1 - 1.0) /
          (3.0 * t * t * em1 * em1) -
      (1.0 - a) * e1 * e1 * ep1 * ep1 / (et * em1 * em1 * shifted2);
  const double quant_b =
      -(1.0 + t) * (1.0 + t) * a2e2 * ep1_4 / (4.0 * et * et * shifted4 * em1);

  double beta;
  if (eps < kMixtureActivationBudget) {
    beta = 0.0;
  } else if (eps < kLn2) {
    beta = interior_weight_threshold(e1, a, t);
  } else {
    if (quant_a >= 0.0 || quant_b > 0.0) {
      throw std::domain_error(
          "mixture weight preconditions violated (non-negative curvature)");
    }
    beta = (-std::sqrt(quant_b / quant_a) + e1 - 1.0) / et;
  }
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw std::logic_error("mixture weight escaped [0, 1]");
  }
  return {beta, quant_a, quant_b};
}

double hm_weight(const PrivacyBudget& budget) {
  const double e1 = budget.exp_epsilon();
  const double t = t_pm(budget);
  const double duchi_sq = duchi_magnitude(e1) * duchi_magnitude(e1);

  // Worst-case (over x) variance of the weighted mixture.  Both component
  // variances depend on x only through x^2, so a dense grid on [0, 1]
  // suffices; 1001 points include both candidates for the maximiser.
  constexpr int kGridPoints = 1001;
  const auto worst_mix = [&](double q) {
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < kGridPoints; ++i) {
      const double x = static_cast<double>(i) / (kGridPoints - 1);
      const double mix = q * variance_piecewise(budget, t, x) +
                         (1.0 - q) * (duchi_sq - x * x);
      worst = std::max(worst, mix);
    }
    return worst;
  };

  // Golden-section search: the objective is a maximum of functions linear in
  // q, hence convex, so the section search converges to the global minimum.
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0;
  double hi = 1.0;
  double c = hi - ratio * (hi - lo);
  double d = lo + ratio * (hi - lo);
  double fc = worst_mix(c);
  double fd = worst_mix(d);
  for (int i = 0; i < 120; ++i) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - ratio * (hi - lo);
      fc = worst_mix(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + ratio * (hi - lo);
      fd = worst_mix(d);
    }
  }
  return 0.5 * (lo + hi);
}

double variance_three_outputs(const PrivacyBudget& budget, double x) {
  const ThreeOutputsParams p = solve_p00(budget);
  return p.c_mag * p.c_mag * (1.0 - p.a + p.b * std::abs(x)) - x * x;
}

double variance_piecewise(const PrivacyBudget& budget, double t, double x) {
  const double e1 = budget.exp_epsilon();
  const double tp1 = t + 1.0;
  return tp1 / (e1 - 1.0) * x * x +
         (t + e1) * (tp1 * tp1 * tp1 + e1 - 1.0) /
             (3.0 * t * t * (e1 - 1.0) * (e1 - 1.0));
}

double worst_case_variance(MechanismKind kind, const PrivacyBudget& budget) {
  const double eps = budget.epsilon();
  const double e1 = budget.exp_epsilon();
  switch (kind) {
    case MechanismKind::kLaplace:
      // Scale 2/eps on inputs of width 2: variance 2 * (2/eps)^2.
      return 8.0 / (eps * eps);
    case MechanismKind::kDuchi: {
      const double c = duchi_magnitude(e1);
      return c * c;  // worst at x = 0
    }
    case MechanismKind::kPm:
      return variance_piecewise(budget, t_pm(budget), 1.0);
    case MechanismKind::kPmOpt:
      return variance_piecewise(budget, solve_t_opt(budget), 1.0);
    case MechanismKind::kPmSub:
      return variance_piecewise(budget, t_pm_sub(budget), 1.0);
    case MechanismKind::kThreeOutputs: {
      const double em1 = e1 - 1.0;
      if (eps < kLn2) {
        const double c = duchi_magnitude(e1);
        return c * c;
      }
      if (eps > saturation_budget()) {
        return (e1 + 2.0) * (e1 + 10.0) / (4.0 * em1 * em1);
      }
      const double a = solve_p00(budget).a;
      const double ep1 = e1 + 1.0;
      const double shifted = e1 - a;
      const double shifted2 = shifted * shifted;
      return ep1 * ep1 * e1 * e1 / (em1 * em1) *
             ((1.0 - a) / shifted2 +
              ep1 * ep1 * a * a / (4.0 * shifted2 * shifted2));
    }
    case MechanismKind::kHm: {
      const double q = hm_weight(budget);
      const double t = t_pm(budget);
      const double duchi_sq = duchi_magnitude(e1) * duchi_magnitude(e1);
      // The mixture's variance is linear in x^2, so its maximum over
      // [-1, 1] is at x = 0 or x = 1.
      const double at0 = q * variance_piecewise(budget, t, 0.0) +
                         (1.0 - q) * duchi_sq;
      const double at1 = q * variance_piecewise(budget, t, 1.0) +
                         (1.0 - q) * (duchi_sq - 1.0);
      return std::max(at0, at1);
    }
    case MechanismKind::kHmTp: {
      const double beta = solve_beta(budget).beta;
      const double t = t_pm_sub(budget);
      const auto mix = [&](double x) {
        return beta * variance_piecewise(budget, t, x) +
               (1.0 - beta) * variance_three_outputs(budget, x);
      };
      const double a = solve_p00(budget).a;
      const double threshold = interior_weight_threshold(e1, a, t);
      if (beta > 0.0 && beta < threshold) {
        // Interior maximiser of the mixture variance.
        const double gamma = beta * (e1 + t) - e1 + 1.0;
        const double ep1 = e1 + 1.0;
        const double x_star = (beta - 1.0) * a * e1 * ep1 * ep1 /
                              (2.0 * (e1 - a) * (e1 - a) * gamma);
        return mix(x_star);
      }
      return std::max(mix(0.0), mix(1.0));
    }
  }
  throw std::invalid_argument("unknown mechanism kind");
}

}  // namespace ldp
