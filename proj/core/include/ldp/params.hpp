#pragma once

#include <array>
#include <string_view>

namespace ldp {

/// Validated privacy budget.  epsilon must be finite and strictly positive;
/// e^epsilon is computed once at construction because every solver and
/// sampler below consumes it.
class PrivacyBudget {
 public:
  explicit PrivacyBudget(double epsilon);

  double epsilon() const { return epsilon_; }
  double exp_epsilon() const { return exp_epsilon_; }

 private:
  double epsilon_;
  double exp_epsilon_;
};

/// The perturbation mechanisms the library implements.  The first four are
/// classical baselines; the last four are the variance-optimised designs.
enum class MechanismKind {
  kLaplace,        // add Laplace(2/epsilon) noise
  kDuchi,          // binary +/-C with linear-in-x probabilities
  kPm,             // piecewise mechanism, t = e^{eps/2}
  kPmOpt,          // piecewise mechanism, t minimising worst-case variance
  kPmSub,          // piecewise mechanism, t = e^{eps/3}
  kThreeOutputs,   // discrete {-C, 0, +C} with optimised zero-mass
  kHm,             // mixture of kPm and kDuchi with optimised weight
  kHmTp,           // mixture of kPmSub and kThreeOutputs with closed-form weight
};

inline constexpr std::array<MechanismKind, 8> kAllMechanisms = {
    MechanismKind::kLaplace, MechanismKind::kDuchi,
    MechanismKind::kPm,      MechanismKind::kPmOpt,
    MechanismKind::kPmSub,   MechanismKind::kThreeOutputs,
    MechanismKind::kHm,      MechanismKind::kHmTp,
};

/// Stable lower-case names used by the CLI and report files.
std::string_view to_string(MechanismKind kind);

/// Inverse of to_string.  Throws std::invalid_argument for unknown names.
MechanismKind mechanism_from_string(std::string_view name);

/// Parameters of the three-output mechanism on {-c_mag, 0, +c_mag}.
///   a     = P[output 0 | input 0], in [0, e^eps/(e^eps+2)]
///   b     = slope of the zero-output probability: P[0 | x] = a - b|x|
///   c_mag = output magnitude, > 1
struct ThreeOutputsParams {
  double a;
  double b;
  double c_mag;
};

/// Parameters of a piecewise mechanism with splitting parameter t.
///   c_hi / d_lo are the high (centre) and low (tail) density values and
///   satisfy c_hi == exp_epsilon * d_lo exactly (c_hi is computed as that
///   product, never from its own expanded expression).
///   a_bound is the support half-width: outputs lie in [-a_bound, a_bound].
struct PiecewiseParams {
  double t;
  double c_hi;
  double d_lo;
  double a_bound;
};

/// Parameters of the two-mechanism mixture kHmTp.
///   beta  = probability of perturbing with kPmSub (1-beta uses
///           kThreeOutputs); 0 when the budget is below the activation
///           threshold.
///   quantA, quantB = the two curvature/offset quantities from which the
///           closed-form beta is assembled in the upper regime (kept for
///           diagnostics; quantA < 0 and quantB <= 0 whenever they are used).
struct HmTpParams {
  double beta;
  double quantA;
  double quantB;
};

/// Solves for the three-output parameters at the given budget.  The interior
/// regime isolates the root of a cubic by bisection (interval width 1e-13)
/// followed by one Newton polish; below ln 2 the optimum saturates at a = 0
/// and above ln((3+sqrt(65))/2) at a = e^eps/(e^eps+2).
ThreeOutputsParams solve_p00(const PrivacyBudget& budget);

/// Closed-form (trigonometric) evaluation of the same a.  Kept as an
/// independent cross-check of solve_p00; the numeric path is the production
/// route because the closed form loses accuracy where its discriminant terms
/// cancel.
double p00_closed_form(const PrivacyBudget& budget);

/// Splitting parameter minimising the piecewise mechanism's worst-case
/// variance: the positive root of t^4 + 2e t^3 - 2e t - e^2 (e = e^eps),
/// isolated by bisection plus one Newton polish.
double solve_t_opt(const PrivacyBudget& budget);

/// Radical closed form for the same root (three branches around eps =
/// ln sqrt(2), where the generic branches are ill-conditioned).  Test oracle
/// only; see solve_t_opt.
double t_opt_closed_form(const PrivacyBudget& budget);

/// Splitting parameters of the two fixed-t piecewise variants.
double t_pm(const PrivacyBudget& budget);      // e^{eps/2}
double t_pm_sub(const PrivacyBudget& budget);  // e^{eps/3}

/// Density levels and support bound for a piecewise mechanism with the given
/// splitting parameter t (> 0).
PiecewiseParams piecewise_params(const PrivacyBudget& budget, double t);

/// Mixture weight for kHmTp.  Three regimes: zero below the activation
/// threshold eps* ~= 0.610986; the variance-flattening weight up to ln 2
/// (where the three-output component still has a = 0); and the closed-form
/// interior optimum above ln 2, assembled from quantA/quantB.  Throws
/// std::domain_error if the closed form's sign preconditions fail.
HmTpParams solve_beta(const PrivacyBudget& budget);

/// Mixture weight for kHm: probability of using kPm rather than kDuchi.
/// Chosen numerically to minimise the mixture's worst-case variance
/// (golden-section search over the weight; the inner maximum over inputs is
/// evaluated on a dense grid).
double hm_weight(const PrivacyBudget& budget);

/// Noise variance Var[Y | x] of the three-output mechanism at input x.
double variance_three_outputs(const PrivacyBudget& budget, double x);

/// Noise variance Var[Y | x] of a piecewise mechanism with parameter t.
double variance_piecewise(const PrivacyBudget& budget, double t, double x);

/// Worst-case (over x in [-1, 1]) noise variance of the given mechanism.
double worst_case_variance(MechanismKind kind, const PrivacyBudget& budget);

}  // namespace ldp
