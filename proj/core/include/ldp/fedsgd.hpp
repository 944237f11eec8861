#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "ldp/multidim.hpp"
#include "ldp/params.hpp"
#include "ldp/random.hpp"

namespace ldp {

enum class LossKind { kSquaredError, kLogistic, kHinge };

/// Stable lower-case names: "squared", "logistic", "hinge".
std::string_view to_string(LossKind loss);
LossKind loss_from_string(std::string_view name);

/// Model parameters plus the optimization hyper-parameters that define the
/// objective: loss(theta; example) + (lambda/2)||theta||^2, stepped with
/// learning rate eta.
struct ModelState {
  std::vector<double> theta;       // includes the trailing bias coordinate
  double eta = 0.1;                // > 0
  LossKind loss = LossKind::kSquaredError;
  double lambda = 1e-4;            // >= 0
};

/// One client's example: features in [-1, 1]^(p-1); the label is a
/// regression target in [-1, 1] for squared loss or +/-1 for the
/// classification losses.
struct ClientExample {
  std::vector<double> features;
  double label;
};

/// Group scheduling for a training run: clients are consumed in groups of
/// group_size (one local step per client, each participating at most once);
/// training stops after max_iterations groups, when every client has
/// participated, or when the parameter update's max-norm falls below
/// convergence_tol.
struct GroupSchedule {
  int group_size;
  int max_iterations;
  double convergence_tol;
};

/// Gradient of [loss(theta; ex) + (lambda/2)||theta||^2] with respect to
/// theta, with the constant-1 bias feature appended internally:
///   squared:  (theta.x - y) x + lambda theta
///   logistic: -y x / (1 + e^{y theta.x}) + lambda theta
///   hinge:    -y x [y theta.x < 1] + lambda theta   (subgradient)
/// Throws on dimension mismatch (theta must have features.size() + 1 entries).
std::vector<double> gradient(const ModelState& state, const ClientExample& ex);

/// Coordinate-wise clip to [-1, 1], the input domain of the perturbation
/// mechanisms.  Idempotent.
TupleSample clamp_gradient(const std::vector<double>& g);

/// Loss/metric on a probe set after one server update.
struct TraceStep {
  int iteration;
  double loss;    // mean objective value on the probe set
  double metric;  // MSE (squared loss) or misclassification rate (otherwise)
};

struct TrainResult {
  ModelState state;
  std::vector<TraceStep> trace;
};

/// Federated SGD: each group member computes its local gradient, clamps it
/// to [-1, 1]^p, and uploads a perturbed tuple; the server averages the
/// group's uploads and takes one step.  kind == nullopt runs the non-private
/// control (exact gradients, no clamping, no noise).  A held-out probe slice
/// (the trailing ~20% of clients, capped at 256) is excluded from training
/// and scored after every update for the trace.
TrainResult train(const std::vector<ClientExample>& clients,
                  std::optional<MechanismKind> kind, const PrivacyBudget& budget,
                  const GroupSchedule& schedule, const ModelState& initial,
                  RandomStream& stream);

struct EvaluationMetrics {
  double mse;                // mean squared error of the raw prediction
  double misclassification;  // sign-mismatch rate against +/-1 labels
};

/// Computes both metrics on a test set; callers pick the one matching the
/// loss kind.  Rejects an empty test set.
EvaluationMetrics evaluate(const ModelState& state,
                           const std::vector<ClientExample>& test);

/// Writes a training trace as CSV with columns
/// iteration,loss,metric,mechanism,epsilon,seed.
void write_trace_csv(std::ostream& out, const std::vector<TraceStep>& trace,
                     std::string_view mechanism, double epsilon, std::uint64_t seed);

}  // namespace ldp
