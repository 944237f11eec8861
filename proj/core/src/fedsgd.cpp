#include "ldp/fedsgd.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include "format.hpp"

namespace ldp {

namespace {

void check_dimensions(const ModelState& state, const ClientExample& ex) {
  if (state.theta.size() != ex.features.size() + 1) {
    throw std::invalid_argument(
        "model has " + std::to_string(state.theta.size()) +
        " parameters but example has " + std::to_string(ex.features.size()) +
        " features (+1 bias expected)");
  }
}

// theta . [features, 1]
double margin(const ModelState& state, const ClientExample& ex) {
  double dot = state.theta.back();
  for (std::size_t j = 0; j < ex.features.size(); ++j) {
    dot += state.theta[j] * ex.features[j];
  }
  return dot;
}

// Numerically stable ln(1 + e^z).
double softplus(double z) {
  if (z > 30.0) {
    return z;
  }
  return std::log1p(std::exp(z));
}

// Objective value loss(theta; ex) + (lambda/2)||theta||^2.
double objective(const ModelState& state, const ClientExample& ex) {
  const double m = margin(state, ex);
  double loss = 0.0;
  switch (state.loss) {
    case LossKind::kSquaredError: {
      const double r = m - ex.label;
      loss = 0.5 * r * r;
      break;
    }
    case LossKind::kLogistic:
      loss = softplus(-ex.label * m);
      break;
    case LossKind::kHinge:
      loss = std::max(0.0, 1.0 - ex.label * m);
      break;
  }
  double norm_sq = 0.0;
  for (const double v : state.theta) {
    norm_sq += v * v;
  }
  return loss + 0.5 * state.lambda * norm_sq;
}

}  // namespace

std::string_view to_string(LossKind loss) {
  switch (loss) {
    case LossKind::kSquaredError: return "squared";
    case LossKind::kLogistic:     return "logistic";
    case LossKind::kHinge:        return "hinge";
  }
  throw std::invalid_argument("unknown loss kind");
}

LossKind loss_from_string(std::string_view name) {
  if (name == "squared") return LossKind::kSquaredError;
  if (name == "logistic") return LossKind::kLogistic;
  if (name == "hinge") return LossKind::kHinge;
  throw std::invalid_argument("unknown loss name: " + std::string(name));
}

std::vector<double> gradient(const ModelState& state, const ClientExample& ex) {
  check_dimensions(state, ex);
  const std::size_t p = state.theta.size();
  const double m = margin(state, ex);

  // Scale s multiplying the extended feature vector [features, 1].
  double s = 0.0;
  switch (state.loss) {
    case LossKind::kSquaredError:
      s = m - ex.label;
      break;
    case LossKind::kLogistic:
      // -y / (1 + e^{y m}); the exponential saturates safely to +inf.
      s = -ex.label / (1.0 + std::exp(ex.label * m));
      break;
    case LossKind::kHinge:
      s = ex.label * m < 1.0 ? -ex.label : 0.0;
      break;
  }

  std::vector<double> g(p);
  for (std::size_t j = 0; j + 1 < p; ++j) {
    g[j] = s * ex.features[j] + state.lambda * state.theta[j];
  }
  g[p - 1] = s * 1.0 + state.lambda * state.theta[p - 1];
  return g;
}

TupleSample clamp_gradient(const std::vector<double>& g) {
  TupleSample out;
  out.values.reserve(g.size());
  for (const double v : g) {
    out.values.push_back(std::clamp(v, -1.0, 1.0));
  }
  return out;
}

TrainResult train(const std::vector<ClientExample>& clients,
                  std::optional<MechanismKind> kind, const PrivacyBudget& budget,
                  const GroupSchedule& schedule, const ModelState& initial,
                  RandomStream& stream) {
  if (clients.empty()) {
    throw std::invalid_argument("train requires at least one client");
  }
  if (schedule.group_size < 1 || schedule.max_iterations < 1 ||
      schedule.convergence_tol < 0.0) {
    throw std::invalid_argument("invalid group schedule");
  }
  if (!(initial.eta > 0.0) || initial.lambda < 0.0) {
    throw std::invalid_argument("invalid model hyper-parameters");
  }
  check_dimensions(initial, clients.front());

  // Hold out the trailing slice as the probe set scored in the trace; with
  // too few clients to split, everyone trains and the probe aliases the
  // full collection.
  const std::size_t n = clients.size();
  const std::size_t probe_count = std::min<std::size_t>(n / 5, 256);
  const std::size_t train_count = n - probe_count;
  const std::vector<ClientExample> probe(
      clients.begin() + static_cast<std::ptrdiff_t>(train_count), clients.end());
  const std::vector<ClientExample>& probe_set = probe.empty() ? clients : probe;

  TrainResult result;
  result.state = initial;
  const std::size_t p = initial.theta.size();
  // The gradient dimension and budget are fixed for the whole run, so the
  // mechanism parameters are solved once up front.
  const std::optional<TuplePerturber> perturber =
      kind.has_value() ? std::optional<TuplePerturber>(std::in_place, *kind,
                                                       static_cast<int>(p), budget)
                       : std::nullopt;

  std::size_t cursor = 0;
  int iteration = 0;
  while (iteration < schedule.max_iterations && cursor < train_count) {
    const std::size_t group_end =
        std::min(cursor + static_cast<std::size_t>(schedule.group_size), train_count);
    std::vector<double> sum(p, 0.0);
    for (std::size_t i = cursor; i < group_end; ++i) {
      const std::vector<double> g = gradient(result.state, clients[i]);
      if (kind.has_value()) {
        const TupleSample clamped = clamp_gradient(g);
        const std::vector<double> noisy = perturber->perturb(clamped, stream);
        for (std::size_t j = 0; j < p; ++j) {
          sum[j] += noisy[j];
        }
      } else {
        for (std::size_t j = 0; j < p; ++j) {
          sum[j] += g[j];
        }
      }
    }
    const double group_size = static_cast<double>(group_end - cursor);
    double max_step = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      const double step = result.state.eta * sum[j] / group_size;
      result.state.theta[j] -= step;
      max_step = std::max(max_step, std::abs(step));
    }
    cursor = group_end;
    ++iteration;

    const EvaluationMetrics probe_metrics = evaluate(result.state, probe_set);
    double probe_loss = 0.0;
    for (const ClientExample& ex : probe_set) {
      probe_loss += objective(result.state, ex);
    }
    probe_loss /= static_cast<double>(probe_set.size());
    const double metric = result.state.loss == LossKind::kSquaredError
                              ? probe_metrics.mse
                              : probe_metrics.misclassification;
    result.trace.push_back({iteration, probe_loss, metric});

    if (max_step < schedule.convergence_tol) {
      break;
    }
  }
  return result;
}

EvaluationMetrics evaluate(const ModelState& state,
                           const std::vector<ClientExample>& test) {
  if (test.empty()) {
    throw std::invalid_argument("evaluate requires a nonempty test set");
  }
  double sq_sum = 0.0;
  double miss = 0.0;
  for (const ClientExample& ex : test) {
    check_dimensions(state, ex);
    const double pred = margin(state, ex);
    const double r = pred - ex.label;
    sq_sum += r * r;
    const double predicted_sign = pred >= 0.0 ? 1.0 : -1.0;
    const double label_sign = ex.label >= 0.0 ? 1.0 : -1.0;
    if (predicted_sign != label_sign) {
      miss += 1.0;
    }
  }
  const double n = static_cast<double>(test.size());
  return {sq_sum / n, miss / n};
}

void write_trace_csv(std::ostream& out, const std::vector<TraceStep>& trace,
                     std::string_view mechanism, double epsilon, std::uint64_t seed) {
  out << "iteration,loss,metric,mechanism,epsilon,seed\n";
  for (const TraceStep& step : trace) {
    out << step.iteration << ',' << format_double(step.loss) << ','
        << format_double(step.metric) << ',' << mechanism << ','
        << format_double(epsilon) << ',' << seed << '\n';
  }
}

}  // namespace ldp
