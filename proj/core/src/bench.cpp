#include "ldp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <utility>

#include <json.hpp>

#include "ldp/discretize.hpp"
#include "ldp/multidim.hpp"
#include "format.hpp"

namespace ldp {

namespace {

using steady_clock = std::chrono::steady_clock;

/// Seconds elapsed since a steady_clock time point.
double seconds_since(steady_clock::time_point start) {
  return std::chrono::duration<double>(steady_clock::now() - start).count();
}

/// Parses LDP_NUMERIC_THREADS; returns 0 when unset or not a positive integer.
int env_thread_cap() {
  const char* raw = std::getenv("LDP_NUMERIC_THREADS");
  if (raw == nullptr || *raw == '\0') {
    return 0;
  }
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (end == nullptr || *end != '\0' || value < 1) {
    return 0;
  }
  return static_cast<int>(std::min<long>(value, 1024));
}

/// Runs body(0), ..., body(count-1) across worker threads.  Work items are
/// claimed from a shared counter; the first exception thrown by any item is
/// rethrown on the calling thread after all workers finish.  Callers must
/// make items independent (each writes only its own output slot) so results
/// do not depend on the schedule.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const int threads = worker_thread_count(count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      body(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  auto drain = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) {
        return;
      }
      try {
        body(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) {
          first_error = std::current_exception();
        }
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back(drain);
  }
  for (std::thread& worker : pool) {
    worker.join();
  }
  if (first_error) {
    std::rethrow_exception(first_error);
  }
}

/// Shared precondition checks for every runner.
void validate_config(const ExperimentConfig& config, TaskKind expected) {
  if (config.task != expected) {
    throw std::invalid_argument("experiment config task does not match the runner");
  }
  if (config.mechanisms.empty()) {
    throw std::invalid_argument("experiment config needs at least one mechanism");
  }
  if (config.epsilons.empty()) {
    throw std::invalid_argument("experiment config needs at least one epsilon");
  }
  for (const double eps : config.epsilons) {
    PrivacyBudget check(eps);  // throws for non-positive or non-finite budgets
    (void)check;
  }
  if (config.n_users < 1) {
    throw std::invalid_argument("n_users must be at least 1");
  }
  if (config.d < 1) {
    throw std::invalid_argument("d must be at least 1");
  }
  if (config.repetitions < 1) {
    throw std::invalid_argument("repetitions must be at least 1");
  }
  if (config.grid_m.has_value() && *config.grid_m < 1) {
    throw std::invalid_argument("grid_m must be at least 1");
  }
  if (!std::isfinite(config.data_sigma) || config.data_sigma <= 0.0) {
    throw std::invalid_argument("data_sigma must be positive");
  }
  if (!std::isfinite(config.data_mu) || config.data_mu < -1.0 || config.data_mu > 1.0) {
    throw std::invalid_argument("data_mu must lie in [-1, 1]");
  }
}

/// worst_case_variance for every (mechanism, epsilon) cell, indexed
/// mi * |epsilons| + ei.  Computed once so repetitions share the value.
std::vector<double> worst_variance_grid(const ExperimentConfig& config) {
  std::vector<double> grid(config.mechanisms.size() * config.epsilons.size());
  for (std::size_t mi = 0; mi < config.mechanisms.size(); ++mi) {
    for (std::size_t ei = 0; ei < config.epsilons.size(); ++ei) {
      grid[mi * config.epsilons.size() + ei] =
          worst_case_variance(config.mechanisms[mi], PrivacyBudget(config.epsilons[ei]));
    }
  }
  return grid;
}

/// Per-coordinate sample means of a dataset: the estimation target.
std::vector<double> sample_means(const Dataset& dataset, int d) {
  std::vector<double> means(static_cast<std::size_t>(d), 0.0);
  for (const TupleSample& row : dataset.rows) {
    for (std::size_t j = 0; j < means.size(); ++j) {
      means[j] += row.values[j];
    }
  }
  for (double& m : means) {
    m /= static_cast<double>(dataset.rows.size());
  }
  return means;
}

/// Mean squared coordinate error between an estimate and the target.
double mean_squared_error(const std::vector<double>& estimate,
                          const std::vector<double>& truth) {
  double total = 0.0;
  for (std::size_t j = 0; j < truth.size(); ++j) {
    const double diff = estimate[j] - truth[j];
    total += diff * diff;
  }
  return total / static_cast<double>(truth.size());
}

/// One mean-estimation measurement: perturb every row and score the
/// coordinate-mean estimate against the dataset's own sample means.
double measure_mean_estimation_mse(MechanismKind kind, const PrivacyBudget& budget,
                                   const Dataset& dataset,
                                   const std::vector<double>& truth,
                                   std::optional<int> grid_m, RandomStream& stream) {
  // One parameter solve per cell; the perturber is reused across all rows.
  const TuplePerturber perturber(
      kind, static_cast<int>(dataset.rows.front().values.size()), budget, grid_m);
  std::vector<std::vector<double>> outputs;
  outputs.reserve(dataset.rows.size());
  for (const TupleSample& row : dataset.rows) {
    outputs.push_back(perturber.perturb(row, stream));
  }
  return mean_squared_error(estimate_means(outputs), truth);
}

/// CSV cell for an optional integer (empty when absent).
std::string optional_int_cell(const std::optional<int>& value) {
  return value.has_value() ? std::to_string(*value) : std::string();
}

/// CSV cell for an optional double (empty when absent).
std::string optional_double_cell(const std::optional<double>& value) {
  return value.has_value() ? format_double(*value) : std::string();
}

/// Rounded %.6g rendering for the human-readable summary.
std::string short_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return buffer;
}

}  // namespace

std::string_view to_string(TaskKind task) {
  switch (task) {
    case TaskKind::kVarianceTable:
      return "variance-table";
    case TaskKind::kMeanEstimation:
      return "mean-estimation";
    case TaskKind::kDiscretizeSweep:
      return "discretize-sweep";
    case TaskKind::kErm:
      return "erm";
  }
  throw std::invalid_argument("unknown task kind");
}

int worker_thread_count(std::size_t work_items) {
  if (work_items <= 1) {
    return 1;
  }
  unsigned hardware = std::thread::hardware_concurrency();
  if (hardware == 0) {
    hardware = 1;
  }
  std::size_t threads = std::min<std::size_t>({work_items, hardware, 8});
  const int cap = env_thread_cap();
  if (cap > 0) {
    threads = std::min<std::size_t>(threads, static_cast<std::size_t>(cap));
  }
  return static_cast<int>(threads);
}

ExperimentReport run_variance_table(const ExperimentConfig& config) {
  validate_config(config, TaskKind::kVarianceTable);
  const std::size_t e_count = config.epsilons.size();
  const std::size_t reps = static_cast<std::size_t>(config.repetitions);
  ExperimentReport report{config, {}};
  report.records.resize(config.mechanisms.size() * e_count * reps);
  for (std::size_t mi = 0; mi < config.mechanisms.size(); ++mi) {
    for (std::size_t ei = 0; ei < e_count; ++ei) {
      const auto start = steady_clock::now();
      const double variance =
          worst_case_variance(config.mechanisms[mi], PrivacyBudget(config.epsilons[ei]));
      const double elapsed = seconds_since(start);
      for (std::size_t rep = 0; rep < reps; ++rep) {
        report.records[(mi * e_count + ei) * reps + rep] = ExperimentRecord{
            std::string(to_string(config.mechanisms[mi])),
            config.epsilons[ei],
            static_cast<int>(rep),
            std::nullopt,
            0.0,
            variance,
            std::nullopt,
            std::nullopt,
            rep == 0 ? elapsed : 0.0,
        };
      }
    }
  }
  return report;
}

ExperimentReport run_mean_estimation(const ExperimentConfig& config) {
  validate_config(config, TaskKind::kMeanEstimation);
  const std::size_t e_count = config.epsilons.size();
  const std::size_t reps = static_cast<std::size_t>(config.repetitions);
  const std::vector<double> worst = worst_variance_grid(config);
  ExperimentReport report{config, {}};
  report.records.resize(config.mechanisms.size() * e_count * reps);
  const std::optional<int> bits =
      config.grid_m.has_value() ? std::optional<int>(bits_per_sample(*config.grid_m))
                                : std::nullopt;
  // Repetitions are the parallel unit so each worker draws its repetition's
  // dataset once and reuses it for every (mechanism, epsilon) cell.
  parallel_for(reps, [&](std::size_t rep) {
    RandomStream data_stream(
        derive_seed(config.seed, "data", {static_cast<std::uint64_t>(rep)}));
    const Dataset dataset = synth_gaussian(config.n_users, config.d, config.data_mu,
                                           config.data_sigma, data_stream);
    const std::vector<double> truth = sample_means(dataset, config.d);
    for (std::size_t mi = 0; mi < config.mechanisms.size(); ++mi) {
      for (std::size_t ei = 0; ei < e_count; ++ei) {
        const auto start = steady_clock::now();
        const MechanismKind kind = config.mechanisms[mi];
        const double eps = config.epsilons[ei];
        const PrivacyBudget budget(eps);
        // The stream seed depends on the mechanism identity and budget, not
        // their list positions, so reordering the config never changes draws.
        RandomStream mech_stream(derive_seed(
            config.seed, "mech",
            {static_cast<std::uint64_t>(kind), seed_component(eps),
             static_cast<std::uint64_t>(rep)}));
        const double mse = measure_mean_estimation_mse(kind, budget, dataset, truth,
                                                       config.grid_m, mech_stream);
        report.records[(mi * e_count + ei) * reps + rep] = ExperimentRecord{
            std::string(to_string(kind)),
            eps,
            static_cast<int>(rep),
            config.grid_m,
            mse,
            worst[mi * e_count + ei],
            std::nullopt,
            bits,
            seconds_since(start),
        };
      }
    }
  });
  return report;
}

ExperimentReport run_discretize_sweep(const ExperimentConfig& config) {
  validate_config(config, TaskKind::kDiscretizeSweep);
  if (!config.grid_m.has_value()) {
    throw std::invalid_argument("discretize sweep requires grid_m");
  }
  // One continuous arm plus the sorted unique grid resolutions.
  const std::set<int> resolutions = {1, 10, 100, *config.grid_m};
  std::vector<std::optional<int>> arms;
  arms.emplace_back(std::nullopt);
  for (const int m : resolutions) {
    arms.emplace_back(m);
  }
  const std::size_t e_count = config.epsilons.size();
  const std::size_t reps = static_cast<std::size_t>(config.repetitions);
  const std::size_t arm_count = arms.size();
  const std::vector<double> worst = worst_variance_grid(config);
  ExperimentReport report{config, {}};
  report.records.resize(config.mechanisms.size() * e_count * reps * arm_count);
  parallel_for(reps, [&](std::size_t rep) {
    RandomStream data_stream(
        derive_seed(config.seed, "data", {static_cast<std::uint64_t>(rep)}));
    const Dataset dataset = synth_gaussian(config.n_users, config.d, config.data_mu,
                                           config.data_sigma, data_stream);
    const std::vector<double> truth = sample_means(dataset, config.d);
    for (std::size_t mi = 0; mi < config.mechanisms.size(); ++mi) {
      for (std::size_t ei = 0; ei < e_count; ++ei) {
        const MechanismKind kind = config.mechanisms[mi];
        const double eps = config.epsilons[ei];
        const PrivacyBudget budget(eps);
        for (std::size_t ai = 0; ai < arm_count; ++ai) {
          const auto start = steady_clock::now();
          // Arm code 0 marks the continuous arm; resolutions are >= 1.
          const std::uint64_t arm_code =
              arms[ai].has_value() ? static_cast<std::uint64_t>(*arms[ai]) : 0;
          RandomStream mech_stream(derive_seed(
              config.seed, "sweep",
              {static_cast<std::uint64_t>(kind), seed_component(eps),
               static_cast<std::uint64_t>(rep), arm_code}));
          const double mse = measure_mean_estimation_mse(kind, budget, dataset, truth,
                                                         arms[ai], mech_stream);
          report.records[((mi * e_count + ei) * reps + rep) * arm_count + ai] =
              ExperimentRecord{
                  std::string(to_string(kind)),
                  eps,
                  static_cast<int>(rep),
                  arms[ai],
                  mse,
                  worst[mi * e_count + ei],
                  std::nullopt,
                  arms[ai].has_value() ? std::optional<int>(bits_per_sample(*arms[ai]))
                                       : std::nullopt,
                  seconds_since(start),
              };
        }
      }
    }
  });
  return report;
}

namespace {

/// Training defaults for the ERM task, fixed so reports are comparable:
/// 25 server updates per pass, unlimited only by the pass itself.
constexpr int kErmTargetGroups = 25;
constexpr int kErmMaxIterations = 200;
constexpr double kErmConvergenceTol = 1e-8;
constexpr double kErmEta = 0.1;
constexpr double kErmLambda = 1e-4;

/// Validates that the dataset's labels are usable for the loss: regression
/// targets must be normalized to [-1, 1]; classification labels must be +/-1.
void validate_labels(const std::vector<double>& labels, LossKind loss) {
  for (const double label : labels) {
    if (loss == LossKind::kSquaredError) {
      if (!std::isfinite(label) || label < -1.0 || label > 1.0) {
        throw DataError("regression labels must lie in [-1, 1]");
      }
    } else if (label != 1.0 && label != -1.0) {
      throw DataError("classification labels must be exactly +1 or -1");
    }
  }
}

}  // namespace

ExperimentReport run_erm(const ExperimentConfig& config, const Dataset& dataset,
                         LossKind loss) {
  validate_config(config, TaskKind::kErm);
  if (!dataset.labels.has_value()) {
    throw DataError("the ERM task requires a labeled dataset");
  }
  const std::size_t n = dataset.rows.size();
  if (n < 5) {
    throw std::invalid_argument("the ERM task needs at least 5 rows for an 80/20 split");
  }
  if (dataset.labels->size() != n) {
    throw std::invalid_argument("label count does not match row count");
  }
  validate_labels(*dataset.labels, loss);
  const std::size_t feature_count = dataset.rows.front().values.size();
  const std::size_t test_count = std::max<std::size_t>(1, n / 5);
  const std::size_t train_count = n - test_count;
  const std::size_t e_count = config.epsilons.size();
  const std::size_t reps = static_cast<std::size_t>(config.repetitions);
  const std::vector<double> worst = worst_variance_grid(config);
  const bool classification = loss != LossKind::kSquaredError;
  ExperimentReport report{config, {}};
  // Main grid plus one non-private control per repetition.
  report.records.resize(config.mechanisms.size() * e_count * reps + reps);
  parallel_for(reps, [&](std::size_t rep) {
    // One shared shuffle per repetition: every mechanism trains and tests on
    // the same split, so comparisons within a repetition are paired.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    RandomStream split_stream(
        derive_seed(config.seed, "erm-split", {static_cast<std::uint64_t>(rep)}));
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const std::size_t j = i + split_stream.uniform_index(n - i);
      std::swap(order[i], order[j]);
    }
    std::vector<ClientExample> train_clients;
    std::vector<ClientExample> test_clients;
    train_clients.reserve(train_count);
    test_clients.reserve(test_count);
    for (std::size_t i = 0; i < n; ++i) {
      ClientExample example{dataset.rows[order[i]].values, (*dataset.labels)[order[i]]};
      if (i < train_count) {
        train_clients.push_back(std::move(example));
      } else {
        test_clients.push_back(std::move(example));
      }
    }
    const GroupSchedule schedule{
        std::max(1, static_cast<int>(train_count) / kErmTargetGroups),
        kErmMaxIterations, kErmConvergenceTol};
    ModelState initial;
    initial.theta.assign(feature_count + 1, 0.0);
    initial.eta = kErmEta;
    initial.loss = loss;
    initial.lambda = kErmLambda;
    for (std::size_t mi = 0; mi < config.mechanisms.size(); ++mi) {
      for (std::size_t ei = 0; ei < e_count; ++ei) {
        const auto start = steady_clock::now();
        const MechanismKind kind = config.mechanisms[mi];
        const double eps = config.epsilons[ei];
        RandomStream train_stream(derive_seed(
            config.seed, "erm",
            {static_cast<std::uint64_t>(kind), seed_component(eps),
             static_cast<std::uint64_t>(rep)}));
        const TrainResult result = train(train_clients, kind, PrivacyBudget(eps),
                                         schedule, initial, train_stream);
        const EvaluationMetrics metrics = evaluate(result.state, test_clients);
        report.records[(mi * e_count + ei) * reps + rep] = ExperimentRecord{
            std::string(to_string(kind)),
            eps,
            static_cast<int>(rep),
            std::nullopt,
            metrics.mse,
            worst[mi * e_count + ei],
            classification ? std::optional<double>(metrics.misclassification)
                           : std::nullopt,
            std::nullopt,
            seconds_since(start),
        };
      }
    }
    // Non-private control: exact gradients, no clamping, no perturbation.
    // The budget argument is unused on this path; any valid value works.
    const auto start = steady_clock::now();
    RandomStream control_stream(
        derive_seed(config.seed, "erm-control", {static_cast<std::uint64_t>(rep)}));
    const TrainResult control = train(train_clients, std::nullopt, PrivacyBudget(1.0),
                                      schedule, initial, control_stream);
    const EvaluationMetrics metrics = evaluate(control.state, test_clients);
    report.records[config.mechanisms.size() * e_count * reps + rep] = ExperimentRecord{
        "none",
        0.0,
        static_cast<int>(rep),
        std::nullopt,
        metrics.mse,
        0.0,
        classification ? std::optional<double>(metrics.misclassification) : std::nullopt,
        std::nullopt,
        seconds_since(start),
    };
  });
  return report;
}

void write_report_csv(const ExperimentReport& report, std::ostream& out) {
  out << "task,mechanism,epsilon,repetition,grid_m,mse,worst_var,misclassification,"
         "bits_per_sample\n";
  const std::string_view task_name = to_string(report.config.task);
  for (const ExperimentRecord& record : report.records) {
    out << task_name << ',' << record.mechanism << ',' << format_double(record.epsilon)
        << ',' << record.repetition << ',' << optional_int_cell(record.grid_m) << ','
        << format_double(record.mse) << ',' << format_double(record.worst_var) << ','
        << optional_double_cell(record.misclassification) << ','
        << optional_int_cell(record.bits_per_sample) << '\n';
  }
}

void write_report_json(const ExperimentReport& report, std::ostream& out) {
  nlohmann::json config_json;
  config_json["task"] = to_string(report.config.task);
  std::vector<std::string> mechanism_names;
  mechanism_names.reserve(report.config.mechanisms.size());
  for (const MechanismKind kind : report.config.mechanisms) {
    mechanism_names.emplace_back(to_string(kind));
  }
  config_json["mechanisms"] = mechanism_names;
  config_json["epsilons"] = report.config.epsilons;
  config_json["n_users"] = report.config.n_users;
  config_json["d"] = report.config.d;
  config_json["repetitions"] = report.config.repetitions;
  config_json["seed"] = report.config.seed;
  config_json["grid_m"] =
      report.config.grid_m.has_value() ? nlohmann::json(*report.config.grid_m)
                                       : nlohmann::json(nullptr);
  config_json["data_mu"] = report.config.data_mu;
  config_json["data_sigma"] = report.config.data_sigma;

  nlohmann::json records_json = nlohmann::json::array();
  for (const ExperimentRecord& record : report.records) {
    nlohmann::json row;
    row["mechanism"] = record.mechanism;
    row["epsilon"] = record.epsilon;
    row["repetition"] = record.repetition;
    row["grid_m"] = record.grid_m.has_value() ? nlohmann::json(*record.grid_m)
                                              : nlohmann::json(nullptr);
    row["mse"] = record.mse;
    row["worst_var"] = record.worst_var;
    row["misclassification"] = record.misclassification.has_value()
                                   ? nlohmann::json(*record.misclassification)
                                   : nlohmann::json(nullptr);
    row["bits_per_sample"] = record.bits_per_sample.has_value()
                                 ? nlohmann::json(*record.bits_per_sample)
                                 : nlohmann::json(nullptr);
    records_json.push_back(std::move(row));
  }

  nlohmann::json document;
  document["config"] = std::move(config_json);
  document["records"] = std::move(records_json);
  out << document.dump(2) << '\n';
}

void write_variance_table_csv(const ExperimentReport& report, std::ostream& out) {
  const std::size_t e_count = report.config.epsilons.size();
  const std::size_t reps = static_cast<std::size_t>(report.config.repetitions);
  if (report.config.task != TaskKind::kVarianceTable ||
      report.records.size() != report.config.mechanisms.size() * e_count * reps) {
    throw std::invalid_argument("wide CSV requires a variance-table report");
  }
  out << "epsilon";
  for (const MechanismKind kind : report.config.mechanisms) {
    out << ',' << to_string(kind);
  }
  out << '\n';
  for (std::size_t ei = 0; ei < e_count; ++ei) {
    out << format_double(report.config.epsilons[ei]);
    for (std::size_t mi = 0; mi < report.config.mechanisms.size(); ++mi) {
      out << ',' << format_double(report.records[(mi * e_count + ei) * reps].worst_var);
    }
    out << '\n';
  }
}

void print_summary(const ExperimentReport& report, std::ostream& out) {
  out << "task=" << to_string(report.config.task) << " n_users=" << report.config.n_users
      << " d=" << report.config.d << " repetitions=" << report.config.repetitions
      << " seed=" << report.config.seed << '\n';
  // Aggregate over repetitions per (mechanism, epsilon, arm), keeping the
  // records' first-seen order.
  struct Aggregate {
    std::string mechanism;
    double epsilon = 0.0;
    std::optional<int> grid_m;
    double worst_var = 0.0;
    std::optional<int> bits_per_sample;
    double mse_sum = 0.0;
    double misclassification_sum = 0.0;
    int misclassification_count = 0;
    double wall_seconds = 0.0;
    int count = 0;
  };
  using Key = std::tuple<std::string, double, std::optional<int>>;
  std::map<Key, std::size_t> index;
  std::vector<Aggregate> groups;
  for (const ExperimentRecord& record : report.records) {
    const Key key{record.mechanism, record.epsilon, record.grid_m};
    auto found = index.find(key);
    if (found == index.end()) {
      found = index.emplace(key, groups.size()).first;
      Aggregate fresh;
      fresh.mechanism = record.mechanism;
      fresh.epsilon = record.epsilon;
      fresh.grid_m = record.grid_m;
      fresh.worst_var = record.worst_var;
      fresh.bits_per_sample = record.bits_per_sample;
      groups.push_back(std::move(fresh));
    }
    Aggregate& agg = groups[found->second];
    agg.mse_sum += record.mse;
    if (record.misclassification.has_value()) {
      agg.misclassification_sum += *record.misclassification;
      agg.misclassification_count += 1;
    }
    agg.wall_seconds += record.wall_time_seconds;
    agg.count += 1;
  }
  out << "mechanism epsilon grid_m mean_mse worst_var mean_misclass bits wall_s\n";
  double total_seconds = 0.0;
  for (const Aggregate& agg : groups) {
    out << agg.mechanism << ' ' << short_double(agg.epsilon) << ' '
        << (agg.grid_m.has_value() ? std::to_string(*agg.grid_m) : std::string("-"))
        << ' ' << short_double(agg.mse_sum / agg.count) << ' '
        << short_double(agg.worst_var) << ' '
        << (agg.misclassification_count > 0
                ? short_double(agg.misclassification_sum / agg.misclassification_count)
                : std::string("-"))
        << ' '
        << (agg.bits_per_sample.has_value() ? std::to_string(*agg.bits_per_sample)
                                            : std::string("-"))
        << ' ' << short_double(agg.wall_seconds) << '\n';
    total_seconds += agg.wall_seconds;
  }
  out << "total_wall_s=" << short_double(total_seconds) << '\n';
}

}  // namespace ldp
