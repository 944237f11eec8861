#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ldp/data.hpp"
#include "ldp/fedsgd.hpp"
#include "ldp/params.hpp"

namespace ldp {

enum class TaskKind { kVarianceTable, kMeanEstimation, kDiscretizeSweep, kErm };

std::string_view to_string(TaskKind task);

/// One experiment grid: every mechanism crossed with every budget, repeated.
struct ExperimentConfig {
  std::vector<MechanismKind> mechanisms;
  std::vector<double> epsilons;
  int n_users = 100000;
  int d = 1;
  int repetitions = 100;  // paper-scale default; drop to 10 for quick runs
  std::uint64_t seed = 0;
  std::optional<int> grid_m;
  TaskKind task = TaskKind::kVarianceTable;
  // Synthetic-data parameters for the sampling tasks: coordinates are drawn
  // from Gaussian(data_mu, data_sigma^2) truncated to [-1, 1].
  double data_mu = 1.0 / 3.0;
  double data_sigma = 0.25;
};

/// One (mechanism, budget, repetition) measurement.  grid_m distinguishes
/// the arms of a discretization sweep (nullopt = continuous arm).  The ERM
/// task appends per-repetition non-private control records with mechanism
/// "none" and epsilon 0.  wall_time_seconds is informational and is omitted
/// from serialized reports so identical runs serialize byte-identically.
struct ExperimentRecord {
  std::string mechanism;
  double epsilon;
  int repetition;
  std::optional<int> grid_m;
  double mse;
  double worst_var;
  std::optional<double> misclassification;
  std::optional<int> bits_per_sample;
  double wall_time_seconds;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<ExperimentRecord> records;
};

/// Tabulates worst-case variances per (mechanism, budget).  Deterministic;
/// the repetition axis replicates identical values so the report shape
/// matches the sampled tasks.
ExperimentReport run_variance_table(const ExperimentConfig& config);

/// Mean-estimation MSE: per repetition, draws n_users tuples of truncated
/// Gaussians, perturbs each with perturb_tuple, estimates the coordinate
/// means and records the mean squared error against the dataset's own
/// sample means.  When grid_m is set the perturbation is discretized.
ExperimentReport run_mean_estimation(const ExperimentConfig& config);

/// Mean-estimation MSE with and without discretization: one continuous arm
/// plus one arm per grid resolution in {1, 10, 100, grid_m}.  Each record's
/// grid_m field identifies its arm, so this task emits
/// |mechanisms|*|epsilons|*repetitions*(arms) records.
ExperimentReport run_discretize_sweep(const ExperimentConfig& config);

/// Trains a model per (mechanism, budget, repetition) on an 80/20 split of
/// the dataset via federated SGD, plus one non-private control per
/// repetition, and records final test metrics.
ExperimentReport run_erm(const ExperimentConfig& config, const Dataset& dataset,
                         LossKind loss);

/// Long-format CSV: one row per record, schema
/// task,mechanism,epsilon,repetition,grid_m,mse,worst_var,misclassification,bits_per_sample.
/// Absent optional fields serialize as empty cells.
void write_report_csv(const ExperimentReport& report, std::ostream& out);

/// JSON document {"config": {...}, "records": [...]} with the same fields.
void write_report_json(const ExperimentReport& report, std::ostream& out);

/// Wide CSV for the variance table: one row per budget, one column per
/// mechanism, schema epsilon,<mechanism names...>.
void write_variance_table_csv(const ExperimentReport& report, std::ostream& out);

/// Human-readable aggregate (means over repetitions) with timing.
void print_summary(const ExperimentReport& report, std::ostream& out);

/// Number of worker threads the runners will use for a given amount of
/// parallel work: min(work items, hardware concurrency, 8), further capped
/// by the LDP_NUMERIC_THREADS environment variable when it parses as a
/// positive integer.
int worker_thread_count(std::size_t work_items);

}  // namespace ldp
