// Command-line harness for the LDP mechanism library: experiment runners
// (variance-table, mean-estimation, discretize-sweep, erm) plus single-shot
// helpers (perturb, params).  Exit codes: 0 success, 1 usage or runtime
// error, 2 data error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ldp/bench.hpp"
#include "ldp/data.hpp"
#include "ldp/discretize.hpp"
#include "ldp/mechanisms.hpp"
#include "ldp/params.hpp"
#include "ldp/random.hpp"

namespace {

/// Full-precision decimal rendering so identical runs print identical bytes.
std::string full_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

/// Flags shared by the experiment subcommands, bound per subcommand.
struct TaskFlags {
  std::vector<double> epsilons;
  std::optional<double> epsilon;
  std::vector<std::string> mechanisms;
  std::string mechanism_single;
  int n_users = 100000;
  int dims = 1;
  std::optional<int> grid_m;
  std::uint64_t seed = 0;
  int repetitions = 100;
  std::string out;
  std::string format = "csv";
};

/// Registers the common experiment flags on a subcommand.  with_data_shape
/// adds the dataset-shape flags used by the sampling tasks.
void add_task_flags(CLI::App* sub, TaskFlags& flags, bool with_data_shape) {
  sub->add_option("--epsilons", flags.epsilons,
                  "Comma-separated privacy budgets (all > 0)")
      ->delimiter(',');
  sub->add_option("--epsilon", flags.epsilon, "Single privacy budget (> 0)")
      ->excludes("--epsilons");
  sub->add_option("--mechanisms", flags.mechanisms,
                  "Comma-separated mechanism names (default: all)")
      ->delimiter(',');
  sub->add_option("--mechanism", flags.mechanism_single, "Single mechanism name")
      ->excludes("--mechanisms");
  if (with_data_shape) {
    sub->add_option("--n-users", flags.n_users, "Number of users (rows)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--dims", flags.dims, "Tuple dimension d")
        ->check(CLI::PositiveNumber);
    sub->add_option("--grid-m", flags.grid_m,
                    "Discretization grid half-count m (output domain split into "
                    "2m+1 atoms)")
        ->check(CLI::PositiveNumber);
  }
  sub->add_option("--seed", flags.seed, "Base seed for all derived randomness");
  sub->add_option("--repetitions", flags.repetitions, "Independent repetitions")
      ->check(CLI::PositiveNumber);
  sub->add_option("--out", flags.out, "Write the report to this file");
  sub->add_option("--format", flags.format, "Report file format")
      ->check(CLI::IsMember({"csv", "json"}));
}

/// Resolves the flag set into an ExperimentConfig; throws CLI::ValidationError
/// (a usage error) for unknown mechanism names via mechanism_from_string.
ldp::ExperimentConfig build_config(const TaskFlags& flags, ldp::TaskKind task) {
  ldp::ExperimentConfig config;
  config.task = task;
  if (flags.epsilon.has_value()) {
    config.epsilons = {*flags.epsilon};
  } else if (!flags.epsilons.empty()) {
    config.epsilons = flags.epsilons;
  } else {
    config.epsilons = {0.5, 1.0, 2.0, 4.0};
  }
  std::vector<std::string> names;
  if (!flags.mechanism_single.empty()) {
    names = {flags.mechanism_single};
  } else if (!flags.mechanisms.empty()) {
    names = flags.mechanisms;
  }
  if (names.empty()) {
    config.mechanisms.assign(ldp::kAllMechanisms.begin(), ldp::kAllMechanisms.end());
  } else {
    for (const std::string& name : names) {
      config.mechanisms.push_back(ldp::mechanism_from_string(name));
    }
  }
  config.n_users = flags.n_users;
  config.d = flags.dims;
  config.repetitions = flags.repetitions;
  config.seed = flags.seed;
  config.grid_m = flags.grid_m;
  return config;
}

/// Writes the report to --out in the chosen format (the variance table uses
/// its wide layout for CSV) and prints the aggregate summary to stdout.
void emit_report(const ldp::ExperimentReport& report, const TaskFlags& flags) {
  if (!flags.out.empty()) {
    std::ofstream file(flags.out);
    if (!file) {
      throw std::runtime_error("cannot open output file: " + flags.out);
    }
    if (flags.format == "json") {
      ldp::write_report_json(report, file);
    } else if (report.config.task == ldp::TaskKind::kVarianceTable) {
      ldp::write_variance_table_csv(report, file);
    } else {
      ldp::write_report_csv(report, file);
    }
  }
  ldp::print_summary(report, std::cout);
}

/// Loaded CSV labels arrive raw; maps them to what the loss expects.
/// Squared loss: min-max rescale to [-1, 1] via the label column's recorded
/// range when any label falls outside (already-normalized labels pass
/// through).  Classification losses require exact +/-1 labels, so raw labels
/// are left for run_erm to validate.
void adapt_labels_for_loss(ldp::Dataset& dataset, ldp::LossKind loss) {
  if (loss != ldp::LossKind::kSquaredError || !dataset.labels.has_value() ||
      dataset.column_meta.empty()) {
    return;
  }
  bool out_of_range = false;
  for (const double label : *dataset.labels) {
    if (label < -1.0 || label > 1.0) {
      out_of_range = true;
      break;
    }
  }
  if (!out_of_range) {
    return;
  }
  const ldp::ColumnMeta& label_meta = dataset.column_meta.back();
  for (double& label : *dataset.labels) {
    label = ldp::normalize_value(label_meta, label);
  }
}

/// Synthesizes an ERM dataset when --data is absent: linear-model regression
/// targets for squared loss; the same generator with its label replaced by
/// its sign (+1/-1) for the classification losses.
ldp::Dataset synth_erm_dataset(const TaskFlags& flags, ldp::LossKind loss) {
  ldp::RandomStream stream(ldp::derive_seed(flags.seed, "cli-data"));
  ldp::Dataset dataset =
      ldp::synth_regression(flags.n_users, flags.dims, flags.seed, 0.1, stream);
  if (loss != ldp::LossKind::kSquaredError && dataset.labels.has_value()) {
    for (double& label : *dataset.labels) {
      label = label >= 0.0 ? 1.0 : -1.0;
    }
  }
  return dataset;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local differential privacy mechanisms and experiment harness"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "Read flag defaults from a flat key=value file (command-line "
                 "flags override file values)");

  TaskFlags table_flags;
  CLI::App* table = app.add_subcommand(
      "variance-table", "Tabulate worst-case noise variance per (mechanism, epsilon)");
  add_task_flags(table, table_flags, false);

  TaskFlags mean_flags;
  CLI::App* mean = app.add_subcommand(
      "mean-estimation", "Mean-estimation MSE on synthetic truncated-Gaussian data");
  add_task_flags(mean, mean_flags, true);

  TaskFlags sweep_flags;
  CLI::App* sweep = app.add_subcommand(
      "discretize-sweep",
      "Mean-estimation MSE with and without output discretization");
  add_task_flags(sweep, sweep_flags, true);

  TaskFlags erm_flags;
  std::string loss_name = "squared";
  std::string data_path;
  std::string schema_path;
  CLI::App* erm = app.add_subcommand(
      "erm", "Train models with federated SGD under each mechanism");
  add_task_flags(erm, erm_flags, true);
  erm->add_option("--loss", loss_name, "Loss function")
      ->check(CLI::IsMember({"squared", "logistic", "hinge"}));
  erm->add_option("--data", data_path,
                  "CSV dataset (header row required); omit for synthetic data");
  erm->add_option("--schema", schema_path,
                  "Column-kind schema file for --data (name=numeric|categorical|label)");

  std::string perturb_mechanism;
  double perturb_epsilon = 1.0;
  double perturb_x = 0.0;
  std::uint64_t perturb_seed = 0;
  std::optional<int> perturb_grid_m;
  CLI::App* perturb_cmd =
      app.add_subcommand("perturb", "Print one perturbed sample for a single input");
  perturb_cmd->add_option("--mechanism", perturb_mechanism, "Mechanism name")
      ->required();
  perturb_cmd->add_option("--epsilon", perturb_epsilon, "Privacy budget (> 0)")
      ->required();
  perturb_cmd->add_option("--x", perturb_x, "Input value in [-1, 1]")->required();
  perturb_cmd->add_option("--seed", perturb_seed, "Seed for the sample");
  perturb_cmd->add_option("--grid-m", perturb_grid_m,
                          "Discretize the output onto 2m+1 atoms")
      ->check(CLI::PositiveNumber);

  double params_epsilon = 1.0;
  CLI::App* params_cmd = app.add_subcommand(
      "params", "Print solved mechanism parameters and worst-case variances");
  params_cmd->add_option("--epsilon", params_epsilon, "Privacy budget (> 0)")
      ->required();

  try {
    app.parse(argc, argv);

    if (*table) {
      emit_report(ldp::run_variance_table(
                      build_config(table_flags, ldp::TaskKind::kVarianceTable)),
                  table_flags);
    } else if (*mean) {
      emit_report(ldp::run_mean_estimation(
                      build_config(mean_flags, ldp::TaskKind::kMeanEstimation)),
                  mean_flags);
    } else if (*sweep) {
      emit_report(ldp::run_discretize_sweep(
                      build_config(sweep_flags, ldp::TaskKind::kDiscretizeSweep)),
                  sweep_flags);
    } else if (*erm) {
      const ldp::LossKind loss = ldp::loss_from_string(loss_name);
      ldp::Dataset dataset;
      if (!data_path.empty()) {
        if (schema_path.empty()) {
          throw CLI::ValidationError("--data requires --schema");
        }
        dataset = ldp::load_csv_file(data_path, ldp::parse_schema_file(schema_path));
        adapt_labels_for_loss(dataset, loss);
      } else {
        dataset = synth_erm_dataset(erm_flags, loss);
      }
      emit_report(
          ldp::run_erm(build_config(erm_flags, ldp::TaskKind::kErm), dataset, loss),
          erm_flags);
    } else if (*perturb_cmd) {
      const ldp::MechanismKind kind = ldp::mechanism_from_string(perturb_mechanism);
      const ldp::PrivacyBudget budget(perturb_epsilon);
      ldp::RandomStream stream(ldp::derive_seed(perturb_seed, "perturb"));
      const double sample =
          perturb_grid_m.has_value()
              ? ldp::perturb_discrete(kind, perturb_x, budget, *perturb_grid_m, stream)
              : ldp::perturb(kind, budget, perturb_x, stream);
      std::cout << full_double(sample) << '\n';
    } else if (*params_cmd) {
      const ldp::PrivacyBudget budget(params_epsilon);
      const ldp::ThreeOutputsParams to = ldp::solve_p00(budget);
      std::cout << "epsilon " << full_double(budget.epsilon()) << '\n';
      std::cout << "a " << full_double(to.a) << '\n';
      std::cout << "C " << full_double(to.c_mag) << '\n';
      std::cout << "t_opt " << full_double(ldp::solve_t_opt(budget)) << '\n';
      std::cout << "beta " << full_double(ldp::solve_beta(budget).beta) << '\n';
      std::cout << "hm_weight " << full_double(ldp::hm_weight(budget)) << '\n';
      for (const ldp::MechanismKind kind : ldp::kAllMechanisms) {
        std::cout << "worst_var." << ldp::to_string(kind) << ' '
                  << full_double(ldp::worst_case_variance(kind, budget)) << '\n';
      }
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the one-line reason
    return code == 0 ? 0 : 1;
  } catch (const ldp::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
