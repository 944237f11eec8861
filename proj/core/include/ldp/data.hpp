#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ldp/multidim.hpp"
#include "ldp/random.hpp"

namespace ldp {

/// Base class for input-data failures.  The CLI maps these to its
/// data-error exit code, distinct from usage errors.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A CSV row whose cell count differs from the header's.
struct NonRectangularCsvError : DataError {
  using DataError::DataError;
};

/// A CSV header column that the schema does not mention.
struct UnknownColumnError : DataError {
  using DataError::DataError;
};

/// A numeric column whose observed range is zero (min-max map undefined).
struct ConstantColumnError : DataError {
  using DataError::DataError;
};

enum class ColumnKind {
  kNumeric,        // min-max normalized into [-1, 1]
  kBinaryEncoded,  // +/-1 indicator derived from a categorical value
};

/// Normalization metadata for one stored column; suffices to invert the map.
struct ColumnMeta {
  std::string name;
  double original_min;
  double original_max;
  ColumnKind kind;
};

/// Rows of features in [-1, 1]^d with optional labels.  When labels are
/// present, column_meta carries one final entry for the label column
/// recording its original range (features' metadata entries come first, in
/// column order).
struct Dataset {
  std::vector<TupleSample> rows;
  std::optional<std::vector<double>> labels;
  std::vector<ColumnMeta> column_meta;
};

/// Min-max map onto [-1, 1] and its inverse, as recorded in a column's
/// metadata.  normalize_value requires a non-degenerate range.
double normalize_value(const ColumnMeta& meta, double raw);
double denormalize_value(const ColumnMeta& meta, double normalized);

/// n rows of d i.i.d. Gaussian(mu, sigma^2) draws truncated to [-1, 1] by
/// rejection (redraw until the draw lands inside).
Dataset synth_gaussian(int n, int d, double mu, double sigma, RandomStream& stream);

/// Synthetic linear-regression task: p features uniform in [-1, 1], labels
/// w.x + bias + Gaussian(0, noise_sigma^2) affinely rescaled to [-1, 1].
/// The weights are drawn from their own stream seeded by weight_seed, so the
/// ground-truth model is recoverable independently of the feature draws.
Dataset synth_regression(int n, int p, std::uint64_t weight_seed, double noise_sigma,
                         RandomStream& stream);

/// Role a raw CSV column plays during ingestion.
enum class SchemaKind { kNumeric, kCategorical, kLabel };

/// Declared kinds of the CSV columns, keyed by header name.
struct Schema {
  std::vector<std::pair<std::string, SchemaKind>> columns;

  /// Looks up a header name; nullopt if the schema does not mention it.
  std::optional<SchemaKind> find(const std::string& name) const;
};

/// Parses a flat schema file: one `column=kind` pair per line with kind in
/// {numeric, categorical, label}; blank lines and lines starting with '#'
/// are ignored.
Schema parse_schema(std::istream& in);
Schema parse_schema_file(const std::string& path);

/// Loads a comma-separated file (header row required).  Numeric columns are
/// min-max normalized to [-1, 1]; a categorical column with k distinct
/// values becomes k-1 binary columns where value l < k maps to +1 on column
/// l and -1 elsewhere, and the k-th value maps to -1 everywhere; the label
/// column (at most one) is passed through unchanged.  Distinct error types
/// flag non-rectangular rows, header columns missing from the schema, and
/// constant numeric columns.
Dataset load_csv(std::istream& in, const Schema& schema);
Dataset load_csv_file(const std::string& path, const Schema& schema);

}  // namespace ldp
