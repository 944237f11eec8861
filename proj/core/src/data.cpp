#include "ldp/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace ldp {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) {
    return "";
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    cells.push_back(trim(cell));
  }
  if (!line.empty() && line.back() == ',') {
    cells.push_back("");
  }
  return cells;
}

double parse_number(const std::string& cell, const std::string& column) {
  try {
    std::size_t consumed = 0;
    const double value = std::stod(cell, &consumed);
    if (consumed != cell.size()) {
      throw std::invalid_argument(cell);
    }
    return value;
  } catch (const std::exception&) {
    throw DataError("column '" + column + "': cannot parse numeric value '" +
                    cell + "'");
  }
}

}  // namespace

std::optional<SchemaKind> Schema::find(const std::string& name) const {
  for (const auto& [column, kind] : columns) {
    if (column == name) {
      return kind;
    }
  }
  return std::nullopt;
}

double normalize_value(const ColumnMeta& meta, double raw) {
  const double range = meta.original_max - meta.original_min;
  if (!(range > 0.0)) {
    throw ConstantColumnError("column '" + meta.name + "' has zero range");
  }
  return 2.0 * (raw - meta.original_min) / range - 1.0;
}

double denormalize_value(const ColumnMeta& meta, double normalized) {
  return meta.original_min +
         (normalized + 1.0) * (meta.original_max - meta.original_min) / 2.0;
}

Dataset synth_gaussian(int n, int d, double mu, double sigma, RandomStream& stream) {
  if (n < 1 || d < 1) {
    throw std::invalid_argument("synth_gaussian requires n >= 1 and d >= 1");
  }
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("synth_gaussian requires sigma > 0");
  }
  Dataset out;
  out.rows.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    TupleSample row;
    row.values.reserve(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
      double g;
      do {
        g = stream.gaussian(mu, sigma);
      } while (g < -1.0 || g > 1.0);
      row.values.push_back(g);
    }
    out.rows.push_back(std::move(row));
  }
  out.column_meta.reserve(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    out.column_meta.push_back(
        {"x" + std::to_string(j), -1.0, 1.0, ColumnKind::kNumeric});
  }
  return out;
}

Dataset synth_regression(int n, int p, std::uint64_t weight_seed, double noise_sigma,
                         RandomStream& stream) {
  if (n < 1 || p < 1) {
    throw std::invalid_argument("synth_regression requires n >= 1 and p >= 1");
  }
  if (noise_sigma < 0.0) {
    throw std::invalid_argument("synth_regression requires noise_sigma >= 0");
  }
  // Ground-truth model from its own stream: the same weight_seed reproduces
  // the same (w, bias) regardless of how many feature rows are drawn.
  RandomStream weight_stream(derive_seed(weight_seed, "regression-weights"));
  std::vector<double> w(static_cast<std::size_t>(p));
  for (double& wj : w) {
    wj = weight_stream.uniform(-1.0, 1.0);
  }
  const double bias = weight_stream.uniform(-1.0, 1.0);

  Dataset out;
  out.rows.reserve(static_cast<std::size_t>(n));
  std::vector<double> raw_labels(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    TupleSample row;
    row.values.reserve(static_cast<std::size_t>(p));
    double dot = bias;
    for (int j = 0; j < p; ++j) {
      const double v = stream.uniform(-1.0, 1.0);
      row.values.push_back(v);
      dot += w[static_cast<std::size_t>(j)] * v;
    }
    if (noise_sigma > 0.0) {
      dot += stream.gaussian(0.0, noise_sigma);
    }
    raw_labels[static_cast<std::size_t>(i)] = dot;
    out.rows.push_back(std::move(row));
  }

  const auto [lo_it, hi_it] = std::minmax_element(raw_labels.begin(), raw_labels.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  std::vector<double> labels(raw_labels.size());
  for (std::size_t i = 0; i < raw_labels.size(); ++i) {
    // Degenerate spread (identically zero model) maps every label to 0.
    labels[i] = hi > lo ? 2.0 * (raw_labels[i] - lo) / (hi - lo) - 1.0 : 0.0;
  }
  out.labels = std::move(labels);

  for (int j = 0; j < p; ++j) {
    out.column_meta.push_back(
        {"x" + std::to_string(j), -1.0, 1.0, ColumnKind::kNumeric});
  }
  out.column_meta.push_back({"label", lo, hi, ColumnKind::kNumeric});
  return out;
}

Schema parse_schema(std::istream& in) {
  Schema schema;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') {
      continue;
    }
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw DataError("schema line " + std::to_string(line_no) +
                      ": expected column=kind, got '" + stripped + "'");
    }
    const std::string name = trim(stripped.substr(0, eq));
    const std::string kind = trim(stripped.substr(eq + 1));
    if (name.empty()) {
      throw DataError("schema line " + std::to_string(line_no) + ": empty column name");
    }
    if (kind == "numeric") {
      schema.columns.emplace_back(name, SchemaKind::kNumeric);
    } else if (kind == "categorical") {
      schema.columns.emplace_back(name, SchemaKind::kCategorical);
    } else if (kind == "label") {
      schema.columns.emplace_back(name, SchemaKind::kLabel);
    } else {
      throw DataError("schema line " + std::to_string(line_no) +
                      ": unknown kind '" + kind + "'");
    }
  }
  return schema;
}

Schema parse_schema_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open schema file: " + path);
  }
  return parse_schema(in);
}

Dataset load_csv(std::istream& in, const Schema& schema) {
  std::string line;
  if (!std::getline(in, line)) {
    throw DataError("empty CSV: header row required");
  }
  const std::vector<std::string> header = split_csv_line(line);
  std::vector<SchemaKind> kinds;
  kinds.reserve(header.size());
  int label_column = -1;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const std::optional<SchemaKind> kind = schema.find(header[c]);
    if (!kind.has_value()) {
      throw UnknownColumnError("CSV column '" + header[c] +
                               "' does not appear in the schema");
    }
    if (*kind == SchemaKind::kLabel) {
      if (label_column >= 0) {
        throw DataError("schema marks more than one label column");
      }
      label_column = static_cast<int>(c);
    }
    kinds.push_back(*kind);
  }

  // Raw cells, column-major.
  std::vector<std::vector<std::string>> cells(header.size());
  std::size_t n_rows = 0;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) {
      continue;
    }
    const std::vector<std::string> row = split_csv_line(line);
    if (row.size() != header.size()) {
      throw NonRectangularCsvError(
          "line " + std::to_string(line_no) + ": expected " +
          std::to_string(header.size()) + " cells, got " + std::to_string(row.size()));
    }
    for (std::size_t c = 0; c < header.size(); ++c) {
      cells[c].push_back(row[c]);
    }
    ++n_rows;
  }

  Dataset out;
  out.rows.assign(n_rows, TupleSample{});

  for (std::size_t c = 0; c < header.size(); ++c) {
    if (static_cast<int>(c) == label_column) {
      continue;
    }
    if (kinds[c] == SchemaKind::kNumeric) {
      std::vector<double> values(n_rows);
      for (std::size_t r = 0; r < n_rows; ++r) {
        values[r] = parse_number(cells[c][r], header[c]);
      }
      const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
      ColumnMeta meta{header[c], *lo_it, *hi_it, ColumnKind::kNumeric};
      if (!(meta.original_max > meta.original_min)) {
        throw ConstantColumnError("numeric column '" + header[c] +
                                  "' has zero range; cannot normalize");
      }
      for (std::size_t r = 0; r < n_rows; ++r) {
        out.rows[r].values.push_back(normalize_value(meta, values[r]));
      }
      out.column_meta.push_back(std::move(meta));
    } else {
      // Categorical: distinct values in sorted order; the last one is the
      // k-th value that maps to -1 on every generated column.
      std::map<std::string, std::size_t> levels;
      for (std::size_t r = 0; r < n_rows; ++r) {
        levels.emplace(cells[c][r], 0);
      }
      std::size_t index = 0;
      for (auto& [value, slot] : levels) {
        slot = index++;
      }
      const std::size_t k = levels.size();
      std::vector<std::string> names;
      for (const auto& [value, slot] : levels) {
        if (slot + 1 < k) {
          names.push_back(header[c] + "=" + value);
        }
      }
      for (std::size_t r = 0; r < n_rows; ++r) {
        const std::size_t slot = levels.at(cells[c][r]);
        for (std::size_t l = 0; l + 1 < k; ++l) {
          out.rows[r].values.push_back(slot == l ? 1.0 : -1.0);
        }
      }
      for (std::size_t l = 0; l + 1 < k; ++l) {
        out.column_meta.push_back({names[l], -1.0, 1.0, ColumnKind::kBinaryEncoded});
      }
    }
  }

  if (label_column >= 0) {
    std::vector<double> labels(n_rows);
    const auto c = static_cast<std::size_t>(label_column);
    for (std::size_t r = 0; r < n_rows; ++r) {
      labels[r] = parse_number(cells[c][r], header[c]);
    }
    double lo = 0.0;
    double hi = 0.0;
    if (n_rows > 0) {
      const auto [lo_it, hi_it] = std::minmax_element(labels.begin(), labels.end());
      lo = *lo_it;
      hi = *hi_it;
    }
    out.labels = std::move(labels);
    out.column_meta.push_back({header[c], lo, hi, ColumnKind::kNumeric});
  }
  return out;
}

Dataset load_csv_file(const std::string& path, const Schema& schema) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open CSV file: " + path);
  }
  return load_csv(in, schema);
}

}  // namespace ldp
