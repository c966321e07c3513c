#include "gflc/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>

#include "gflc/errors.hpp"

namespace gflc {

namespace {

// Columns the pipeline itself appends; excluded when inferring features.
const std::set<std::string> kBookkeepingColumns = {
    "clean_label", "flipped", "corrected_label", "flipped_direction", "probability"};

double parse_double_cell(const std::string& cell, const std::string& column,
                         std::size_t row) {
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError("cannot parse '" + cell + "' in column '" + column + "' at row " +
                     std::to_string(row));
  }
  return value;
}

std::int64_t parse_id_cell(const std::string& cell, std::size_t row) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw ParseError("cannot parse id '" + cell + "' at row " + std::to_string(row));
  }
  return value;
}

}  // namespace

void Dataset::validate() const {
  const std::size_t n = labels.size();
  if (n == 0) throw DomainError("dataset is empty");
  if (features.rows() != n || groups.size() != n || ids.size() != n) {
    throw ShapeError("dataset columns have inconsistent lengths");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] != 0 && labels[i] != 1) {
      throw DomainError("label at row " + std::to_string(i + 1) + " is outside {0,1}");
    }
  }
  std::vector<std::size_t> counts(group_names.size(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (groups[i] < 0 || static_cast<std::size_t>(groups[i]) >= group_names.size()) {
      throw DomainError("group code out of range at row " + std::to_string(i + 1));
    }
    ++counts[static_cast<std::size_t>(groups[i])];
  }
  for (std::size_t g = 0; g < counts.size(); ++g) {
    if (counts[g] == 0) throw DomainError("group '" + group_names[g] + "' has no instances");
  }
}

Dataset Dataset::subset(std::span<const std::size_t> row_indices) const {
  Dataset out;
  out.features = features.select_rows(row_indices);
  out.labels.reserve(row_indices.size());
  out.groups.reserve(row_indices.size());
  out.ids.reserve(row_indices.size());
  for (std::size_t r : row_indices) {
    out.labels.push_back(labels[r]);
    out.groups.push_back(groups[r]);
    out.ids.push_back(ids[r]);
  }
  out.feature_names = feature_names;
  out.group_names = group_names;
  return out;
}

Dataset dataset_from_table(const CsvTable& table, const CsvSchema& schema) {
  const auto label_col = table.column(schema.label_column);
  if (!label_col) throw SchemaError("column '" + schema.label_column + "' not found in header");
  const auto group_col = table.column(schema.group_column);
  if (!group_col) throw SchemaError("column '" + schema.group_column + "' not found in header");
  const auto id_col = schema.id_column.empty() ? std::nullopt : table.column(schema.id_column);

  std::vector<std::size_t> feature_cols;
  std::vector<std::string> feature_names;
  if (!schema.feature_columns.empty()) {
    for (const auto& name : schema.feature_columns) {
      const auto col = table.column(name);
      if (!col) throw SchemaError("column '" + name + "' not found in header");
      feature_cols.push_back(*col);
      feature_names.push_back(name);
    }
  } else {
    for (std::size_t c = 0; c < table.header.size(); ++c) {
      if (c == *label_col || c == *group_col) continue;
      if (id_col && c == *id_col) continue;
      if (kBookkeepingColumns.count(table.header[c])) continue;
      feature_cols.push_back(c);
      feature_names.push_back(table.header[c]);
    }
  }
  if (table.rows.empty()) throw DomainError("dataset is empty");

  const std::size_t n = table.rows.size();
  Dataset ds;
  ds.features = Matrix(n, feature_cols.size());
  ds.labels.resize(n);
  ds.groups.resize(n);
  ds.ids.resize(n);
  ds.feature_names = std::move(feature_names);

  std::unordered_map<std::string, int> group_codes;
  for (std::size_t r = 0; r < n; ++r) {
    const auto& row = table.rows[r];
    const std::size_t row_no = r + 1;
    for (std::size_t f = 0; f < feature_cols.size(); ++f) {
      ds.features(r, f) =
          parse_double_cell(row[feature_cols[f]], ds.feature_names[f], row_no);
    }
    const std::string& label_cell = row[*label_col];
    if (label_cell == "0") {
      ds.labels[r] = 0;
    } else if (label_cell == "1") {
      ds.labels[r] = 1;
    } else {
      // Distinguish a parseable-but-invalid label from junk text.
      double v = 0.0;
      auto [ptr, ec] =
          std::from_chars(label_cell.data(), label_cell.data() + label_cell.size(), v);
      if (ec != std::errc() || ptr != label_cell.data() + label_cell.size()) {
        throw ParseError("cannot parse label '" + label_cell + "' at row " +
                         std::to_string(row_no));
      }
      if (v == 0.0) {
        ds.labels[r] = 0;
      } else if (v == 1.0) {
        ds.labels[r] = 1;
      } else {
        throw DomainError("label '" + label_cell + "' at row " + std::to_string(row_no) +
                          " is outside {0,1}");
      }
    }
    const std::string& group_cell = row[*group_col];
    auto it = group_codes.find(group_cell);
    if (it == group_codes.end()) {
      const int code = static_cast<int>(ds.group_names.size());
      group_codes.emplace(group_cell, code);
      ds.group_names.push_back(group_cell);
      ds.groups[r] = code;
    } else {
      ds.groups[r] = it->second;
    }
    ds.ids[r] = id_col ? parse_id_cell(row[*id_col], row_no)
                       : static_cast<std::int64_t>(r);
  }
  ds.validate();
  return ds;
}

Dataset load_csv(const std::filesystem::path& path, const CsvSchema& schema) {
  return dataset_from_table(read_csv_file(path), schema);
}

Dataset generate_synthetic(std::size_t n, std::size_t d, double class_separation,
                           double group_fraction, double positive_rate,
                           std::uint64_t seed) {
  if (n < 4) throw ConfigError("synthetic generator requires n >= 4");
  if (d < 1) throw ConfigError("synthetic generator requires d >= 1");
  if (!(group_fraction > 0.0 && group_fraction < 1.0)) {
    throw ConfigError("group_fraction must be in (0,1)");
  }
  if (!(positive_rate > 0.0 && positive_rate < 1.0)) {
    throw ConfigError("positive_rate must be in (0,1)");
  }

  std::mt19937_64 rng(seed);
  std::bernoulli_distribution label_draw(positive_rate);
  std::bernoulli_distribution group0_draw(group_fraction);
  std::normal_distribution<double> noise(0.0, 1.0);

  Dataset ds;
  ds.features = Matrix(n, d);
  ds.labels.resize(n);
  ds.groups.resize(n);
  ds.ids.resize(n);
  for (std::size_t j = 0; j < d; ++j) ds.feature_names.push_back("f" + std::to_string(j + 1));

  const double half = class_separation / 2.0;
  for (std::size_t i = 0; i < n; ++i) {
    const int label = label_draw(rng) ? 1 : 0;
    const int group = group0_draw(rng) ? 0 : 1;
    const double mean = label == 1 ? half : -half;
    for (std::size_t j = 0; j < d; ++j) ds.features(i, j) = mean + noise(rng);
    ds.labels[i] = label;
    ds.groups[i] = group;
    ds.ids[i] = static_cast<std::int64_t>(i);
  }

  // Tiny samples can miss a group; compact codes so every code occurs.
  const bool has0 = std::find(ds.groups.begin(), ds.groups.end(), 0) != ds.groups.end();
  const bool has1 = std::find(ds.groups.begin(), ds.groups.end(), 1) != ds.groups.end();
  if (has0 && has1) {
    ds.group_names = {"A", "B"};
  } else if (has0) {
    ds.group_names = {"A"};
  } else {
    ds.group_names = {"B"};
    std::fill(ds.groups.begin(), ds.groups.end(), 0);
  }
  ds.validate();
  return ds;
}

Dataset shuffle_sensitive_iid(const Dataset& dataset, std::uint64_t seed) {
  dataset.validate();
  Dataset out = dataset;
  std::mt19937_64 rng(seed);
  std::shuffle(out.groups.begin(), out.groups.end(), rng);
  return out;
}

NoiseRecord inject_group_noise(const Dataset& dataset, int target_group, double rate,
                               std::uint64_t seed) {
  dataset.validate();
  if (target_group < 0 || static_cast<std::size_t>(target_group) >= dataset.group_count()) {
    throw DomainError("unknown group code " + std::to_string(target_group));
  }
  if (!(rate >= 0.0 && rate <= 1.0)) throw DomainError("noise rate must lie in [0,1]");

  NoiseRecord record;
  record.base = dataset;
  record.clean_labels = dataset.labels;
  record.flip_mask.assign(dataset.size(), 0);
  record.rate = rate;
  record.target_group = target_group;

  std::mt19937_64 rng(seed);
  std::bernoulli_distribution flip(rate);
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (dataset.groups[i] != target_group) continue;
    if (flip(rng)) {
      record.base.labels[i] = 1 - record.base.labels[i];
      record.flip_mask[i] = 1;
    }
  }
  return record;
}

SplitResult split(const Dataset& dataset, const std::array<double, 3>& fractions,
                  std::uint64_t seed) {
  dataset.validate();
  double sum = 0.0;
  for (double f : fractions) {
    if (!(f > 0.0)) throw ConfigError("split fractions must be positive");
    sum += f;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("split fractions must sum to 1");

  const std::size_t n = dataset.size();
  const auto n_val = static_cast<std::size_t>(static_cast<double>(n) * fractions[1]);
  const auto n_test = static_cast<std::size_t>(static_cast<double>(n) * fractions[2]);
  if (n_val + n_test > n) throw ConfigError("split fractions leave no training rows");
  const std::size_t n_train = n - n_val - n_test;

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);

  auto take = [&](std::size_t begin, std::size_t count) {
    std::vector<std::size_t> idx(perm.begin() + static_cast<std::ptrdiff_t>(begin),
                                 perm.begin() + static_cast<std::ptrdiff_t>(begin + count));
    std::sort(idx.begin(), idx.end());
    return dataset.subset(idx);
  };

  SplitResult result{take(0, n_train), take(n_train, n_val), take(n_train + n_val, n_test)};
  return result;
}

CsvTable to_table(const Dataset& dataset) {
  CsvTable table;
  table.header.push_back("id");
  for (const auto& name : dataset.feature_names) table.header.push_back(name);
  table.header.push_back("label");
  table.header.push_back("group");
  table.rows.reserve(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    std::vector<std::string> row;
    row.reserve(table.header.size());
    row.push_back(std::to_string(dataset.ids[i]));
    for (std::size_t j = 0; j < dataset.features.cols(); ++j) {
      row.push_back(format_double(dataset.features(i, j)));
    }
    row.push_back(std::to_string(dataset.labels[i]));
    row.push_back(dataset.group_names[static_cast<std::size_t>(dataset.groups[i])]);
    table.rows.push_back(std::move(row));
  }
  return table;
}

CsvTable to_table(const NoiseRecord& record) {
  CsvTable table = to_table(record.base);
  std::vector<std::string> clean(record.base.size());
  std::vector<std::string> flipped(record.base.size());
  for (std::size_t i = 0; i < record.base.size(); ++i) {
    clean[i] = std::to_string(record.clean_labels[i]);
    flipped[i] = record.flip_mask[i] ? "1" : "0";
  }
  table.add_column("clean_label", std::move(clean));
  table.add_column("flipped", std::move(flipped));
  return table;
}

}  // namespace gflc
