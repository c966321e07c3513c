#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "gflc/csv.hpp"
#include "gflc/matrix.hpp"

namespace gflc {

// Tabular binary-classification data. Group codes are small integers interned
// from the source column in first-appearance order; group_names maps a code
// back to its original spelling.
struct Dataset {
  Matrix features;
  std::vector<int> labels;
  std::vector<int> groups;
  std::vector<std::int64_t> ids;
  std::vector<std::string> feature_names;
  std::vector<std::string> group_names;

  std::size_t size() const { return labels.size(); }
  std::size_t group_count() const { return group_names.size(); }

  // Checks lengths, label values, and that every group code occurs.
  void validate() const;
  Dataset subset(std::span<const std::size_t> row_indices) const;
};

// A dataset after synthetic label corruption, together with the ground truth
// needed to audit a correction run.
struct NoiseRecord {
  Dataset base;  // post-noise labels
  std::vector<int> clean_labels;
  std::vector<std::uint8_t> flip_mask;
  double rate = 0.0;
  int target_group = 0;
};

struct CsvSchema {
  std::vector<std::string> feature_columns;  // empty: infer from header
  std::string label_column = "label";
  std::string group_column = "group";
  std::string id_column = "id";  // used when present
};

Dataset dataset_from_table(const CsvTable& table, const CsvSchema& schema = {});
Dataset load_csv(const std::filesystem::path& path, const CsvSchema& schema = {});

Dataset generate_synthetic(std::size_t n, std::size_t d, double class_separation,
                           double group_fraction, double positive_rate,
                           std::uint64_t seed);

Dataset shuffle_sensitive_iid(const Dataset& dataset, std::uint64_t seed);

NoiseRecord inject_group_noise(const Dataset& dataset, int target_group, double rate,
                               std::uint64_t seed);

struct SplitResult {
  Dataset train;
  Dataset validation;
  Dataset test;
};

// Validation and test sizes are exact floors; remainder rows go to train.
SplitResult split(const Dataset& dataset, const std::array<double, 3>& fractions,
                  std::uint64_t seed);

CsvTable to_table(const Dataset& dataset);
CsvTable to_table(const NoiseRecord& record);

}  // namespace gflc
