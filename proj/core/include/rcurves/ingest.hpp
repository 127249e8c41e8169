#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "rcurves/dataset.hpp"

namespace rcurves {

/// Reads a whole file; throws InvalidInput if it cannot be opened.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

/// IDX image/label pair (magic 2051 / 2049, big-endian header, unsigned
/// bytes). Pixels are scaled by 1/255; weights are uniform.
Dataset load_idx(std::span<const std::uint8_t> images, std::span<const std::uint8_t> labels, std::string name);
Dataset load_idx_files(const std::filesystem::path& images, const std::filesystem::path& labels);

struct CsvOptions {
  /// Min-max rescale each feature column into [0,1]. Constant columns map to 0.
  bool normalize = false;
  /// Reject features outside [0,1] when not normalizing.
  bool require_unit_range = true;
  std::string name = "csv";
};

/// Header row, then one row per point: integer label first, then features.
/// A trailing column named `weight` supplies (unnormalized) weights.
Dataset load_csv(std::string_view text, const CsvOptions& opts = {});
Dataset load_csv_file(const std::filesystem::path& path, CsvOptions opts = {});

/// Inverse of load_csv; includes the weight column only when weights are
/// not uniform.
std::string write_dataset_csv(const Dataset& data);

}  // namespace rcurves
