#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rcurves {

std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

struct ManifestInput {
  std::string path;
  std::string hash;  ///< fnv1a64 of the file contents, hex
};

/// Record of one CLI run, serialized next to its outputs.
struct RunManifest {
  std::string command;
  std::vector<ManifestInput> inputs;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::string> outputs;
  double wall_time_seconds = 0.0;

  void add_input(std::string path, std::string_view contents);
  void set(std::string key, std::string value);
};

std::string to_json(const RunManifest& m);

}  // namespace rcurves
