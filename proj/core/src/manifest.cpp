#include "rcurves/manifest.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

namespace rcurves {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string fnv1a64_hex(std::string_view bytes) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

void RunManifest::add_input(std::string path, std::string_view contents) {
  inputs.push_back({std::move(path), fnv1a64_hex(contents)});
}

void RunManifest::set(std::string key, std::string value) {
  for (auto& [k, v] : config)
    if (k == key) {
      v = std::move(value);
      return;
    }
  config.emplace_back(std::move(key), std::move(value));
}

std::string to_json(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["command"] = m.command;
  j["inputs"] = nlohmann::ordered_json::array();
  for (const auto& in : m.inputs) j["inputs"].push_back({{"path", in.path}, {"fnv1a64", in.hash}});
  j["config"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : m.config) j["config"][k] = v;
  j["outputs"] = m.outputs;
  j["wall_time_seconds"] = m.wall_time_seconds;
  return j.dump(2) + "\n";
}

}  // namespace rcurves
