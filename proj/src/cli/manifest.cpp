// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#include "manifest.hpp"

#include <algorithm>
#include <vector>

#include <fmt/format.h>

#include "config.hpp"
#include "dualcam/image_io.hpp"

namespace dualcam::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

ordered_json digest_tree(const fs::path& dir) {
  std::vector<std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    const std::string rel = fs::relative(e.path(), dir).generic_string();
    if (rel == "manifest.json") continue;
    files.push_back(rel);
  }
  std::sort(files.begin(), files.end());
  ordered_json out = ordered_json::object();
  for (const auto& rel : files) {
    const auto bytes = read_file(dir / rel);
    out[rel] = hex64(fnv1a(bytes.data(), bytes.size()));
  }
  return out;
}

void write_manifest(const fs::path& dir, const std::string& command, std::uint64_t seed,
                    const ordered_json& config, const ordered_json& extra) {
  ordered_json m;
  m["tool"] = "dualcam";
  m["version"] = kToolVersion;
  m["command"] = command;
  m["seed"] = seed;
  m["config_hash"] = config_hash(config);
  m["config"] = config;
  m["libraries"] = {{"libpng", png_library_version()},
                    {"fmt", fmt::format("{}.{}.{}", FMT_VERSION / 10000, FMT_VERSION / 100 % 100,
                                        FMT_VERSION % 100)},
                    {"nlohmann_json", fmt::format("{}.{}.{}", NLOHMANN_JSON_VERSION_MAJOR,
                                                  NLOHMANN_JSON_VERSION_MINOR,
                                                  NLOHMANN_JSON_VERSION_PATCH)}};
  for (const auto& [k, v] : extra.items()) m[k] = v;
  m["outputs"] = digest_tree(dir);
  write_text(dir / "manifest.json", m.dump(2) + "\n");
}

}  // namespace dualcam::cli
