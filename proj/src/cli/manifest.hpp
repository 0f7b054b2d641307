// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DUALCAM_CLI_MANIFEST_HPP_
#define DUALCAM_CLI_MANIFEST_HPP_

#include <cstdint>
#include <filesystem>
#include <string>

#include "json.hpp"

namespace dualcam::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// FNV-1a digest of every regular file under `dir` except manifest.json,
/// keyed by the generic relative path and sorted.
nlohmann::ordered_json digest_tree(const std::filesystem::path& dir);

/// Writes dir/manifest.json: command, seed, config and its hash, tool and
/// library versions, and output digests. Contains no wall-clock data.
void write_manifest(const std::filesystem::path& dir, const std::string& command,
                    std::uint64_t seed, const nlohmann::ordered_json& config,
                    const nlohmann::ordered_json& extra = nlohmann::ordered_json::object());

}  // namespace dualcam::cli

#endif  // DUALCAM_CLI_MANIFEST_HPP_
