// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DUALCAM_CLI_CONFIG_HPP_
#define DUALCAM_CLI_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <string>

#include "dualcam/capture.hpp"
#include "dualcam/geometry.hpp"
#include "dualcam/wire.hpp"
#include "json.hpp"

namespace dualcam::cli {

// Run configuration. Every key is optional in the JSON file:
//
//   {
//     "seed": 0,
//     "capture": {"lr_fps": 15, "key_interval": 15, "scale": 4,
//                 "lr_res": [160, 120], "hr_res": [640, 480],
//                 "timestamp_jitter_ms": 0,
//                 "noise": {"enabled": false, "read_noise_sigma": 0,
//                           "fixed_pattern_sigma": 0}},
//     "scene": {"kind": "static", "frames": 31, "pan_px": 4},
//     "channel": {"loss_prob": 0, "bit_error_prob": 0},
//     "decoder": "baseline",
//     "calibration": {"matrix": [9 numbers]} | {"src": [[x, y] x4], "dst": [[x, y] x4]},
//     "sync_tolerance_ms": 10,
//     "parallel": 1
//   }
//
// Command-line flags override file values.
struct RunConfig {
  std::uint64_t seed = 0;
  CaptureConfig capture;
  std::string scene = "static";
  std::size_t frames = 31;
  double pan_px = 4.0;
  ChannelModel channel;
  std::string decoder = "baseline";
  Homography calib;
  std::uint32_t sync_tolerance_ms = 10;
  int parallel = 1;

  /// Seeds derived from `seed` for the stochastic stages.
  void propagate_seed();
  nlohmann::ordered_json to_json() const;
};

RunConfig load_config(const std::filesystem::path& path);
RunConfig config_from_json(const nlohmann::ordered_json& j);

Homography parse_calibration(const nlohmann::ordered_json& j);
Homography load_calibration(const std::filesystem::path& path);
nlohmann::ordered_json calibration_to_json(const Homography& h);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t h = 0xcbf29ce484222325ull);
std::string hex64(std::uint64_t v);
/// FNV-1a of the compact JSON dump.
std::string config_hash(const nlohmann::ordered_json& j);

}  // namespace dualcam::cli

#endif  // DUALCAM_CLI_CONFIG_HPP_
